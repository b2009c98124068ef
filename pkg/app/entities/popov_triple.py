"""Entidades da tripla de Popov e das quantidades derivadas de X."""

from dataclasses import dataclass
from enum import Enum

import numpy as np


class SolutionClass(str, Enum):
    """Classificação de uma matriz candidata X."""

    DARE = "DARE"
    CGDARE = "CGDARE"
    GDARE_ONLY = "GDARE_ONLY"
    DRLMI_ONLY = "DRLMI_ONLY"
    NONE = "NONE"

    @property
    def solves_cgdare(self) -> bool:
        return self in (SolutionClass.DARE, SolutionClass.CGDARE)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PopovTriple:
    """
    Tripla Σ = (A, B; Q, R, S) validada, com Π ⪰ 0.

    C e D guardam uma fatoração Π = [C D]ᵀ[C D], fornecida pelo arquivo de
    problema ou gerada pelo fator PSD de Π.
    """

    A: np.ndarray
    B: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    S: np.ndarray
    C: np.ndarray
    D: np.ndarray
    factor_supplied: bool = False

    def __post_init__(self):
        for name in ("A", "B", "Q", "R", "S", "C", "D"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def p(self) -> int:
        return self.C.shape[0]

    @property
    def pi(self) -> np.ndarray:
        """Matriz de Popov Π = [[Q, S], [Sᵀ, R]]."""
        return np.block([[self.Q, self.S], [self.S.T, self.R]])


@dataclass(frozen=True, eq=False)
class XQuantities:
    """Objetos derivados de uma candidata X simétrica."""

    X: np.ndarray
    Q_X: np.ndarray
    S_X: np.ndarray
    R_X: np.ndarray
    R_X_pinv: np.ndarray
    G_X: np.ndarray
    K_X: np.ndarray
    A_X: np.ndarray
    Pi_X: np.ndarray
    Q0_X: np.ndarray
    C_X: np.ndarray
    rank_R_X: int

    @property
    def kernel_dim_R_X(self) -> int:
        return self.R_X.shape[0] - self.rank_R_X
