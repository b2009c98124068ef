"""Quádrupla (A, B, C, D) e forma de Kalman de controlabilidade."""

from dataclasses import dataclass

import numpy as np

from app.domain.exceptions import DimensionMismatch


@dataclass(frozen=True, eq=False)
class Quadruple:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        n = self.A.shape[0]
        m = self.B.shape[1]
        p = self.C.shape[0]
        if (
            self.A.shape != (n, n)
            or self.B.shape != (n, m)
            or self.C.shape != (p, n)
            or self.D.shape != (p, m)
        ):
            raise DimensionMismatch(
                f"Quádrupla inconsistente: A {self.A.shape}, B {self.B.shape}, "
                f"C {self.C.shape}, D {self.D.shape}"
            )

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def p(self) -> int:
        return self.C.shape[0]


@dataclass(frozen=True, eq=False)
class KalmanForm:
    """
    Mudança de base ortogonal T = [T₁ T₂] com im T₁ = subespaço alcançável.

    Na nova base, TᵀAT = [[A11, A12], [A21, A22]] com A21 ≈ 0 e TᵀB = [B1; B2]
    com B2 ≈ 0.
    """

    T: np.ndarray
    reachable_dim: int
    A11: np.ndarray
    A12: np.ndarray
    A21: np.ndarray
    A22: np.ndarray
    B1: np.ndarray
    B2: np.ndarray

    @property
    def block_sizes(self) -> tuple:
        return (self.reachable_dim, self.T.shape[0] - self.reachable_dim)
