"""Conjunto de soluções da equação de Stein e relatório de núcleos."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from app.domain.exceptions import SteinInconsistent
from app.entities.subspace import Subspace


@dataclass(frozen=True, eq=False)
class SteinSolutionSet:
    """
    Todas as soluções simétricas de X = AᵀXA + Q.

    ``particular`` é a solução de norma mínima (None se o sistema for
    inconsistente); ``homogeneous_basis`` gera as soluções de X = AᵀXA.
    """

    particular: Optional[np.ndarray]
    homogeneous_basis: Tuple[np.ndarray, ...]
    residual: float

    @property
    def is_consistent(self) -> bool:
        return self.particular is not None

    @property
    def is_unique(self) -> bool:
        return self.is_consistent and not self.homogeneous_basis

    @property
    def family_dim(self) -> int:
        return len(self.homogeneous_basis)

    def require_particular(self) -> np.ndarray:
        if self.particular is None:
            raise SteinInconsistent(
                f"Equação de Stein sem solução (resíduo de mínimos quadrados {self.residual:.3e})"
            )
        return self.particular

    def member(self, coefficients: Sequence[float]) -> np.ndarray:
        """X = particular + Σ αᵢ·basisᵢ."""
        coefficients = np.asarray(coefficients, dtype=float).reshape(-1)
        if coefficients.shape[0] != self.family_dim:
            raise ValueError(
                f"Esperados {self.family_dim} coeficientes, recebidos {coefficients.shape[0]}"
            )
        X = self.require_particular().copy()
        for alpha, direction in zip(coefficients, self.homogeneous_basis):
            X = X + alpha * direction
        return X


@dataclass(frozen=True, eq=False)
class SteinKernelReport:
    kernel_X: Subspace
    kernel_Q: Subspace
    unobservable: Subspace
    unmixed: bool
    kernel_invariant: bool
    kernel_in_kernel_Q: bool
    kernel_equals_unobservable: Optional[bool]

    @property
    def passed(self) -> bool:
        checks = [self.kernel_invariant, self.kernel_in_kernel_Q]
        if self.kernel_equals_unobservable is not None:
            checks.append(self.kernel_equals_unobservable)
        return all(checks)
