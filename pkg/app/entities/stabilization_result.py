"""Resultado da alocação de polos sobre R₀."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class StabilizationResult:
    """
    L (m x n) tal que A_cl = A_X + B·G_X·L tem o espectro desejado em R₀.

    ``off_r0_spectrum`` é o espectro de A_cl no quociente R^n / R₀, igual ao
    de A_X por construção.
    """

    L: np.ndarray
    A_cl: np.ndarray
    placed_poles: np.ndarray
    desired_poles: np.ndarray
    fixed_spectrum: np.ndarray
    off_r0_spectrum: np.ndarray
    fixed_poles_removed: bool

    @property
    def closed_loop_radius(self) -> float:
        if self.A_cl.size == 0:
            return 0.0
        return float(np.max(np.abs(np.linalg.eigvals(self.A_cl))))
