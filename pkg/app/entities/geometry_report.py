"""Resumos geométricos de uma ou duas soluções."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.entities.subspace import Subspace


@dataclass(frozen=True, eq=False)
class InputSplit:
    """T = [T₁ T₂] ortogonal no espaço de entradas, im T₁ = im R_X, im T₂ = ker R_X."""

    T1: np.ndarray
    T2: np.ndarray
    B1: np.ndarray
    B2: np.ndarray


@dataclass(frozen=True, eq=False)
class SolutionGeometry:
    kernel_X: Subspace
    kernel_R_X: Subspace
    r0: Subspace
    v_star: Subspace
    r_star: Optional[Subspace]
    kernel_identity: bool
    kernel_R_X_in_kernel_R: bool
    r0_in_kernel_C_X: bool
    x_r0_residual: float
    output_nulling: bool
    friend: bool
    r_star_equals_r0: Optional[bool]
    friend_independent: Optional[bool]


@dataclass(frozen=True, eq=False)
class SolutionComparison:
    same_kernel_R: bool
    same_r0: bool
    same_fixed_spectrum: bool
    rank_R_X: int
    rank_R_Y: int
    spectrum_X: np.ndarray
    spectrum_Y: np.ndarray

    @property
    def consistent(self) -> bool:
        return self.same_kernel_R and self.same_r0 and self.same_fixed_spectrum
