"""Amostras de funções racionais e relatório de posto normal."""

from dataclasses import dataclass

import numpy as np

from app.entities.popov_triple import SolutionClass


@dataclass(frozen=True, eq=False)
class RationalSample:
    z: complex
    value: np.ndarray


@dataclass(frozen=True)
class RankComparison:
    """posto R_X contra o posto normal de Φ; ``holds`` aplica = (CGDARE) ou ≤ (DRLMI)."""

    rank_R_X: int
    normal_rank: int
    classification: SolutionClass
    holds: bool
