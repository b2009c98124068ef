"""Relatório da iteração de Riccati."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from app.entities.popov_triple import SolutionClass


class SolveStatus(str, Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    MAX_ITER_REACHED = "MaxIterReached"


@dataclass(frozen=True, eq=False)
class SolveReport:
    """
    Resultado de ``solve_min_psd``.

    ``kernel_stationary_at`` é o índice t a partir do qual dim ker R_{X_t}
    deixa de mudar; ``kernel_dimensions[t]`` é dim ker R_{X_t}. ``monotone`` é
    falso se algum incremento X_{t+1} - X_t saiu do cone PSD além da folga;
    ``plateaus`` conta as sequências de passos pequenos rejeitadas por não
    resolverem a CGDARE.
    """

    X_bar: np.ndarray
    status: SolveStatus
    iterations: int
    kernel_stationary_at: int
    trace: Tuple[float, ...] = field(default_factory=tuple)
    kernel_dimensions: Tuple[int, ...] = field(default_factory=tuple)
    min_increment_eigenvalue: float = 0.0
    monotone: bool = True
    plateaus: int = 0
    classification: Optional[SolutionClass] = None

    @property
    def converged(self) -> bool:
        return self.status == SolveStatus.CONVERGED
