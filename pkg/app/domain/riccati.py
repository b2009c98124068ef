"""Iteração de Riccati a partir de X₀ = 0, custo ótimo e simulação de custo."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from app.config import settings
from app.domain.exceptions import DimensionMismatch, DivergentTrajectory
from app.domain.numerics import as_matrix, as_vector, image_basis, min_eigenvalue, rank_svd, symmetrize
from app.domain.popov import classify_solution, riccati_operator, x_quantities
from app.entities.popov_triple import PopovTriple
from app.entities.solve_report import SolveReport, SolveStatus
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)

STATE_OVERFLOW = 1e12


def riccati_step(sigma: PopovTriple, P, tol: TolerancePolicy) -> np.ndarray:
    """Um passo X ↦ 𝐑[X], simetrizado."""
    P = as_matrix(P, "P")
    if P.shape != (sigma.n, sigma.n):
        raise DimensionMismatch(f"P deve ser {sigma.n}x{sigma.n}, recebido {P.shape}")
    return riccati_operator(sigma, symmetrize(P), tol)


def solve_min_psd(
    sigma: PopovTriple,
    tol: TolerancePolicy,
    consecutive_small_steps: Optional[int] = None,
    divergence_factor: Optional[float] = None,
    freeze_rank_after_stationary: Optional[bool] = None,
    monotonicity_slack: Optional[float] = None,
) -> SolveReport:
    """
    Iterar X_{t+1} = 𝐑[X_t] a partir de X₀ = 0 até a solução PSD mínima.

    Converge após ``consecutive_small_steps`` incrementos seguidos com
    ‖X_{t+1} - X_t‖_F ≤ conv_rel·(1 + ‖X_t‖_F), desde que o iterado resolva a
    CGDARE; caso contrário a contagem recomeça. Diverge quando ‖X_t‖_F
    passa de divergence_factor·(1 + ‖Π‖_F).

    Args:
        sigma: Tripla de Popov validada
        tol: Política de tolerâncias
        consecutive_small_steps: Passos pequenos seguidos exigidos
        divergence_factor: Fator do limite de divergência
        freeze_rank_after_stationary: Congelar a imagem de R_{X_t} após a estacionariedade do núcleo
        monotonicity_slack: Folga relativa do teste de monotonicidade

    Returns:
        SolveReport: Relatório com X̄, status, traço e cadeia de núcleos
    """
    needed = consecutive_small_steps or settings.consecutive_small_steps
    factor = divergence_factor or settings.divergence_factor
    freeze = settings.freeze_rank_after_stationary if freeze_rank_after_stationary is None else freeze_rank_after_stationary
    slack = settings.monotonicity_slack if monotonicity_slack is None else monotonicity_slack

    limit = factor * (1.0 + np.linalg.norm(sigma.pi))
    X = np.zeros((sigma.n, sigma.n))
    trace = []
    kernel_dims = []
    stationary_at = 0
    unchanged = 0
    small = 0
    min_increment = np.inf
    monotone = True
    plateaus = 0
    frozen_range: Optional[np.ndarray] = None
    status = SolveStatus.MAX_ITER_REACHED
    iterations = 0

    for t in range(tol.max_iter):
        R_X = symmetrize(sigma.R + sigma.B.T @ X @ sigma.B)
        kernel_dim = sigma.m - (rank_svd(R_X, tol) if sigma.m else 0)
        if kernel_dims and kernel_dim != kernel_dims[-1]:
            if kernel_dim > kernel_dims[-1]:
                logger.warning(
                    "Cadeia de núcleos cresceu em t=%d: %d -> %d", t, kernel_dims[-1], kernel_dim
                )
            stationary_at = t
            unchanged = 0
            frozen_range = None
        else:
            unchanged += 1
        kernel_dims.append(kernel_dim)

        if freeze and frozen_range is None and unchanged >= needed:
            frozen_range = image_basis(R_X, tol).basis
            logger.debug("Imagem de R_X congelada em t=%d (posto %d)", t, frozen_range.shape[1])

        X_next = riccati_operator(sigma, X, tol, range_basis=frozen_range)
        iterations = t + 1
        increment = X_next - X
        step = float(np.linalg.norm(increment))
        trace.append(step)

        increment_eig = min_eigenvalue(increment)
        min_increment = min(min_increment, increment_eig)
        if increment_eig < -slack * (1.0 + np.linalg.norm(X_next)):
            monotone = False
            logger.warning("Monotonicidade violada em t=%d: menor autovalor %.3e", t, increment_eig)

        if not np.all(np.isfinite(X_next)) or np.linalg.norm(X_next) > limit:
            logger.info("Iteração divergiu em t=%d", iterations)
            X = X_next
            status = SolveStatus.DIVERGED
            break

        small = small + 1 if step <= tol.conv_rel * (1.0 + np.linalg.norm(X)) else 0
        X = X_next
        if small >= needed:
            if classify_solution(sigma, X, tol).solves_cgdare:
                status = SolveStatus.CONVERGED
                break
            plateaus += 1
            small = 0
            logger.debug("Platô em t=%d: incrementos pequenos sem resolver a CGDARE", iterations)
        logger.debug("t=%d ‖ΔX‖=%.3e dim ker R_X=%d", iterations, step, kernel_dim)

    classification = None
    if status == SolveStatus.CONVERGED:
        classification = classify_solution(sigma, X, tol)
        logger.info("Convergiu em %d iterações (%s)", iterations, classification.value)
    elif status == SolveStatus.MAX_ITER_REACHED:
        logger.info("Limite de %d iterações atingido", tol.max_iter)

    return SolveReport(
        X_bar=X,
        status=status,
        iterations=iterations,
        kernel_stationary_at=stationary_at,
        trace=tuple(trace),
        kernel_dimensions=tuple(kernel_dims),
        min_increment_eigenvalue=float(min_increment) if trace else 0.0,
        monotone=monotone,
        plateaus=plateaus,
        classification=classification,
    )


def optimal_cost(X_bar, x0) -> float:
    """Custo ótimo x₀ᵀ·X̄·x₀."""
    X_bar = as_matrix(X_bar, "X_bar")
    x0 = as_vector(x0, X_bar.shape[0])
    return float(x0 @ X_bar @ x0)


def optimal_control_set(sigma: PopovTriple, X_bar, tol: TolerancePolicy) -> Tuple[np.ndarray, np.ndarray]:
    """(K, G) tais que todo controle ótimo é u_t = -K·x_t + G·v_t."""
    q = x_quantities(sigma, X_bar, tol)
    return q.K_X, q.G_X


@dataclass(frozen=True, eq=False)
class Trajectory:
    states: np.ndarray
    inputs: np.ndarray


def simulate_trajectory(
    sigma: PopovTriple, K, L, x0, T: int, G=None
) -> Trajectory:
    """
    Simular x_{t+1} = A·x_t + B·u_t com u_t = -K·x_t + G·L·x_t.

    Args:
        sigma: Tripla de Popov
        K: Ganho m x n
        L: Termo livre m x n (None equivale a zero)
        x0: Estado inicial
        T: Horizonte (≥ 1)
        G: Matriz que injeta L (padrão: identidade)

    Raises:
        DivergentTrajectory: Se ‖x_t‖ passar de 1e12
    """
    if T < 1:
        raise DimensionMismatch(f"Horizonte deve ser ≥ 1, recebido {T}")
    n, m = sigma.n, sigma.m
    K = as_matrix(K, "K").reshape(m, n)
    L = np.zeros((m, n)) if L is None else as_matrix(L, "L").reshape(m, n)
    G = np.eye(m) if G is None else as_matrix(G, "G").reshape(m, m)
    feedback = -K + G @ L
    states = np.zeros((T + 1, n))
    inputs = np.zeros((T, m))
    states[0] = as_vector(x0, n)
    for t in range(T):
        inputs[t] = feedback @ states[t]
        states[t + 1] = sigma.A @ states[t] + sigma.B @ inputs[t]
        if np.linalg.norm(states[t + 1]) > STATE_OVERFLOW:
            raise DivergentTrajectory(f"Norma do estado passou de {STATE_OVERFLOW:g} em t={t + 1}")
    return Trajectory(states=states, inputs=inputs)


def simulate_cost(sigma: PopovTriple, K, L, x0, T: int, G=None) -> float:
    """Custo truncado J_T = Σ_{t<T} [x_t; u_t]ᵀ·Π·[x_t; u_t]."""
    trajectory = simulate_trajectory(sigma, K, L, x0, T, G=G)
    stacked = np.hstack([trajectory.states[:-1], trajectory.inputs])
    return float(np.einsum("ti,ij,tj->", stacked, sigma.pi, stacked))
