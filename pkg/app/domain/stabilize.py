"""Espectro fixo em R₀, alocação de polos pelo termo livre B·G_X·L e invariância do custo."""

import logging
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
import scipy.signal

from app.domain.exceptions import (
    ConjugationViolation,
    DesiredSetSizeMismatch,
    DivergentTrajectory,
    PlacementFailed,
)
from app.domain.geometry import input_space_split, quotient_spectrum, r0, restriction
from app.domain.numerics import as_matrix, as_vector, multiset_close, rank_svd, sorted_eigenvalues
from app.domain.popov import x_quantities
from app.domain.riccati import optimal_cost, simulate_cost
from app.entities.popov_triple import PopovTriple
from app.entities.stabilization_result import StabilizationResult
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)

PLACEMENT_ATOL = 1e-6
CONJUGATE_ATOL = 1e-8
TAIL_TOL = 1e-8
MAX_HORIZON = 1_000_000
CYCLIC_ATTEMPTS = 20


def fixed_spectrum(sigma: PopovTriple, X, tol: TolerancePolicy) -> np.ndarray:
    """Autovalores de A_X restrita a R₀, comuns a todas as soluções."""
    q = x_quantities(sigma, X, tol)
    return sorted_eigenvalues(restriction(q.A_X, r0(sigma, q.X, tol), tol))


def off_r0_spectrum(sigma: PopovTriple, X, tol: TolerancePolicy) -> np.ndarray:
    """Autovalores de A_X no quociente R^n / R₀."""
    q = x_quantities(sigma, X, tol)
    return quotient_spectrum(q.A_X, r0(sigma, q.X, tol), tol)


def _check_conjugation(desired: np.ndarray) -> None:
    remaining = list(desired)
    while remaining:
        value = remaining.pop(0)
        if abs(value.imag) <= CONJUGATE_ATOL * (1.0 + abs(value)):
            continue
        distances = [abs(np.conj(value) - other) for other in remaining]
        if not distances or min(distances) > CONJUGATE_ATOL * (1.0 + abs(value)):
            raise ConjugationViolation(f"Polo {value} sem o conjugado correspondente")
        remaining.pop(int(np.argmin(distances)))


def _controllability_matrix(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    columns = [b]
    for _ in range(A.shape[0] - 1):
        columns.append(A @ columns[-1])
    return np.column_stack(columns)


def _ackermann(A: np.ndarray, b: np.ndarray, poles: np.ndarray) -> np.ndarray:
    """Ganho linha k com eig(A - b·k) = poles, para entrada única."""
    n = A.shape[0]
    ctrb = _controllability_matrix(A, b)
    coefficients = np.real(np.poly(poles))
    pmat = np.zeros_like(A)
    for power, coefficient in enumerate(coefficients[::-1]):
        pmat = pmat + coefficient * np.linalg.matrix_power(A, power)
    return scipy.linalg.solve(ctrb, pmat)[n - 1, :]


def place_on_pair(
    A: np.ndarray, B: np.ndarray, poles: np.ndarray, tol: TolerancePolicy, seed: int = 0
) -> np.ndarray:
    """
    M tal que eig(A + B·M) = poles, com (A, B) alcançável.

    Reduz o caso multi-entrada a entrada única: F₀ e g aleatórios (semente
    fixa) tornam (A + B·F₀, B·g) alcançável e Ackermann fecha o laço. Se a
    redução falhar, tenta ``scipy.signal.place_poles``.

    Raises:
        PlacementFailed: Se nenhum método atingir os polos
    """
    r, k = A.shape[0], B.shape[1]
    rng = np.random.default_rng(seed)
    for attempt in range(CYCLIC_ATTEMPTS):
        if k == 1 and attempt == 0:
            F0 = np.zeros((1, r))
            g = np.ones(1)
        else:
            F0 = rng.standard_normal((k, r))
            g = rng.standard_normal(k)
        shifted = A + B @ F0
        b = B @ g
        if rank_svd(_controllability_matrix(shifted, b), tol) < r:
            continue
        M = F0 - np.outer(g, _ackermann(shifted, b, poles))
        if multiset_close(sorted_eigenvalues(A + B @ M), poles, PLACEMENT_ATOL):
            return M
        logger.debug("Tentativa %d de Ackermann fora da tolerância", attempt)

    try:
        M = -scipy.signal.place_poles(A, B, poles).gain_matrix
    except (ValueError, np.linalg.LinAlgError) as e:
        raise PlacementFailed(f"Alocação de polos falhou: {e}") from e
    if not multiset_close(sorted_eigenvalues(A + B @ M), poles, PLACEMENT_ATOL):
        raise PlacementFailed("Alocação de polos não atingiu os polos desejados")
    return M


def place_on_r0(
    sigma: PopovTriple, X, desired: Sequence[complex], tol: TolerancePolicy, seed: int = 0
) -> StabilizationResult:
    """
    Alocar o espectro de A_X + B·G_X·L restrito a R₀ em ``desired``.

    L = T₂·M·T₀ᵀ, com T₂ base de ker R_X e T₀ base de R₀; L anula o
    complemento de R₀, de modo que o espectro fora de R₀ não muda.

    Args:
        sigma: Tripla de Popov
        X: Solução da CGDARE
        desired: Multiconjunto fechado por conjugação com dim R₀ elementos
        tol: Política de tolerâncias
        seed: Semente da redução a entrada única

    Returns:
        StabilizationResult: L, A_cl e espectros

    Raises:
        DesiredSetSizeMismatch: Se |desired| ≠ dim R₀
        ConjugationViolation: Se desired não for fechado por conjugação
    """
    q = x_quantities(sigma, X, tol)
    free = r0(sigma, q.X, tol)
    desired = np.asarray(list(desired), dtype=complex).reshape(-1)
    if desired.shape[0] != free.dim:
        raise DesiredSetSizeMismatch(
            f"Foram pedidos {desired.shape[0]} polos para dim R₀ = {free.dim}"
        )
    _check_conjugation(desired)
    fixed = sorted_eigenvalues(restriction(q.A_X, free, tol))

    L = np.zeros((sigma.m, sigma.n))
    if free.dim:
        split = input_space_split(sigma, q.X, tol)
        T0 = free.basis
        A_r = T0.T @ q.A_X @ T0
        B_r = T0.T @ split.B2
        M = place_on_pair(A_r, B_r, desired, tol, seed=seed)
        L = split.T2 @ M @ T0.T

    A_cl = q.A_X + sigma.B @ q.G_X @ L
    placed = sorted_eigenvalues(restriction(A_cl, free, tol))
    removed = bool(
        free.dim
        and all(np.min(np.abs(placed - value)) > PLACEMENT_ATOL * (1.0 + abs(value)) for value in fixed)
    )
    logger.info("Polos alocados em R₀: %s", placed)
    return StabilizationResult(
        L=L,
        A_cl=A_cl,
        placed_poles=placed,
        desired_poles=np.sort_complex(desired),
        fixed_spectrum=fixed,
        off_r0_spectrum=quotient_spectrum(A_cl, free, tol),
        fixed_poles_removed=removed,
    )


def auto_horizon(A_cl, x0, tail: float = TAIL_TOL) -> int:
    """
    Menor T com ‖A_cl^T·x₀‖ ≤ tail·(1 + ‖x₀‖).

    Raises:
        DivergentTrajectory: Se ρ(A_cl) ≥ 1 ou o horizonte exceder o limite
    """
    A_cl = as_matrix(A_cl, "A_cl")
    x = as_vector(x0, A_cl.shape[0])
    if A_cl.size and np.max(np.abs(np.linalg.eigvals(A_cl))) >= 1.0:
        raise DivergentTrajectory("Malha fechada instável: informe o horizonte T")
    threshold = tail * (1.0 + np.linalg.norm(x))
    horizon = 1
    while np.linalg.norm(x) > threshold:
        x = A_cl @ x
        horizon += 1
        if horizon > MAX_HORIZON:
            raise DivergentTrajectory("Horizonte automático excedeu o limite")
    return horizon


def cost_invariance_residual(
    sigma: PopovTriple, X, L, x0, tol: TolerancePolicy, T: Optional[int] = None
) -> float:
    """
    |J_T(K_X, L) - x₀ᵀ·X·x₀| com u_t = -K_X·x_t + G_X·L·x_t.

    Raises:
        DivergentTrajectory: Se A_cl for instável e T não for informado
    """
    q = x_quantities(sigma, X, tol)
    L = np.zeros((sigma.m, sigma.n)) if L is None else as_matrix(L, "L").reshape(sigma.m, sigma.n)
    if T is None:
        T = auto_horizon(q.A_X + sigma.B @ q.G_X @ L, x0)
    cost = simulate_cost(sigma, q.K_X, L, x0, T, G=q.G_X)
    return abs(cost - optimal_cost(q.X, x0))
