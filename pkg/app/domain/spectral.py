"""Função de Popov Φ(z), posto normal e identidades de fatores espectrais."""

import logging
from typing import Iterable, List, Optional

import numpy as np
import scipy.linalg

from app.config import settings
from app.domain.exceptions import InvalidParameter, NotPositiveSemidefinite, PoleTooClose, PreconditionViolated
from app.domain.numerics import psd_factor, psd_sqrt, rank_svd
from app.domain.popov import classify_solution, pi_x_scale, riccati_inequality, x_quantities
from app.entities.popov_triple import PopovTriple, SolutionClass, XQuantities
from app.entities.spectral_sample import RankComparison, RationalSample
from app.entities.tolerance import TolerancePolicy


logger = logging.getLogger(__name__)

MIN_SAMPLES = 8
RADIUS_RANGE = (0.7, 1.4)
MAX_DRAWS_PER_SAMPLE = 100


def check_evaluation_point(z: complex, matrices: Iterable[np.ndarray], tol: TolerancePolicy) -> None:
    """
    Exigir que z e 1/z fiquem a pole_margin·max(1, ρ) dos autovalores das matrizes.

    Raises:
        PoleTooClose: Se z for zero ou estiver perto demais de algum polo
    """
    z = complex(z)
    if abs(z) <= tol.rank_abs:
        raise PoleTooClose("z = 0 não é ponto de avaliação válido")
    for M in matrices:
        if M.size == 0:
            continue
        eigenvalues = scipy.linalg.eigvals(M)
        margin = tol.pole_margin * max(1.0, float(np.max(np.abs(eigenvalues))))
        if np.min(np.abs(eigenvalues - z)) <= margin or np.min(np.abs(eigenvalues - 1.0 / z)) <= margin:
            raise PoleTooClose(f"z = {z} está a menos de {margin:.3g} de um polo")


def _resolvent_input(A: np.ndarray, B: np.ndarray, z: complex) -> np.ndarray:
    """(zI - A)⁻¹·B."""
    n = A.shape[0]
    return scipy.linalg.solve(z * np.eye(n) - A, B.astype(complex))


def _popov_input(sigma: PopovTriple, z: complex) -> np.ndarray:
    """M(z) = [(zI - A)⁻¹B; I]."""
    return np.vstack([_resolvent_input(sigma.A, sigma.B, z), np.eye(sigma.m)])


def _quadratic_form(sigma: PopovTriple, middle: np.ndarray, z: complex) -> np.ndarray:
    """M(1/z)ᵀ·middle·M(z)."""
    return _popov_input(sigma, 1.0 / z).T @ middle @ _popov_input(sigma, z)


def eval_phi(sigma: PopovTriple, z: complex, tol: TolerancePolicy) -> np.ndarray:
    """
    Φ(z) = [Bᵀ(z⁻¹I - Aᵀ)⁻¹, I]·Π·[(zI - A)⁻¹B; I].

    Args:
        sigma: Tripla de Popov
        z: Ponto de avaliação complexo
        tol: Política de tolerâncias

    Returns:
        np.ndarray: Matriz complexa m x m

    Raises:
        PoleTooClose: Se z ou 1/z estiverem perto de autovalores de A
    """
    check_evaluation_point(z, [sigma.A], tol)
    return _quadratic_form(sigma, sigma.pi, complex(z))


def eval_w(sigma: PopovTriple, z: complex, tol: TolerancePolicy) -> np.ndarray:
    """W(z) = C(zI - A)⁻¹B + D a partir do fator (C, D) de Π."""
    check_evaluation_point(z, [sigma.A], tol)
    return sigma.C @ _resolvent_input(sigma.A, sigma.B, complex(z)) + sigma.D


def para_hermitian_product(left_at_inverse: np.ndarray, right: np.ndarray) -> np.ndarray:
    """F~(z)·G(z) a partir de F(1/z) e G(z)."""
    return left_at_inverse.T @ right


def phi_pix_identity_residual(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> float:
    """‖Φ(z) - M(1/z)ᵀ·Π_X·M(z)‖_F, nulo para qualquer X simétrica."""
    q = x_quantities(sigma, X, tol)
    phi = eval_phi(sigma, z, tol)
    return float(np.linalg.norm(phi - _quadratic_form(sigma, q.Pi_X, complex(z))))


def sample_points(
    sigma: PopovTriple, samples: int, tol: TolerancePolicy, seed: Optional[int] = None,
    extra_poles: Iterable[np.ndarray] = (),
) -> List[complex]:
    """
    Pontos pseudoaleatórios com |z| em [0.7, 1.4] que evitam os polos.

    A sequência depende apenas da semente.
    """
    if samples < MIN_SAMPLES:
        raise InvalidParameter(f"São necessárias ao menos {MIN_SAMPLES} amostras, recebido {samples}")
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    matrices = [sigma.A, *extra_poles]
    points = []
    draws = 0
    while len(points) < samples:
        draws += 1
        if draws > samples * MAX_DRAWS_PER_SAMPLE:
            raise PoleTooClose("Não foi possível amostrar pontos longe dos polos")
        radius = rng.uniform(*RADIUS_RANGE)
        angle = rng.uniform(0.0, 2.0 * np.pi)
        z = complex(radius * np.cos(angle), radius * np.sin(angle))
        try:
            check_evaluation_point(z, matrices, tol)
        except PoleTooClose:
            continue
        points.append(z)
    return points


def sample_phi(sigma: PopovTriple, tol: TolerancePolicy, samples: int, seed: Optional[int] = None) -> List[RationalSample]:
    return [RationalSample(z=z, value=eval_phi(sigma, z, tol)) for z in sample_points(sigma, samples, tol, seed)]


def normal_rank_phi(
    sigma: PopovTriple, tol: TolerancePolicy, samples: int = None, seed: Optional[int] = None
) -> int:
    """Posto normal de Φ: maior posto numérico sobre pontos amostrados."""
    samples = samples or settings.normal_rank_samples
    if sigma.m == 0:
        return 0
    ranks = [rank_svd(sample.value, tol) for sample in sample_phi(sigma, tol, samples, seed)]
    logger.debug("Postos amostrados de Φ: %s", ranks)
    return max(ranks)


def _t_x(sigma: PopovTriple, q: XQuantities, z: complex) -> np.ndarray:
    return np.eye(sigma.m) + q.K_X @ _resolvent_input(sigma.A, sigma.B, z)


def _t_x_inverse(sigma: PopovTriple, q: XQuantities, z: complex) -> np.ndarray:
    return np.eye(sigma.m) - q.K_X @ _resolvent_input(q.A_X, sigma.B, z)


def t_x(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> np.ndarray:
    """T_X(z) = I + K_X(zI - A)⁻¹B."""
    check_evaluation_point(z, [sigma.A], tol)
    return _t_x(sigma, x_quantities(sigma, X, tol), complex(z))


def t_x_inverse(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> np.ndarray:
    """T_X⁻¹(z) = I - K_X(zI - A_X)⁻¹B."""
    q = x_quantities(sigma, X, tol)
    check_evaluation_point(z, [q.A_X], tol)
    return _t_x_inverse(sigma, q, complex(z))


def spectral_factor_eval(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> np.ndarray:
    """
    W₁(z) = R_X^{1/2}·(K_X(zI - A)⁻¹B + I).

    Raises:
        PoleTooClose: Se z estiver perto de autovalores de A
        NotPositiveSemidefinite: Se R_X for indefinida
    """
    check_evaluation_point(z, [sigma.A], tol)
    q = x_quantities(sigma, X, tol)
    return psd_sqrt(q.R_X, tol, name="R_X") @ _t_x(sigma, q, complex(z))


def spectral_factor_residual(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> float:
    """‖Φ(z) - W₁~(z)·W₁(z)‖_F."""
    z = complex(z)
    phi = eval_phi(sigma, z, tol)
    product = para_hermitian_product(
        spectral_factor_eval(sigma, X, 1.0 / z, tol), spectral_factor_eval(sigma, X, z, tol)
    )
    return float(np.linalg.norm(phi - product))


def t_inverse_identity_residual(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> float:
    """‖T_X(z)·T_X⁻¹(z) - I‖_F."""
    product = t_x(sigma, X, z, tol) @ t_x_inverse(sigma, X, z, tol)
    return float(np.linalg.norm(product - np.eye(sigma.m)))


def reduced_phi_residual(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> float:
    """‖T_X⁻¹(1/z)ᵀ·Φ(z)·T_X⁻¹(z) - R_X‖_F."""
    z = complex(z)
    q = x_quantities(sigma, X, tol)
    check_evaluation_point(z, [sigma.A, q.A_X], tol)
    reduced = para_hermitian_product(
        _t_x_inverse(sigma, q, 1.0 / z), eval_phi(sigma, z, tol) @ _t_x_inverse(sigma, q, z)
    )
    return float(np.linalg.norm(reduced - q.R_X))


def dissipation_factor_residual(sigma: PopovTriple, X, z: complex, tol: TolerancePolicy) -> float:
    """
    ‖Φ - W₁~W₁ - W₂~W₂‖_F com W₂(z) = H_X(zI - A)⁻¹B e H_XᵀH_X = 𝐑[X] - X.

    Raises:
        PreconditionViolated: Se X não satisfizer a DRLMI
    """
    z = complex(z)
    q = x_quantities(sigma, X, tol)
    try:
        H = psd_factor(
            riccati_inequality(sigma, q.X, tol), tol, name="𝒟(X)", scale=pi_x_scale(sigma, q.X)
        )
    except NotPositiveSemidefinite as e:
        raise PreconditionViolated("X não satisfaz a DRLMI") from e

    def w2(point: complex) -> np.ndarray:
        return H @ _resolvent_input(sigma.A, sigma.B, point)

    total = para_hermitian_product(
        spectral_factor_eval(sigma, q.X, 1.0 / z, tol), spectral_factor_eval(sigma, q.X, z, tol)
    ) + para_hermitian_product(w2(1.0 / z), w2(z))
    return float(np.linalg.norm(eval_phi(sigma, z, tol) - total))


def rank_rx_vs_normal_rank(
    sigma: PopovTriple, X, tol: TolerancePolicy, samples: int = None, seed: Optional[int] = None
) -> RankComparison:
    """
    Comparar posto R_X com o posto normal de Φ.

    Soluções da CGDARE exigem igualdade; membros apenas da DRLMI exigem ≤.

    Raises:
        PreconditionViolated: Se X não for solução da CGDARE nem membro da DRLMI
    """
    classification = classify_solution(sigma, X, tol)
    if not (classification.solves_cgdare or classification == SolutionClass.DRLMI_ONLY):
        raise PreconditionViolated(f"Comparação de postos indefinida para {classification.value}")
    rank_R_X = x_quantities(sigma, X, tol).rank_R_X
    normal_rank = normal_rank_phi(sigma, tol, samples, seed)
    if classification.solves_cgdare:
        holds = rank_R_X == normal_rank
    else:
        holds = rank_R_X <= normal_rank
    if not holds:
        logger.warning("posto R_X=%d incompatível com posto normal %d", rank_R_X, normal_rank)
    return RankComparison(
        rank_R_X=rank_R_X, normal_rank=normal_rank, classification=classification, holds=holds
    )
