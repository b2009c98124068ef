"""Use cases para Stein, identidades espectrais e estabilização em R₀."""

import logging

import numpy as np

from app.config import settings
from app.domain.exceptions import DivergentTrajectory, PreconditionViolated
from app.domain.geometry import r0
from app.domain.numerics import is_psd, kernel_basis, multiset_close
from app.domain.popov import classify_solution, x_quantities
from app.domain.spectral import (
    dissipation_factor_residual,
    normal_rank_phi,
    phi_pix_identity_residual,
    rank_rx_vs_normal_rank,
    reduced_phi_residual,
    sample_points,
    spectral_factor_residual,
    t_inverse_identity_residual,
)
from app.domain.stabilize import PLACEMENT_ATOL, auto_horizon, cost_invariance_residual, place_on_r0
from app.domain.stein import family_kernel_dimensions, is_unmixed, stein_kernel_report, stein_solve
from app.dtos.problem_dtos import ExecutionOptionsDTO
from app.dtos.report_dtos import (
    ReportDTO,
    SpectralSectionDTO,
    StabilizeSectionDTO,
    SteinKernelDTO,
    SteinSectionDTO,
)
from app.use_cases.base import ProblemUseCase


logger = logging.getLogger(__name__)

MEMBER_SAMPLES = 5
COST_RTOL = 1e-8


class AnalisarSteinUseCase(ProblemUseCase):
    """Use case para o conjunto de soluções de X = AᵀXA + Q."""

    command = "stein"

    def execute(self, path: str, options: ExecutionOptionsDTO) -> ReportDTO:
        """
        Resolver a equação de Stein e inspecionar os núcleos das soluções.

        Args:
            path: Arquivo com n, A e Q (ou o fator C)
            options: Opções de execução

        Returns:
            ReportDTO: Solução particular, base homogênea e relatório de núcleos
        """
        problem, tol = self._load(path, options)
        A = problem.matrix("A")
        Q = problem.matrix("Q")
        if Q is None:
            C = problem.matrix("C")
            Q = C.T @ C
        report = self._empty_report(problem, tol)

        solutions = stein_solve(A, Q, tol)
        section = SteinSectionDTO.from_solutions(solutions, is_unmixed(A, tol))
        report.stein = section
        report.checks["consistent"] = solutions.is_consistent
        if not solutions.is_consistent:
            return report

        if solutions.family_dim:
            rng = np.random.default_rng(self._seed(options))
            coefficients = rng.uniform(-10.0, 10.0, size=(MEMBER_SAMPLES, solutions.family_dim))
            section.member_kernel_dimensions = family_kernel_dimensions(solutions, coefficients, tol)
        else:
            section.member_kernel_dimensions = [kernel_basis(solutions.particular, tol).dim]

        if is_psd(Q, tol):
            kernels = stein_kernel_report(A, Q, solutions.particular, tol)
            section.kernel_report = SteinKernelDTO.from_report(kernels)
            report.checks["kernel_report"] = kernels.passed
        else:
            logger.info("Q indefinida: relatório de núcleos omitido")
        return report


class AnalisarEspectroUseCase(ProblemUseCase):
    """Use case para o posto normal de Φ e os fatores espectrais."""

    command = "spectral"

    def execute(self, path: str, options: ExecutionOptionsDTO) -> ReportDTO:
        """
        Estimar o posto normal de Φ e conferir as identidades espectrais de X.

        X é a primeira candidata do arquivo ou, na falta dela, a solução PSD
        mínima.

        Args:
            path: Arquivo de problema
            options: Opções de execução (``samples``, ``seed``)

        Returns:
            ReportDTO: Posto normal, posto R_X e resíduos máximos nas amostras

        Raises:
            PreconditionViolated: Se X não resolver a CGDARE nem a DRLMI
        """
        problem, sigma, tol = self._load_triple(path, options)
        report = self._empty_report(problem, tol)
        samples = options.samples or settings.normal_rank_samples
        seed = self._seed(options)
        section = SpectralSectionDTO(
            samples=samples, seed=seed, normal_rank=normal_rank_phi(sigma, tol, samples, seed)
        )
        report.spectral = section

        X, _ = self._candidate_or_solution(problem, sigma, tol)
        if X is None or sigma.m == 0:
            return report

        comparison = rank_rx_vs_normal_rank(sigma, X, tol, samples, seed)
        section.rank_R_X = comparison.rank_R_X
        section.classification = comparison.classification.value
        section.rank_holds = comparison.holds
        report.checks["rank_R_X_vs_normal_rank"] = comparison.holds

        q = x_quantities(sigma, X, tol)
        points = sample_points(sigma, samples, tol, seed, extra_poles=[q.A_X])
        threshold = tol.condition_tol * (1.0 + np.linalg.norm(sigma.pi))
        section.max_phi_pix_residual = max(phi_pix_identity_residual(sigma, X, z, tol) for z in points)
        section.max_t_inverse_residual = max(t_inverse_identity_residual(sigma, X, z, tol) for z in points)
        report.checks["phi_pix_identity"] = section.max_phi_pix_residual <= threshold
        report.checks["t_inverse_identity"] = section.max_t_inverse_residual <= threshold

        if comparison.classification.solves_cgdare:
            section.max_spectral_factor_residual = max(
                spectral_factor_residual(sigma, X, z, tol) for z in points
            )
            section.max_reduced_phi_residual = max(reduced_phi_residual(sigma, X, z, tol) for z in points)
            report.checks["reduced_phi"] = section.max_reduced_phi_residual <= threshold
        else:
            section.max_spectral_factor_residual = max(
                dissipation_factor_residual(sigma, X, z, tol) for z in points
            )
        report.checks["spectral_factor"] = section.max_spectral_factor_residual <= threshold
        return report


class EstabilizarUseCase(ProblemUseCase):
    """Use case para alocar o espectro em R₀ sem alterar o custo."""

    command = "stabilize"

    def execute(self, path: str, options: ExecutionOptionsDTO) -> ReportDTO:
        """
        Alocar os polos de A_X + B·G_X·L restritos a R₀.

        Sem ``poles`` nas opções, todos os polos de R₀ vão para zero.

        Args:
            path: Arquivo de problema (x0 opcional para o teste de custo)
            options: Opções de execução (``poles``, ``seed``)

        Returns:
            ReportDTO: L, A_cl, espectros e resíduo de invariância do custo

        Raises:
            PreconditionViolated: Se não houver solução da CGDARE disponível
            DesiredSetSizeMismatch: Se |poles| ≠ dim R₀
            ConjugationViolation: Se poles não for fechado por conjugação
        """
        problem, sigma, tol = self._load_triple(path, options)
        report = self._empty_report(problem, tol)
        X, solved = self._candidate_or_solution(problem, sigma, tol)
        if X is None:
            raise PreconditionViolated(f"Iteração terminou com status {solved.status.value}")
        classification = classify_solution(sigma, X, tol)
        if not classification.solves_cgdare:
            raise PreconditionViolated(f"X não resolve a CGDARE ({classification.value})")

        free = r0(sigma, x_quantities(sigma, X, tol).X, tol)
        desired = options.poles if options.poles is not None else [0.0] * free.dim
        result = place_on_r0(sigma, X, desired, tol, seed=self._seed(options))
        section = StabilizeSectionDTO.from_result(result, free.dim)
        report.stabilize = section
        report.checks["poles_placed"] = multiset_close(
            result.placed_poles, result.desired_poles, PLACEMENT_ATOL
        )

        x0 = problem.initial_state()
        if x0 is not None:
            try:
                section.horizon = auto_horizon(result.A_cl, x0)
            except DivergentTrajectory as e:
                logger.warning("Teste de custo omitido: %s", e)
                return report
            section.cost_residual = cost_invariance_residual(sigma, X, result.L, x0, tol, T=section.horizon)
            scale = 1.0 + abs(float(x0 @ X @ x0))
            report.checks["cost_invariant"] = section.cost_residual <= COST_RTOL * scale
        return report
