"""Use cases para a iteração de Riccati e a verificação de candidatas."""

import logging

import numpy as np

from app.domain.exceptions import MissingCandidates
from app.domain.geometry import compare_solutions, solution_geometry
from app.domain.popov import classify_solution, gdare_residual, kernel_condition_holds, x_quantities
from app.domain.riccati import optimal_control_set, optimal_cost
from app.domain.stabilize import fixed_spectrum
from app.dtos.problem_dtos import ExecutionOptionsDTO
from app.dtos.report_dtos import (
    CandidateDTO,
    ReportDTO,
    SolveSectionDTO,
    SubspaceDTO,
    complex_to_list,
    matrix_to_list,
)
from app.use_cases.base import ProblemUseCase


logger = logging.getLogger(__name__)


class ResolverCGDAREUseCase(ProblemUseCase):
    """Use case para calcular a solução PSD mínima e sua geometria."""

    command = "solve"

    def execute(self, path: str, options: ExecutionOptionsDTO) -> ReportDTO:
        """
        Executar a iteração de Riccati a partir de X₀ = 0.

        Args:
            path: Arquivo de problema
            options: Opções de execução

        Returns:
            ReportDTO: Relatório com X̄, controles ótimos, R₀ e espectro fixo

        Raises:
            ProblemFileError: Arquivo inválido
            NotPositiveSemidefinite: Π indefinida
        """
        problem, sigma, tol = self._load_triple(path, options)
        report = self._empty_report(problem, tol)
        solved = self._solve(sigma, tol)
        section = SolveSectionDTO.from_report(solved)
        report.solve = section
        report.checks["converged"] = solved.converged
        report.checks["monotone"] = solved.monotone
        if not solved.converged:
            return report

        X_bar = solved.X_bar
        q = x_quantities(sigma, X_bar, tol)
        K, G = optimal_control_set(sigma, X_bar, tol)
        geometry = solution_geometry(sigma, X_bar, tol, rng=np.random.default_rng(self._seed(options)))
        section.R_X = matrix_to_list(q.R_X)
        section.G_X = matrix_to_list(G)
        section.K_X = matrix_to_list(K)
        section.A_X = matrix_to_list(q.A_X)
        section.BG_X = matrix_to_list(sigma.B @ G)
        section.kernel_X = SubspaceDTO.from_subspace(geometry.kernel_X)
        section.v_star = SubspaceDTO.from_subspace(geometry.v_star)
        section.r0 = SubspaceDTO.from_subspace(geometry.r0)
        section.fixed_spectrum = complex_to_list(fixed_spectrum(sigma, X_bar, tol))
        x0 = problem.initial_state()
        if x0 is not None:
            section.optimal_cost = optimal_cost(X_bar, x0)

        report.checks.update(
            solves_cgdare=solved.classification.solves_cgdare,
            kernel_identity=geometry.kernel_identity,
            output_nulling=geometry.output_nulling,
            friend=geometry.friend,
            r_star_equals_r0=bool(geometry.r_star_equals_r0),
            x_r0_zero=geometry.x_r0_residual <= tol.condition_tol * (1.0 + np.linalg.norm(X_bar)),
        )
        logger.info("solve: %s, dim R₀ = %d", solved.classification.value, geometry.r0.dim)
        return report


class VerificarCandidatasUseCase(ProblemUseCase):
    """Use case para classificar candidatas X e conferir sua geometria."""

    command = "verify"

    def execute(self, path: str, options: ExecutionOptionsDTO) -> ReportDTO:
        """
        Classificar cada candidata e conferir as propriedades de ker X e R₀.

        Args:
            path: Arquivo de problema com X_candidates
            options: Opções de execução

        Returns:
            ReportDTO: Relatório por candidata

        Raises:
            MissingCandidates: Se o arquivo não trouxer candidatas
        """
        problem, sigma, tol = self._load_triple(path, options)
        candidates = problem.candidates()
        if not candidates:
            raise MissingCandidates("O arquivo não informa X_candidates")
        report = self._empty_report(problem, tol)
        rng = np.random.default_rng(self._seed(options))

        entries = []
        solutions = []
        for index, X in enumerate(candidates):
            q = x_quantities(sigma, X, tol)
            classification = classify_solution(sigma, X, tol)
            geometry = solution_geometry(sigma, X, tol, rng=rng)
            entries.append(
                CandidateDTO.from_geometry(
                    index=index,
                    classification=classification.value,
                    residual_norm=float(np.linalg.norm(gdare_residual(sigma, X, tol))),
                    kernel_condition=kernel_condition_holds(sigma, X, tol),
                    rank_R_X=q.rank_R_X,
                    geometry=geometry,
                )
            )
            if classification.solves_cgdare:
                solutions.append(q.X)
                prefix = f"candidate[{index}]"
                report.checks[f"{prefix}.kernel_identity"] = geometry.kernel_identity
                report.checks[f"{prefix}.output_nulling"] = geometry.output_nulling
                report.checks[f"{prefix}.friend"] = geometry.friend
                report.checks[f"{prefix}.r_star_equals_r0"] = bool(geometry.r_star_equals_r0)
            logger.info("Candidata %d: %s", index, classification.value)

        for index, Y in enumerate(solutions[1:], start=1):
            comparison = compare_solutions(sigma, solutions[0], Y, tol)
            report.checks[f"solutions[0~{index}].consistent"] = comparison.consistent
        report.candidates = entries
        return report
