"""Base dos use cases: leitura do problema e montagem da tripla."""

import logging
from typing import Optional, Tuple

import numpy as np

from app.config import settings
from app.domain.popov import triple_from_quadruple, validate_triple
from app.domain.riccati import solve_min_psd
from app.dtos.problem_dtos import ExecutionOptionsDTO, ProblemFileDTO
from app.dtos.report_dtos import ReportDTO
from app.entities.popov_triple import PopovTriple
from app.entities.solve_report import SolveReport
from app.entities.tolerance import TolerancePolicy
from app.repositories.iproblem_repository import IProblemRepository


logger = logging.getLogger(__name__)


def resolve_tolerances(problem: ProblemFileDTO, options: ExecutionOptionsDTO) -> TolerancePolicy:
    """
    Política de tolerâncias com precedência configuração < arquivo < linha de comando.

    ``--tol`` sobrescreve rank_rel, conv_rel e psd_clip ao mesmo tempo.
    """
    overrides = problem.tol.model_dump() if problem.tol else {}
    if options.tol is not None:
        overrides.update(rank_rel=options.tol, conv_rel=options.tol, psd_clip=options.tol)
    if options.max_iter is not None:
        overrides["max_iter"] = options.max_iter
    return TolerancePolicy.from_settings(**overrides)


def build_triple(problem: ProblemFileDTO, tol: TolerancePolicy) -> PopovTriple:
    """Montar a tripla a partir de (Q, R, S) ou, na ausência de Q, do fator (C, D)."""
    if problem.Q is None:
        D = problem.matrix("D")
        if D is None:
            D = np.zeros((len(problem.C), problem.m))
        return triple_from_quadruple(problem.matrix("A"), problem.matrix("B"), problem.matrix("C"), D, tol)
    S = problem.matrix("S")
    if S is None:
        S = np.zeros((problem.n, problem.m))
    return validate_triple(
        problem.matrix("A"), problem.matrix("B"), problem.matrix("Q"), problem.matrix("R"), S, tol,
        C=problem.matrix("C"), D=problem.matrix("D"),
    )


class ProblemUseCase:
    """Base para use cases que partem de um arquivo de problema."""

    command: str = ""

    def __init__(self, problem_repository: IProblemRepository):
        self.problem_repository = problem_repository

    def _load(self, path: str, options: ExecutionOptionsDTO) -> Tuple[ProblemFileDTO, TolerancePolicy]:
        problem = self.problem_repository.load_problem(path)
        return problem, resolve_tolerances(problem, options)

    def _load_triple(
        self, path: str, options: ExecutionOptionsDTO
    ) -> Tuple[ProblemFileDTO, PopovTriple, TolerancePolicy]:
        problem, tol = self._load(path, options)
        return problem, build_triple(problem, tol), tol

    def _seed(self, options: ExecutionOptionsDTO) -> int:
        return settings.seed if options.seed is None else options.seed

    def _solve(self, sigma: PopovTriple, tol: TolerancePolicy) -> SolveReport:
        return solve_min_psd(sigma, tol)

    def _empty_report(self, problem: ProblemFileDTO, tol: TolerancePolicy) -> ReportDTO:
        return ReportDTO(
            command=self.command,
            n=problem.n,
            m=problem.m,
            tolerances={key: float(value) for key, value in tol.model_dump().items()},
        )

    def _candidate_or_solution(
        self, problem: ProblemFileDTO, sigma: PopovTriple, tol: TolerancePolicy
    ) -> Tuple[Optional[np.ndarray], Optional[SolveReport]]:
        """Primeira candidata do arquivo ou, na falta dela, a solução PSD mínima."""
        candidates = problem.candidates()
        if candidates:
            return candidates[0], None
        report = self._solve(sigma, tol)
        if not report.converged:
            logger.warning("Iteração terminou com status %s", report.status.value)
            return None, report
        return report.X_bar, report
