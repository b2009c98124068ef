"""Controlador para os comandos de análise."""

import logging
from enum import IntEnum
from typing import Optional

from pydantic import ValidationError

from app.domain.exceptions import AnalysisError
from app.dtos.problem_dtos import ExecutionOptionsDTO
from app.dtos.report_dtos import ReportDTO
from app.entities.solve_report import SolveStatus
from app.infrastructure.repositories.yaml_problem_repository import YAMLProblemRepository
from app.repositories.iproblem_repository import IProblemRepository
from app.use_cases.analysis_use_cases import (
    AnalisarEspectroUseCase,
    AnalisarSteinUseCase,
    EstabilizarUseCase,
)
from app.use_cases.riccati_use_cases import ResolverCGDAREUseCase, VerificarCandidatasUseCase


logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    INVALID_INPUT = 1
    DIVERGED = 2
    MAX_ITER_REACHED = 3
    ANALYSIS_ERROR = 4


class CommandError(Exception):
    """Falha de comando com o código de saída correspondente."""

    def __init__(self, exit_code: ExitCode, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail


class ProblemController:
    """Controlador para os comandos solve, verify, stein, spectral e stabilize."""

    def __init__(self, problem_repository: Optional[IProblemRepository] = None):
        self.problem_repository = problem_repository or YAMLProblemRepository()

        self.use_cases = {
            "solve": ResolverCGDAREUseCase(self.problem_repository),
            "verify": VerificarCandidatasUseCase(self.problem_repository),
            "stein": AnalisarSteinUseCase(self.problem_repository),
            "spectral": AnalisarEspectroUseCase(self.problem_repository),
            "stabilize": EstabilizarUseCase(self.problem_repository),
        }

    def run(self, command: str, path: str, options: ExecutionOptionsDTO) -> ReportDTO:
        """
        Executar um comando.

        Args:
            command: Nome do comando
            path: Arquivo de problema
            options: Opções de execução

        Returns:
            ReportDTO: Relatório produzido

        Raises:
            CommandError: Em caso de erro de validação (1) ou de análise (4)
        """
        try:
            return self.use_cases[command].execute(path, options)
        except (ValueError, ValidationError) as e:
            raise CommandError(ExitCode.INVALID_INPUT, str(e)) from e
        except AnalysisError as e:
            raise CommandError(ExitCode.ANALYSIS_ERROR, str(e)) from e
        except Exception as e:
            logger.exception("Erro inesperado em %s", command)
            raise CommandError(ExitCode.ANALYSIS_ERROR, f"Erro interno: {e}") from e

    @staticmethod
    def exit_code(report: ReportDTO) -> ExitCode:
        """Código de saída de um relatório produzido com sucesso."""
        if report.solve is None:
            return ExitCode.OK
        return {
            SolveStatus.DIVERGED.value: ExitCode.DIVERGED,
            SolveStatus.MAX_ITER_REACHED.value: ExitCode.MAX_ITER_REACHED,
        }.get(report.solve.status, ExitCode.OK)

    def render(self, report: ReportDTO) -> str:
        return self.problem_repository.dump_report(report)

    def save(self, report: ReportDTO, path: str) -> None:
        self.problem_repository.save_report(report, path)
