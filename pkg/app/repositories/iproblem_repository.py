"""Interface para repositório de problemas e relatórios."""

from abc import ABC, abstractmethod

from app.dtos.problem_dtos import ProblemFileDTO
from app.dtos.report_dtos import ReportDTO


class IProblemRepository(ABC):
    """Interface para leitura de problemas e escrita de relatórios."""

    @abstractmethod
    def load_problem(self, path: str) -> ProblemFileDTO:
        """
        Ler e validar um arquivo de problema.

        Args:
            path: Caminho do arquivo

        Returns:
            ProblemFileDTO: Problema validado

        Raises:
            ProblemFileError: Se o arquivo não puder ser lido ou validado
        """
        pass

    @abstractmethod
    def dump_report(self, report: ReportDTO) -> str:
        """Serializar o relatório de forma determinística."""
        pass

    @abstractmethod
    def save_report(self, report: ReportDTO, path: str) -> None:
        """
        Gravar um relatório.

        Args:
            report: Relatório
            path: Caminho de destino
        """
        pass

    @abstractmethod
    def load_report(self, path: str) -> ReportDTO:
        """
        Ler um relatório gravado.

        Args:
            path: Caminho do arquivo

        Returns:
            ReportDTO: Relatório lido
        """
        pass
