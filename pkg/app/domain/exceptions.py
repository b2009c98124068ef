"""Exceções do domínio.

Erros de validação também herdam de ``ValueError`` e são mapeados para o
código de saída 1; erros de análise são mapeados para o código 4.
"""

from typing import Optional


class CGDAREError(Exception):
    """Erro base do pacote."""


class CGDAREValidationError(CGDAREError, ValueError):
    """Entrada inválida (dimensões, simetria, arquivo de problema)."""


class DimensionMismatch(CGDAREValidationError):
    pass


class NonFiniteEntries(CGDAREValidationError):
    pass


class NotSymmetric(CGDAREValidationError):
    pass


class NotPositiveSemidefinite(CGDAREValidationError):
    """Matriz com autovalor negativo além do limiar de corte."""

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(f"{message} (menor autovalor {min_eigenvalue:.6g})")
        self.min_eigenvalue = min_eigenvalue


class FactorMismatch(CGDAREValidationError):
    pass


class MissingCandidates(CGDAREValidationError):
    pass


class InvalidParameter(CGDAREValidationError):
    pass


class ProblemFileError(CGDAREValidationError):
    """Arquivo de problema ilegível ou fora do esquema."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = []
        if field:
            location.append(f"campo '{field}'")
        if line is not None:
            location.append(f"linha {line}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
        self.field = field
        self.line = line


class AnalysisError(CGDAREError):
    """Falha de uma análise numérica sobre dados válidos."""


class SteinInconsistent(AnalysisError):
    pass


class SteinResidualTooLarge(AnalysisError):
    pass


class PreconditionViolated(AnalysisError):
    pass


class NotOutputNulling(AnalysisError):
    pass


class NotAFriend(AnalysisError):
    pass


class NotInvariant(AnalysisError):
    pass


class PoleTooClose(AnalysisError):
    pass


class DesiredSetSizeMismatch(AnalysisError):
    pass


class ConjugationViolation(AnalysisError):
    pass


class DivergentTrajectory(AnalysisError):
    pass


class PlacementFailed(AnalysisError):
    pass


class InvariantViolation(AnalysisError):
    pass
