"""DTOs para arquivos de problema."""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


Matrix = List[List[float]]


class ToleranceOverridesDTO(BaseModel):
    """Bloco ``tol`` opcional do arquivo de problema."""

    rank_rel: Optional[float] = Field(default=None, gt=0, description="Corte relativo de posto")
    rank_abs: Optional[float] = Field(default=None, gt=0, description="Piso absoluto de posto")
    conv_rel: Optional[float] = Field(default=None, gt=0, description="Tolerância de convergência")
    psd_clip: Optional[float] = Field(default=None, gt=0, description="Corte PSD")
    max_iter: Optional[int] = Field(default=None, ge=1, description="Máximo de iterações")
    pole_margin: Optional[float] = Field(default=None, gt=0, description="Margem aos polos")

    class Config:
        extra = "forbid"


def _shape(name: str, value: Optional[Matrix], rows: int, cols: int) -> None:
    if value is None:
        return
    if rows == 0 or cols == 0:
        flat = [entry for row in value for entry in row]
        if flat:
            raise ValueError(f"{name} deve ser vazia para dimensão {rows}x{cols}")
        return
    if len(value) != rows or any(len(row) != cols for row in value):
        found = f"{len(value)}x{len(value[0]) if value else 0}"
        raise ValueError(f"{name} deve ser {rows}x{cols}, recebido {found}")


class ProblemFileDTO(BaseModel):
    """
    Arquivo de problema: matrizes em listas de linhas.

    Q, R e S podem ser omitidos quando C e D são fornecidos; nesse caso são
    derivados do fator. B, R e S podem ser omitidos quando m = 0.
    """

    n: int = Field(..., gt=0, description="Dimensão do estado")
    m: int = Field(default=0, ge=0, description="Dimensão da entrada")
    A: Matrix = Field(..., description="Matriz de estado n x n")
    B: Optional[Matrix] = Field(default=None, description="Matriz de entrada n x m")
    Q: Optional[Matrix] = Field(default=None, description="Peso de estado n x n")
    R: Optional[Matrix] = Field(default=None, description="Peso de entrada m x m")
    S: Optional[Matrix] = Field(default=None, description="Peso cruzado n x m")
    C: Optional[Matrix] = Field(default=None, description="Fator C de Π")
    D: Optional[Matrix] = Field(default=None, description="Fator D de Π")
    X_candidates: Optional[List[Matrix]] = Field(default=None, description="Candidatas X")
    x0: Optional[List[float]] = Field(default=None, description="Estado inicial")
    tol: Optional[ToleranceOverridesDTO] = Field(default=None, description="Tolerâncias")

    class Config:
        extra = "forbid"

    @field_validator("X_candidates")
    @classmethod
    def validate_candidates(cls, v):
        """Lista vazia equivale a ausência de candidatas."""
        return v or None

    @model_validator(mode="after")
    def validate_shapes(self):
        """Conferir as dimensões de todas as matrizes."""
        n, m = self.n, self.m
        if m > 0 and self.B is None:
            raise ValueError("B é obrigatória quando m > 0")
        if self.Q is None and self.C is None:
            raise ValueError("Informe Q (e R, S) ou o fator C, D")
        if self.C is not None and self.D is None and m > 0:
            raise ValueError("D é obrigatória quando C é fornecida")
        if self.C is None and self.D is not None:
            raise ValueError("C é obrigatória quando D é fornecida")
        if self.Q is not None and m > 0 and self.R is None:
            raise ValueError("R é obrigatória quando m > 0")

        _shape("A", self.A, n, n)
        _shape("B", self.B, n, m)
        _shape("Q", self.Q, n, n)
        _shape("R", self.R, m, m)
        _shape("S", self.S, n, m)
        if self.C is not None:
            p = len(self.C)
            _shape("C", self.C, p, n)
            _shape("D", self.D, p, m)
        for index, candidate in enumerate(self.X_candidates or []):
            _shape(f"X_candidates[{index}]", candidate, n, n)
        if self.x0 is not None and len(self.x0) != n:
            raise ValueError(f"x0 deve ter {n} entradas, recebido {len(self.x0)}")
        return self

    def matrix(self, name: str) -> Optional[np.ndarray]:
        """Matriz ``name`` como ndarray com a forma declarada (None se ausente)."""
        value = getattr(self, name)
        if value is None:
            return None
        rows = {"A": self.n, "B": self.n, "Q": self.n, "R": self.m, "S": self.n, "D": len(self.C or [])}.get(name, len(value))
        cols = {"A": self.n, "B": self.m, "Q": self.n, "R": self.m, "S": self.m, "C": self.n, "D": self.m}[name]
        return np.array(value, dtype=float).reshape(rows, cols)

    def candidates(self) -> List[np.ndarray]:
        return [np.array(X, dtype=float).reshape(self.n, self.n) for X in self.X_candidates or []]

    def initial_state(self) -> Optional[np.ndarray]:
        return None if self.x0 is None else np.array(self.x0, dtype=float)


class ExecutionOptionsDTO(BaseModel):
    """Opções de linha de comando repassadas aos use cases."""

    tol: Optional[float] = Field(default=None, gt=0, description="Sobrescreve rank_rel, conv_rel e psd_clip")
    max_iter: Optional[int] = Field(default=None, ge=1, description="Máximo de iterações")
    samples: Optional[int] = Field(default=None, ge=8, description="Amostras do posto normal")
    poles: Optional[List[complex]] = Field(default=None, description="Polos desejados em R₀")
    seed: Optional[int] = Field(default=None, ge=0, description="Semente")

    @field_validator("poles", mode="before")
    @classmethod
    def parse_poles(cls, v):
        """Aceitar lista separada por vírgulas, p. ex. ``0.5,0.1+0.2j,0.1-0.2j``."""
        if v is None or not isinstance(v, str):
            return v
        items = [item.strip().replace(" ", "").replace("i", "j") for item in v.split(",")]
        if not all(items):
            raise ValueError(f"Lista de polos malformada: '{v}'")
        try:
            return [complex(item) for item in items]
        except ValueError as e:
            raise ValueError(f"Polo inválido em '{v}'") from e
