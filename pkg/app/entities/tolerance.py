"""Política de tolerâncias numéricas."""

import math
from typing import Optional

from pydantic import BaseModel, Field

from app.config import Settings, settings as default_settings


class TolerancePolicy(BaseModel):
    """Limiares que governam decisões de posto, corte PSD e convergência."""

    rank_rel: float = Field(default=1e-10, gt=0, description="Corte relativo de posto")
    rank_abs: float = Field(default=1e-13, gt=0, description="Piso absoluto para valores singulares")
    conv_rel: float = Field(default=1e-10, gt=0, description="Tolerância relativa de convergência")
    psd_clip: float = Field(default=1e-10, gt=0, description="Corte de autovalores negativos")
    max_iter: int = Field(default=10000, ge=1, description="Máximo de iterações")
    pole_margin: float = Field(default=1e-3, gt=0, description="Distância mínima relativa aos polos")

    class Config:
        frozen = True

    @classmethod
    def from_settings(cls, config: Optional[Settings] = None, **overrides) -> "TolerancePolicy":
        """
        Construir a política a partir das configurações.

        Args:
            config: Configurações (padrão: instância global)
            **overrides: Valores que substituem os das configurações; ``None`` é ignorado

        Returns:
            TolerancePolicy: Política validada
        """
        config = config or default_settings
        values = {
            "rank_rel": config.rank_rel,
            "rank_abs": config.rank_abs,
            "conv_rel": config.conv_rel,
            "psd_clip": config.psd_clip,
            "max_iter": config.max_iter,
            "pole_margin": config.pole_margin,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    @property
    def angle_tol(self) -> float:
        """Limiar de ângulo principal para igualdade e inclusão de subespaços."""
        return math.sqrt(self.rank_rel)

    @property
    def condition_tol(self) -> float:
        return math.sqrt(self.conv_rel)

    def tightened(self, factor: float) -> "TolerancePolicy":
        """Política com os limiares relativos divididos por ``factor``."""
        return self.model_copy(
            update={
                "rank_rel": self.rank_rel / factor,
                "conv_rel": self.conv_rel / factor,
                "psd_clip": self.psd_clip / factor,
            }
        )
