from pydantic_settings import BaseSettings
from dotenv import load_dotenv


load_dotenv()


class Settings(BaseSettings):
    """Configurações da aplicação."""

    app_name: str = "CGDARE Toolkit"
    app_version: str = "1.0.0"
    debug: bool = False
    log_level: str = "WARNING"

    # Tolerâncias numéricas
    rank_rel: float = 1e-10
    rank_abs: float = 1e-13
    conv_rel: float = 1e-10
    psd_clip: float = 1e-10
    max_iter: int = 10000

    # Iteração de Riccati
    consecutive_small_steps: int = 3
    divergence_factor: float = 1e12
    monotonicity_slack: float = 1e-9
    freeze_rank_after_stationary: bool = False

    # Amostragem espectral
    normal_rank_samples: int = 16
    pole_margin: float = 1e-3
    seed: int = 0

    report_schema_version: str = "1"

    class Config:
        env_file = ".env"
        env_prefix = "CGDARE_"
        case_sensitive = False
        extra = "ignore"


settings = Settings()
