from typing import Optional
from pydantic_settings import BaseSettings
from pydantic import field_validator


class Settings(BaseSettings):
    # Logging / monitoring
    LOG_LEVEL: str = "INFO"
    SENTRY_DSN: Optional[str] = None

    # Iterative solvers
    DEFAULT_TOL: float = 1e-10
    MAX_ITER: int = 100_000
    SERIES_MAX_TERMS: int = 100_000
    NEUMANN_MAX_RATE: float = 0.99

    # Dense diagonal measures (eigendecomposition) are limited to this order
    CENTRALITY_DENSE_LIMIT: int = 3000

    # Rankings
    TIE_TOL: float = 1e-9
    ISIM_THRESHOLD: float = 0.05

    # Parameter defaults
    DEFAULT_BETA: float = 1.0
    DEFAULT_TAU: float = 0.85
    DEFAULT_DAMPING: float = 0.85
    MAX_DAMPING: float = 0.999
    DAMPING_WARNING: float = 0.99

    # Near-limit evaluation
    LIMIT_BETA_SMALL: float = 1e-6
    LIMIT_BETA_LARGE: float = 30.0
    LIMIT_TAU_SMALL: float = 1e-6
    LIMIT_TAU_LARGE: float = 0.9999
    LIMIT_MAX_ESCALATIONS: int = 4

    # Sweeps
    SWEEP_WORKERS: int = 1

    SEED: int = 0
    SCORE_DIGITS: int = 12

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        if isinstance(v, str):
            return v.strip().upper()
        raise ValueError(v)

    @field_validator(
        "DEFAULT_TOL", "TIE_TOL", "LIMIT_BETA_SMALL", "LIMIT_BETA_LARGE", "LIMIT_TAU_SMALL"
    )
    @classmethod
    def must_be_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("CENTRALITY_DENSE_LIMIT", "MAX_ITER", "SERIES_MAX_TERMS", "SWEEP_WORKERS")
    @classmethod
    def must_be_positive_count(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("NEUMANN_MAX_RATE", "LIMIT_TAU_LARGE", "MAX_DAMPING", "DAMPING_WARNING")
    @classmethod
    def must_be_fraction(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError("must lie in (0, 1)")
        return v

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


settings = Settings()


def reload_settings() -> Settings:
    """Re-read the environment into the shared ``settings`` instance."""
    fresh = Settings()
    for name in Settings.model_fields:
        setattr(settings, name, getattr(fresh, name))
    return settings
