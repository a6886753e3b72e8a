"""Application configuration management using Pydantic settings."""

import os
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def get_env_file() -> str:
    """
    Determine which env file to load based on APP_ENV variable.

    Priority:
    1. APP_ENV=production -> .env.production
    2. APP_ENV=local -> .env.local
    3. Default -> .env
    """
    app_env = os.getenv("APP_ENV", "default")

    if app_env == "production":
        return ".env.production"
    elif app_env == "local":
        return ".env.local"
    else:
        return ".env"


class Settings(BaseSettings):
    """Analysis settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=get_env_file(),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Number field
    default_discriminant: int = Field(
        default=2, description="Quadratic field discriminant used when a file omits it"
    )

    # Grid covers and counting
    default_grid: int = Field(default=256, description="Default grid resolution n")
    default_max_m: int = Field(default=10, description="Default Mahavier depth m_max")
    max_exact_m: int = Field(
        default=32, description="Largest m counted with exact big-integer walks"
    )
    cell_semantics: str = Field(
        default="closed", description="Rasterization cells: 'closed', 'half_open' or 'interior'"
    )
    mahavier_guard: int = Field(
        default=1_000_000, description="Maximum number of enumerated Mahavier sequences"
    )

    # Spectral estimates
    spectral_tolerance: float = Field(
        default=1e-10, description="Relative Collatz-Wielandt enclosure target"
    )
    spectral_max_iterations: int = Field(
        default=200_000, description="Power iteration cap per strongly connected block"
    )
    transfer_tolerance: float = Field(
        default=1e-6, description="Tolerance for approximate entropy transfer checks"
    )

    # Periodic orbits
    default_max_period: int = Field(default=12, description="Default census period bound")
    max_period_cap: int = Field(default=16, description="Hard cap on branch word length")

    # Certificates
    finite_certify_guard: int = Field(
        default=12, description="Largest finite relation searched exhaustively"
    )
    replay_samples: int = Field(default=100, description="Sampled t values for replay")
    replay_depth: int = Field(default=8, description="Branching depth for replay")

    # Run archive
    database_url: str = Field(
        default="sqlite:///entropy_runs.db",
        description="SQLAlchemy URL of the run archive",
    )
    archive_runs: bool = Field(default=False, description="Store every CLI run")

    # Application
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: str = Field(default="", description="Optional log file path")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {value}")
        return level

    @field_validator("cell_semantics")
    @classmethod
    def validate_cell_semantics(cls, value: str) -> str:
        if value not in {"closed", "half_open", "interior"}:
            raise ValueError(f"cell_semantics must be 'closed', 'half_open' or 'interior', got {value}")
        return value

    @field_validator("max_exact_m")
    @classmethod
    def validate_max_exact_m(cls, value: int) -> int:
        if not 1 <= value <= 32:
            raise ValueError(f"max_exact_m must be between 1 and 32, got {value}")
        return value

    @property
    def archive_enabled(self) -> bool:
        """Whether runs should be written to the archive database."""
        return self.archive_runs and bool(self.database_url)


# Global settings instance
settings = Settings()
