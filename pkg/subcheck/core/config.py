"""Application configuration using pydantic-settings."""
import logging
from typing import Optional

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from subcheck import __version__
from subcheck.models import Algorithm, CheckerMode

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Application settings."""

    # Application
    app_name: str = Field(default="subcheck")
    app_version: str = Field(default=__version__)

    # Oracle
    oracle_max: int = Field(
        default=8,
        ge=0,
        le=16,
        description="Largest universe the brute-force oracle accepts. "
                    "The oracle enumerates 3^m subset pairs.",
    )
    oracle_warn_above: int = Field(default=8, ge=0)

    # Generators
    max_complete_m: int = Field(
        default=20,
        ge=0,
        description="Size guard for complete coherent lists (N = 2^m).",
    )

    # Checker defaults
    default_algorithm: Algorithm = Field(default=Algorithm.FAST)
    default_mode: CheckerMode = Field(default=CheckerMode.WITNESS)

    # Benchmarks
    bench_reps: int = Field(default=5, ge=1)
    bench_warmup: bool = Field(default=True)

    # Logging
    log_level: str = Field(default="WARNING")
    log_file: Optional[str] = Field(default=None)

    model_config = SettingsConfigDict(
        env_prefix="SUBCHECK_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


def load_settings() -> Settings:
    """
    Settings from the environment, or the defaults when the environment does
    not validate. The CLI group validates again and reports the error.
    """
    try:
        return Settings()
    except ValidationError as e:
        logger.debug(f"Ignoring invalid environment at import: {e.errors()[0]['msg']}")
        return Settings.model_construct()


# Global settings instance
settings = load_settings()
