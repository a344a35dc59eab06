"""Application configuration using pydantic-settings.

This module provides centralized configuration management:
- Environment variable loading from an optional .env file
- Type-safe settings with validation
- Cached settings instance with @lru_cache
- Default solver parameters consumed by the CLI and by SolverConfig.from_settings
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide defaults for logging, ingestion and the solver.

    Each field can be overridden by a case-insensitive environment variable or
    by an optional .env file. Every field has a default.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        # unrelated keys in the environment or .env are ignored
        extra="ignore",
    )

    # Application metadata
    app_name: str = "Spectral Distance"
    version: str = "0.1.0"
    environment: str = "development"
    log_level: str = "WARNING"

    # Ingestion: reject non-Hermitian L_i instead of symmetrizing them
    strict_hermitian: bool = False

    # Solver defaults
    solver_tol_gap: float = Field(default=1e-7, gt=0)
    solver_max_iter: int = Field(default=200_000, ge=1)
    solver_check_every: int = Field(default=100, ge=1)
    solver_step_ratio: float = Field(default=1.0, gt=0)
    solver_seed: int = 0


@lru_cache
def get_settings() -> Settings:
    """Settings loaded once per process.

    Tests clear the cache with ``get_settings.cache_clear()``.
    """
    return Settings()
