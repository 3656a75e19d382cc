"""Application configuration using Pydantic Settings."""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Bell polynomial construction
    bell_cache_enabled: bool = True
    bell_cache_size: int = Field(4096, ge=1)  # entries kept before the oldest is evicted

    # Faa di Bruno engine
    fdb_workers: int = Field(1, ge=1)  # 1 = evaluate multi-indices sequentially

    # Verification suites
    verify_seed: int = 1
    verify_trials: int = Field(25, ge=1)
    verify_order: int = Field(5, ge=1)
    verify_concurrency: int = Field(4, ge=1)

    # Fixtures
    fixtures_dir: str = "fixtures"

    # Logging (stderr only; stdout carries results)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    # Server
    host: str = "0.0.0.0"
    port: int = 8000


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
