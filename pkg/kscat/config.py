"""KSCAT Configuration using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="KSCAT_",
        env_file=".env",
        env_file_encoding="utf-8",
    )

    # Core
    debug: bool = False
    default_seed: int = 42

    # Workers
    workers: int = 1
    worker_backend: str = "process"  # process or celery
    ensemble_chunk_size: int = 256

    # Redis (for Celery)
    redis_url: str = "redis://localhost:6379/0"
    celery_result_expires: int = 3600  # seconds
    celery_max_tasks_per_child: int = 50

    # Monte-Carlo
    mc_max_scatterers: int = 2_000_000

    # Method of Moments
    mom_segments: int = 21
    mom_max_scatterers: int = 200
    mom_assembly_block: int = 64
    mom_dump_dir: Path | None = None

    @property
    def uses_celery(self) -> bool:
        """Whether ensemble chunks are dispatched to Celery workers."""
        return self.worker_backend.strip().lower() == "celery"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
