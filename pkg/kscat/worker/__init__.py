"""Worker pool for ensemble chunks."""

from kscat.worker.pool import run_tasks

__all__ = ["run_tasks"]
