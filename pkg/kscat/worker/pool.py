"""Run independent ensemble chunks inline, on a process pool, or on Celery."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor

from kscat.config import get_settings

logger = logging.getLogger(__name__)


def run_tasks(
    fn: Callable[[dict], dict],
    payloads: Sequence[dict],
    *,
    task_name: str | None = None,
    workers: int | None = None,
) -> list[dict]:
    """
    Evaluate ``fn`` on every payload and return results in payload order.

    Args:
        fn: Chunk function (must be picklable for the process pool)
        payloads: JSON-serializable chunk descriptions
        task_name: Registered Celery task used when the celery backend is set
        workers: Process count override; defaults to ``Settings.workers``

    Returns:
        Results, one per payload, in the same order
    """
    settings = get_settings()
    workers = settings.workers if workers is None else workers

    if settings.uses_celery:
        if task_name is None:
            raise ValueError("A Celery task name is required for the celery backend")
        from celery import group

        from kscat.worker.celery_app import celery_app

        logger.info(f"Dispatching {len(payloads)} chunk(s) to Celery task {task_name}")
        job = group(celery_app.signature(task_name, args=(p,)) for p in payloads)
        return job.apply_async().get()

    if workers <= 1 or len(payloads) <= 1:
        return [fn(p) for p in payloads]

    logger.info(f"Running {len(payloads)} chunk(s) on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, payloads))
