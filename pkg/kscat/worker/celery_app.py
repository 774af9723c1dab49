"""Celery application for distributed ensemble chunks."""

from celery import Celery

from kscat.config import get_settings

settings = get_settings()

celery_app = Celery(
    "kscat",
    broker=settings.redis_url,
    backend=settings.redis_url,
    include=["kscat.worker.tasks"],
)

# Chunk payloads and results are plain lists of floats
celery_app.conf.update(
    task_serializer="json",
    accept_content=["json"],
    result_serializer="json",
    timezone="UTC",
    enable_utc=True,

    # A lost worker must not drop realizations from a sweep
    task_acks_late=True,
    task_reject_on_worker_lost=True,
    worker_prefetch_multiplier=1,
    # Dense MoM matrices are released with the child process
    worker_max_tasks_per_child=settings.celery_max_tasks_per_child,

    result_expires=settings.celery_result_expires,

    task_routes={
        "kscat.worker.tasks.mc_chunk_task": {"queue": "mc"},
        "kscat.worker.tasks.mom_chunk_task": {"queue": "mom"},
    },
    task_default_queue="default",
)
