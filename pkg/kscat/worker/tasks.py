"""Celery tasks wrapping the ensemble chunk simulators."""

import logging

from celery import shared_task

from kscat.ensemble.sweep import simulate_mc_chunk
from kscat.mom.sweep import simulate_mom_chunk

logger = logging.getLogger(__name__)


@shared_task(bind=True, max_retries=2, default_retry_delay=10)
def mc_chunk_task(self, payload: dict) -> dict:
    """
    Simulate a range of Monte-Carlo ensemble indices.

    Args:
        payload: Chunk description built by ``mc_sweep``
    """
    logger.info(f"MC chunk [{payload['start']}, {payload['stop']})")
    try:
        return simulate_mc_chunk(payload)
    except MemoryError as e:
        logger.error(f"MC chunk ran out of memory: {e}")
        raise self.retry(exc=e)


@shared_task(bind=True, max_retries=2, default_retry_delay=10)
def mom_chunk_task(self, payload: dict) -> dict:
    """Solve a range of MoM ensemble realizations."""
    logger.info(f"MoM chunk [{payload['start']}, {payload['stop']})")
    try:
        return simulate_mom_chunk(payload)
    except MemoryError as e:
        logger.error(f"MoM chunk ran out of memory: {e}")
        raise self.retry(exc=e)
