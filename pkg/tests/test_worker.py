"""Tests for chunk dispatch and the Celery task wrappers."""

import pytest
from conftest import make_scenario

from kscat.ensemble import simulate_mc_chunk
from kscat.worker import run_tasks


def chunk_payloads(seed: int = 3) -> list[dict]:
    config = make_scenario(population={"kind": "fixed_count", "n_s": 10},
                           frequencies_hz=(1e9, 2e9), ensembles=40)
    base = {"config": config.model_dump(mode="json"), "seed": seed, "counts": [10, 10]}
    return [{**base, "start": start, "stop": start + 10} for start in range(0, 40, 10)]


def test_inline_results_keep_payload_order():
    payloads = chunk_payloads()
    results = run_tasks(simulate_mc_chunk, payloads, workers=1)
    assert len(results) == 4
    assert results == [simulate_mc_chunk(p) for p in payloads]


def test_process_pool_matches_inline():
    payloads = chunk_payloads()
    assert run_tasks(simulate_mc_chunk, payloads, workers=2) == run_tasks(
        simulate_mc_chunk, payloads, workers=1
    )


def test_celery_backend_needs_task_name(settings_env):
    settings_env(worker_backend="celery")
    with pytest.raises(ValueError, match="task name"):
        run_tasks(simulate_mc_chunk, chunk_payloads())


def test_task_routes():
    from kscat.worker.celery_app import celery_app

    routes = celery_app.conf.task_routes
    assert routes["kscat.worker.tasks.mc_chunk_task"] == {"queue": "mc"}
    assert routes["kscat.worker.tasks.mom_chunk_task"] == {"queue": "mom"}
    assert celery_app.conf.task_serializer == "json"
    assert celery_app.conf.worker_max_tasks_per_child == 50


def test_mc_task_runs_eagerly():
    from kscat.worker.celery_app import celery_app  # noqa: F401
    from kscat.worker.tasks import mc_chunk_task

    payload = chunk_payloads()[1]
    assert mc_chunk_task.apply(args=(payload,)).get() == simulate_mc_chunk(payload)
