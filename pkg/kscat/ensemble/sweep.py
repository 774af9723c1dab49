"""Monte-Carlo K-factor sweep over the scenario's frequency grid."""

import logging

import numpy as np

from kscat.analytic import population_count, sigma_avg
from kscat.analytic.sweep import analytic_rows
from kscat.config import get_settings
from kscat.core import ScenarioConfig, ScenarioError, SweepRow, SweepTable, effective_seed
from kscat.ensemble.cloud import sample_cloud
from kscat.ensemble.estimate import estimate_k
from kscat.ensemble.rng import RngStream
from kscat.ensemble.voltage import receive_voltage
from kscat.worker.pool import run_tasks

logger = logging.getLogger(__name__)

MC_TASK = "kscat.worker.tasks.mc_chunk_task"


def chunk_bounds(total: int, size: int) -> list[tuple[int, int]]:
    """Split [0, total) into consecutive [start, stop) ranges of at most ``size``."""
    size = max(1, size)
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def simulate_mc_chunk(payload: dict) -> dict:
    """
    Received samples for ensemble indices [start, stop) at every frequency.

    The cloud of index m comes from RngStream(seed, m) and is shared by all
    frequencies; a frequency with fewer scatterers uses a prefix of it.
    """
    config = ScenarioConfig.model_validate(payload["config"])
    seed, start, stop = payload["seed"], payload["start"], payload["stop"]
    counts = payload["counts"]
    frequencies = config.frequencies
    n_max = max(counts)

    samples = np.empty((len(frequencies), stop - start), dtype=complex)
    redraws = 0
    for j, index in enumerate(range(start, stop)):
        cloud = sample_cloud(config, RngStream(seed, index), n_s=n_max)
        redraws += cloud.redraws
        for i, (f, n_s) in enumerate(zip(frequencies, counts)):
            sub = cloud if n_s == n_max else cloud.take(n_s)
            samples[i, j] = receive_voltage(sub, config, f).v

    return {"re": samples.real.tolist(), "im": samples.imag.tolist(), "redraws": redraws}


def collect_samples(results: list[dict]) -> np.ndarray:
    """Concatenate chunk results in index order into a (frequencies, M) array."""
    blocks = [np.asarray(r["re"]) + 1j * np.asarray(r["im"]) for r in results]
    return np.concatenate(blocks, axis=1)


def mc_sweep(
    config: ScenarioConfig, *, seed: int | None = None, workers: int | None = None
) -> SweepTable:
    """
    Monte-Carlo K-factor at every frequency of a scenario.

    Args:
        config: Scenario (ensembles M taken from it)
        seed: Seed override; see ``effective_seed``
        workers: Process count override

    Returns:
        SweepTable with analytic and ``mc`` rows per frequency
    """
    settings = get_settings()
    seed = effective_seed(config, seed)
    frequencies = config.frequencies
    counts = [population_count(config, f) for f in frequencies]
    n_max = max(counts)
    if config.ensembles < 2:
        raise ScenarioError("At least 2 ensembles are needed to estimate K")
    if n_max > settings.mc_max_scatterers:
        raise ScenarioError(
            f"{n_max} scatterers exceed KSCAT_MC_MAX_SCATTERERS={settings.mc_max_scatterers}"
        )

    logger.info(
        f"MC sweep: {len(frequencies)} frequencies, M={config.ensembles}, "
        f"N_s up to {n_max}, seed={seed}"
    )
    payload = {"config": config.model_dump(mode="json"), "seed": seed, "counts": counts}
    payloads = [
        {**payload, "start": start, "stop": stop}
        for start, stop in chunk_bounds(config.ensembles, settings.ensemble_chunk_size)
    ]
    results = run_tasks(simulate_mc_chunk, payloads, task_name=MC_TASK, workers=workers)
    samples = collect_samples(results)
    redraws = sum(r["redraws"] for r in results)

    rows = analytic_rows(config, seed)
    for i, f in enumerate(frequencies):
        estimate = estimate_k(samples[i])
        if estimate.deterministic:
            logger.warning(f"No scattered power at {f.ghz:g} GHz; K reported as inf")
        rows.append(SweepRow(
            frequency_hz=f.value,
            method="mc",
            k_linear=estimate.k_linear,
            k_db=estimate.k_db,
            stderr_db=estimate.stderr_db,
            n_s=counts[i],
            r_s_m=config.geometry.analysis_radius,
            sigma_avg_m2=sigma_avg(config.scatterer, f),
            ensembles=estimate.samples,
            seed=seed,
        ))

    return SweepTable(tuple(rows), {"radius_redraws": redraws})
