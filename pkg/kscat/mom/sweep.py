"""Full-wave K-factor sweep: ensembles of wire clouds solved by MoM."""

import logging
import math
from pathlib import Path

import numpy as np

from kscat.analytic import population_count, primary_method, sigma_avg
from kscat.analytic.sweep import analytic_rows
from kscat.config import get_settings
from kscat.core import (
    Frequency,
    ImpedanceLoad,
    InVolumeDipole,
    MatchedLoad,
    ScenarioConfig,
    ScenarioError,
    SweepRow,
    SweepTable,
    effective_seed,
)
from kscat.ensemble.cloud import sample_cloud
from kscat.ensemble.estimate import estimate_k
from kscat.ensemble.rng import RngStream
from kscat.ensemble.sweep import chunk_bounds, collect_samples
from kscat.mom.assemble import assemble
from kscat.mom.dump import write_container
from kscat.mom.excitation import GapFedDipole, PlaneWave, Source
from kscat.mom.mesh import WireMesh, mesh_ensemble, wire_length
from kscat.mom.solver import excited, matched_load, received_field, solve
from kscat.worker.pool import run_tasks

logger = logging.getLogger(__name__)

MOM_TASK = "kscat.worker.tasks.mom_chunk_task"


def scenario_source(config: ScenarioConfig) -> Source:
    if isinstance(config.geometry.tx_placement, InVolumeDipole):
        return GapFedDipole()
    return PlaneWave()


def scenario_loads(config: ScenarioConfig, mesh: WireMesh, f: Frequency) -> np.ndarray:
    """Per-wire lumped loads; the transmitting wire is never loaded."""
    load = config.scatterer.load
    loads = np.zeros(mesh.n_wires, dtype=complex)
    if load is None:
        return loads
    if isinstance(load, ImpedanceLoad):
        z_load = load.impedance
    else:
        assert isinstance(load, MatchedLoad)
        z_load = matched_load(f, n_seg=mesh.n_seg, length=mesh.length)
    loads[mesh.scatterer_wires] = z_load
    return loads


def simulate_mom_chunk(payload: dict) -> dict:
    """
    Received fields for ensemble indices [start, stop) at every frequency.

    Positions come from the same streams as the Monte-Carlo simulator, so
    realization m shares its cloud across frequencies.
    """
    settings = get_settings()
    config = ScenarioConfig.model_validate(payload["config"])
    seed, start, stop = payload["seed"], payload["start"], payload["stop"]
    counts = payload["counts"]
    n_seg = payload.get("n_seg") or settings.mom_segments
    frequencies = config.frequencies
    n_max = max(counts)
    source = scenario_source(config)
    dump_dir = Path(settings.mom_dump_dir) if settings.mom_dump_dir else None

    samples = np.empty((len(frequencies), stop - start), dtype=complex)
    overlap = radius = 0
    for j, index in enumerate(range(start, stop)):
        stream = RngStream(seed, index)
        cloud = sample_cloud(config, stream, n_s=n_max)
        radius += cloud.redraws
        for i, (f, n_s) in enumerate(zip(frequencies, counts)):
            mesh = mesh_ensemble(
                cloud.take(n_s), config, f, rng=stream.generator(purpose=i + 1), n_seg=n_seg
            )
            overlap += mesh.overlap_redraws
            system = excited(assemble(mesh, f), mesh, source).with_loads(
                scenario_loads(config, mesh, f)
            )
            currents = solve(system, mesh)
            samples[i, j] = received_field(system, mesh, currents)
            if dump_dir is not None:
                write_container(
                    dump_dir / f"kmom_{seed}_{index}_{i}.bin",
                    {"z": system.z, "v": system.v, "i": currents, "centers": mesh.centers,
                     "frequency_hz": np.array([f.value])},
                )

    return {
        "re": samples.real.tolist(),
        "im": samples.imag.tolist(),
        "overlap_redraws": overlap,
        "radius_redraws": radius,
    }


def mom_k_sweep(
    config: ScenarioConfig,
    *,
    seed: int | None = None,
    workers: int | None = None,
    n_seg: int | None = None,
) -> SweepTable:
    """
    MoM-estimated K at every frequency of a scenario.

    Each of the M realizations is meshed, assembled and solved independently;
    K is estimated over the received vertical fields.

    Args:
        config: Scenario (dipole scatterers)
        seed: Seed override
        workers: Process count override
        n_seg: Segments per wire override

    Returns:
        SweepTable with analytic and ``mom`` rows per frequency
    """
    settings = get_settings()
    seed = effective_seed(config, seed)
    frequencies = config.frequencies
    counts = [population_count(config, f) for f in frequencies]
    n_max = max(counts)
    if config.ensembles < 2:
        raise ScenarioError("At least 2 ensembles are needed to estimate K")
    if n_max > settings.mom_max_scatterers:
        raise ScenarioError(
            f"{n_max} scatterers exceed KSCAT_MOM_MAX_SCATTERERS={settings.mom_max_scatterers}"
        )
    for f in frequencies:
        wire_length(config, f)

    logger.info(
        f"MoM sweep: {len(frequencies)} frequencies, M={config.ensembles}, "
        f"N_s up to {n_max}, seed={seed}"
    )
    payload = {
        "config": config.model_dump(mode="json"),
        "seed": seed,
        "counts": counts,
        "n_seg": n_seg,
    }
    payloads = [
        {**payload, "start": start, "stop": stop}
        for start, stop in chunk_bounds(config.ensembles, settings.ensemble_chunk_size)
    ]
    results = run_tasks(simulate_mom_chunk, payloads, task_name=MOM_TASK, workers=workers)
    samples = collect_samples(results)

    rows = analytic_rows(config, seed)
    for i, f in enumerate(frequencies):
        estimate = estimate_k(samples[i])
        rows.append(SweepRow(
            frequency_hz=f.value,
            method="mom",
            k_linear=estimate.k_linear,
            k_db=estimate.k_db,
            stderr_db=estimate.stderr_db,
            n_s=counts[i],
            r_s_m=config.geometry.analysis_radius,
            sigma_avg_m2=sigma_avg(config.scatterer, f),
            ensembles=estimate.samples,
            seed=seed,
        ))

    table = SweepTable(tuple(rows))
    metadata = {
        "overlap_redraws": sum(r["overlap_redraws"] for r in results),
        "radius_redraws": sum(r["radius_redraws"] for r in results),
    }
    rms = table.rms_deviation_db(primary_method(config).value, "mom")
    if math.isfinite(rms):
        metadata["rms_deviation_db"] = rms
        logger.info(f"Analytic vs MoM RMS deviation: {rms:.2f} dB")
    return SweepTable(table.rows, metadata)
