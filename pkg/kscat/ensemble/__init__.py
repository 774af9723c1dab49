"""Monte-Carlo simulation of the single-scattering voltage model."""

from kscat.ensemble.cloud import sample_cloud
from kscat.ensemble.estimate import estimate_k
from kscat.ensemble.rng import RngStream
from kscat.ensemble.sweep import mc_sweep, simulate_mc_chunk
from kscat.ensemble.voltage import (
    SignalSample,
    direct_amplitude,
    receive_voltage,
    scatter_amplitude,
)

__all__ = [
    "RngStream",
    "SignalSample",
    "direct_amplitude",
    "estimate_k",
    "mc_sweep",
    "receive_voltage",
    "sample_cloud",
    "scatter_amplitude",
    "simulate_mc_chunk",
]
