"""Rician fitting and goodness-of-fit."""

from kscat.stats.fitting import (
    DegenerateSampleError,
    FitMethod,
    FitResult,
    fit_rician,
    invert_moment_ratio,
)
from kscat.stats.gof import ks_critical_value, ks_distance

__all__ = [
    "DegenerateSampleError",
    "FitMethod",
    "FitResult",
    "fit_rician",
    "invert_moment_ratio",
    "ks_critical_value",
    "ks_distance",
]
