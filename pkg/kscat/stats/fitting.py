"""Rician parameter fitting from envelope samples."""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import bisect, minimize_scalar
from scipy.special import i0e

from kscat.analytic.rician import RicianParams, rician_moment_ratio
from kscat.stats.gof import ks_distance

logger = logging.getLogger(__name__)

K_MAX = 1e8
MIN_SAMPLES = 100
RAYLEIGH_RATIO = math.pi / 4.0


class DegenerateSampleError(ValueError):
    """Envelope samples without measurable spread."""


class FitMethod(str, Enum):
    """How the Rician parameters were obtained."""
    MOMENTS = "moments"
    MAX_LIKELIHOOD_GRID = "max_likelihood_grid"


@dataclass(frozen=True)
class FitResult:
    params: RicianParams
    method: FitMethod
    gof_statistic: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.gof_statistic <= 1.0:
            raise ValueError(f"KS distance must lie in [0, 1], got {self.gof_statistic}")


def invert_moment_ratio(ratio: float) -> float:
    """
    K whose moment ratio <|v|>^2/<|v|^2> equals ``ratio``.

    Bisection on [0, 1e8] to 1e-10 relative; ratios at or below the Rayleigh
    value pi/4 give K = 0 and ratios beyond the bracket give 1e8.
    """
    if ratio <= RAYLEIGH_RATIO:
        return 0.0
    if ratio >= rician_moment_ratio(K_MAX):
        return K_MAX
    return bisect(
        lambda k: rician_moment_ratio(k) - ratio, 0.0, K_MAX, xtol=1e-300, rtol=1e-10, maxiter=1000
    )


def _log_likelihood(k: float, p_r: float, x: np.ndarray) -> float:
    z = 2.0 * math.sqrt(k * (1.0 + k) / p_r) * x
    return float(np.sum(
        np.log(2.0 * (1.0 + k) * x / p_r) - k - (k + 1.0) * x**2 / p_r + z + np.log(i0e(z))
    ))


def _ml_polish(x: np.ndarray, k0: float, p_r: float) -> float:
    """Grid search around the moment estimate followed by a bounded 1-D maximization."""
    positive = x[x > 0.0]
    upper = max(10.0 * (k0 + 1.0), 1.0)
    grid = np.linspace(0.0, upper, 201)
    values = [_log_likelihood(k, p_r, positive) for k in grid]
    best = int(np.argmax(values))
    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, grid.size - 1)]
    if hi <= lo:
        return float(grid[best])
    result = minimize_scalar(
        lambda k: -_log_likelihood(k, p_r, positive), bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-10 * max(hi, 1.0)},
    )
    return float(result.x)


def fit_rician(envelopes, *, ml: bool = False) -> FitResult:
    """
    Fit (K, P_r) to envelope samples |v|.

    P_r is the mean square envelope; K solves the moment ratio
    <|v|>^2/<|v|^2>. With ``ml`` the K estimate is refined by maximum
    likelihood at fixed P_r.

    Args:
        envelopes: Non-negative envelope samples (n >= 100)
        ml: Apply the grid-refined maximum-likelihood polish

    Returns:
        FitResult including the KS distance to the fitted distribution
    """
    x = np.asarray(envelopes, dtype=float).reshape(-1)
    if x.size < MIN_SAMPLES:
        raise ValueError(f"fit_rician needs at least {MIN_SAMPLES} samples, got {x.size}")
    if np.any(x < 0.0) or not np.all(np.isfinite(x)):
        raise ValueError("Envelopes must be finite and non-negative")

    p_r = float(np.mean(x**2))
    mean = float(np.mean(x))
    if p_r <= 0.0 or float(np.var(x)) <= np.finfo(float).eps * p_r:
        raise DegenerateSampleError("Envelope samples have no spread")

    k = invert_moment_ratio(mean**2 / p_r)
    method = FitMethod.MOMENTS
    if ml:
        k = _ml_polish(x, k, p_r)
        method = FitMethod.MAX_LIKELIHOOD_GRID
    params = RicianParams(k, p_r)
    logger.debug(f"Rician fit ({method.value}): K={k:.6g}, P_r={p_r:.6g}, n={x.size}")
    return FitResult(params, method, ks_distance(x, params), int(x.size))
