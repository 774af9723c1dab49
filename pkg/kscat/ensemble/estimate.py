"""Moment estimator of the Rician K-factor."""

import logging
from collections.abc import Sequence

import numpy as np

from kscat.core import KFactorEstimate
from kscat.ensemble.voltage import SignalSample

logger = logging.getLogger(__name__)


def as_array(samples: Sequence[SignalSample] | np.ndarray) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return samples.astype(complex, copy=False).reshape(-1)
    return np.fromiter((s.v for s in samples), dtype=complex, count=len(samples))


def estimate_k(samples: Sequence[SignalSample] | np.ndarray) -> KFactorEstimate:
    """
    Estimate K from complex samples: K = |<v>|^2 / (<|v|^2> - |<v>|^2).

    The standard error is a delete-one jackknife of K in dB. When the
    scattered power is below machine epsilon times the total power the
    estimate is flagged deterministic and K is reported as +inf.

    Args:
        samples: SignalSample sequence or complex array (at least two)

    Returns:
        KFactorEstimate
    """
    v = as_array(samples)
    n = v.size
    if n < 2:
        raise ValueError(f"estimate_k needs at least 2 samples, got {n}")

    mean = v.mean()
    power = float(np.mean(np.abs(v) ** 2))
    residual = np.abs(v - mean) ** 2
    scattered = float(residual.mean())
    los = abs(mean) ** 2

    if scattered <= np.finfo(float).eps * power:
        logger.debug(f"Deterministic samples (scattered {scattered:.3g}, total {power:.3g})")
        return KFactorEstimate(np.inf, power, 0.0, n, deterministic=True)

    k = los / scattered

    # Delete-one estimates
    loo_mean = (n * mean - v) / (n - 1)
    loo_scattered = (n * scattered - residual * n / (n - 1)) / (n - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        loo_db = 10.0 * np.log10(np.abs(loo_mean) ** 2 / loo_scattered)
    if np.all(np.isfinite(loo_db)):
        spread = np.sum((loo_db - loo_db.mean()) ** 2)
        stderr_db = float(np.sqrt((n - 1) / n * spread))
    else:
        stderr_db = float("inf")

    return KFactorEstimate(float(k), power, stderr_db, n)
