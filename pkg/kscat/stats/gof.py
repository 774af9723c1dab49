"""Kolmogorov-Smirnov distance against the Rician envelope distribution."""

import numpy as np
from scipy import stats

from kscat.analytic.rician import RicianParams, rician_cdf


def ks_distance(envelopes, params: RicianParams) -> float:
    """Sup-norm distance between the empirical CDF of ``envelopes`` and the Rician CDF."""
    x = np.sort(np.asarray(envelopes, dtype=float).reshape(-1))
    if x.size == 0:
        return 0.0
    return float(stats.kstest(x, lambda t: rician_cdf(t, params)).statistic)


def ks_critical_value(n: int, alpha: float = 0.01) -> float:
    """Exact one-sample KS critical value at significance ``alpha``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return float(stats.kstwo.isf(alpha, n))
