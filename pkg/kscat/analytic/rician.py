"""Rician envelope distribution in the (K, P_r) parameterization."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import i0e, i1e


@dataclass(frozen=True)
class RicianParams:
    """K-factor and total power P_r = <|v|^2> of a Rician envelope."""
    k: float
    p_r: float

    def __post_init__(self):
        if not (self.k >= 0.0 and math.isfinite(self.k)):
            raise ValueError(f"K must be finite and non-negative, got {self.k!r}")
        if not (self.p_r > 0.0 and math.isfinite(self.p_r)):
            raise ValueError(f"P_r must be positive, got {self.p_r!r}")

    @property
    def los_amplitude(self) -> float:
        """Magnitude of the deterministic component."""
        return math.sqrt(self.k * self.p_r / (self.k + 1.0))

    @property
    def scatter_sigma(self) -> float:
        """Per-quadrature standard deviation of the diffuse component."""
        return math.sqrt(self.p_r / (2.0 * (self.k + 1.0)))

    def frozen(self):
        """Equivalent frozen scipy.stats.rice distribution."""
        return stats.rice(math.sqrt(2.0 * self.k), scale=self.scatter_sigma)


def rician_pdf(x, params: RicianParams):
    """
    Rician envelope density.

    The Bessel factor is evaluated as exp(-z) I0(z) and the exp(z) is folded
    into the exponent so large K does not overflow.
    """
    x = np.asarray(x, dtype=float)
    k, p = params.k, params.p_r
    xs = np.clip(x, 0.0, None)
    z = 2.0 * math.sqrt(k * (1.0 + k) / p) * xs
    exponent = -k - (k + 1.0) * xs**2 / p + z
    pdf = 2.0 * (1.0 + k) * xs / p * np.exp(exponent) * i0e(z)
    pdf = np.where(x < 0.0, 0.0, pdf)
    return pdf if pdf.ndim else float(pdf)


def rician_cdf(x, params: RicianParams):
    """Rician envelope CDF (noncentral chi-square form via scipy)."""
    return params.frozen().cdf(x)


def rician_samples(params: RicianParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` complex samples v = nu + CN(0, P_r/(K+1))."""
    sigma = params.scatter_sigma
    diffuse = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return params.los_amplitude + sigma * diffuse


def rician_moment_ratio(k):
    """
    <|v|>^2 / <|v|^2> as a function of K.

    pi/4 at K = 0 (Rayleigh), increasing monotonically to 1 as K grows.
    """
    k = np.asarray(k, dtype=float)
    half = k / 2.0
    bracket = (1.0 + k) * i0e(half) + k * i1e(half)
    ratio = math.pi / (4.0 * (k + 1.0)) * bracket**2
    return ratio if ratio.ndim else float(ratio)
