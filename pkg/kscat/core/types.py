"""Immutable value objects shared by every module."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import c as C0

__all__ = ["C0", "Frequency", "KFactorEstimate", "ScattererCloud", "to_db"]


def to_db(value: float) -> float:
    """Convert a linear power ratio to decibels (0 -> -inf, inf -> inf)."""
    if value == 0.0:
        return -math.inf
    if math.isinf(value):
        return math.inf
    return 10.0 * math.log10(value)


@dataclass(frozen=True, order=True)
class Frequency:
    """A strictly positive frequency in hertz."""
    value: float

    def __post_init__(self):
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise ValueError(f"Frequency must be positive and finite, got {self.value!r}")

    @classmethod
    def from_ghz(cls, ghz: float) -> "Frequency":
        return cls(float(ghz) * 1e9)

    @property
    def ghz(self) -> float:
        return self.value / 1e9

    @property
    def wavelength(self) -> float:
        """Free-space wavelength in meters."""
        return C0 / self.value

    @property
    def wavenumber(self) -> float:
        """Free-space wavenumber k = 2*pi/lambda in rad/m."""
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class KFactorEstimate:
    """
    Estimated Rician K-factor with total power and uncertainty.

    ``k_linear`` is ``math.inf`` when the samples carry no measurable
    scattered power; ``deterministic`` is set in that case.
    """
    k_linear: float
    total_power: float
    stderr_db: float
    samples: int
    deterministic: bool = False

    def __post_init__(self):
        if not self.k_linear >= 0.0:
            raise ValueError(f"K must be non-negative, got {self.k_linear!r}")
        if not self.stderr_db >= 0.0:
            raise ValueError(f"stderr_db must be non-negative, got {self.stderr_db!r}")
        if self.samples < 0:
            raise ValueError(f"samples must be non-negative, got {self.samples}")

    @property
    def k_db(self) -> float:
        return to_db(self.k_linear)


def _frozen(array: np.ndarray, dtype=float) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True).reshape(-1)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ScattererCloud:
    """
    One random realization of scatterer positions and polarization mismatch.

    Positions are spherical coordinates about the receiver at the origin:
    ``rho`` (m), ``theta`` (polar, rad), ``phi`` (azimuth, rad). ``psi`` is
    the polarization mismatch angle of each scattered wave at the receiver.
    """
    rho: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    redraws: int = field(default=0, compare=False)

    def __post_init__(self):
        for name in ("rho", "theta", "phi", "psi"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        n = self.rho.size
        if not (self.theta.size == self.phi.size == self.psi.size == n):
            raise ValueError("ScattererCloud arrays must have equal lengths")

    @classmethod
    def empty(cls) -> "ScattererCloud":
        return cls(np.empty(0), np.empty(0), np.empty(0), np.empty(0))

    @classmethod
    def from_cartesian(
        cls, xyz: np.ndarray, psi: np.ndarray, redraws: int = 0
    ) -> "ScattererCloud":
        xyz = np.asarray(xyz, dtype=float).reshape(-1, 3)
        rho = np.linalg.norm(xyz, axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            cos_theta = np.where(rho > 0.0, xyz[:, 2] / np.where(rho > 0.0, rho, 1.0), 1.0)
        theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
        phi = np.mod(np.arctan2(xyz[:, 1], xyz[:, 0]), 2.0 * np.pi)
        phi = np.where(phi >= 2.0 * np.pi, 0.0, phi)
        return cls(rho, theta, phi, psi, redraws=redraws)

    @property
    def n_s(self) -> int:
        return int(self.rho.size)

    def take(self, n: int) -> "ScattererCloud":
        """Return the cloud made of the first ``n`` scatterers."""
        if n > self.n_s:
            raise ValueError(f"Cannot take {n} scatterers from a cloud of {self.n_s}")
        return ScattererCloud(
            self.rho[:n], self.theta[:n], self.phi[:n], self.psi[:n], redraws=self.redraws
        )

    def cartesian(self) -> np.ndarray:
        """Scatterer positions as an (N, 3) array in meters."""
        sin_t = np.sin(self.theta)
        return np.column_stack(
            (
                self.rho * sin_t * np.cos(self.phi),
                self.rho * sin_t * np.sin(self.phi),
                self.rho * np.cos(self.theta),
            )
        )
