"""Single-scattering open-circuit voltage model."""

import math
from dataclasses import dataclass

import numpy as np

from kscat.analytic import los_power, sigma_avg
from kscat.core import Frequency, InVolumeDipole, ScattererCloud, ScenarioConfig


@dataclass(frozen=True)
class SignalSample:
    """Received complex amplitude, normalized so that P_LOS = |v_d|^2."""
    v: complex

    def __post_init__(self):
        if not (math.isfinite(self.v.real) and math.isfinite(self.v.imag)):
            raise ValueError(f"Non-finite signal sample {self.v!r}")


def direct_amplitude(config: ScenarioConfig, f: Frequency) -> float:
    """|v_d|: 1 in normalized-power mode, sqrt(P_LOS) otherwise."""
    antenna = config.antenna
    if antenna.normalized_power:
        return 1.0
    return math.sqrt(los_power(
        f.wavelength, config.geometry.los_distance_m, antenna.gain_rx,
        antenna.gain_tx, antenna.tx_power_w,
    ))


def scatter_amplitude(config: ScenarioConfig, f: Frequency) -> float:
    """
    Per-scatterer amplitude A = |v_d| sqrt(<sigma>/(4 pi D_or)).

    With <cos^2 psi> = 1/2 and <1/rho^2> = 3/R_s^2 the mean scattered power is
    N_s A^2 3/(2 R_s^2), which makes the ensemble K equal to
    8 pi D_or R_s^2 / (3 N_s <sigma>).
    """
    sigma = sigma_avg(config.scatterer, f)
    d_or = config.antenna.directivity_rx
    return direct_amplitude(config, f) * math.sqrt(sigma / (4.0 * math.pi * d_or))


def scattered_sum(cloud: ScattererCloud, config: ScenarioConfig, f: Frequency) -> complex:
    """Sum over scatterers of cos(psi) e^(-j k path) / rho, relative to the direct path."""
    if cloud.n_s == 0:
        return 0j
    k = f.wavenumber
    placement = config.geometry.tx_placement
    if isinstance(placement, InVolumeDipole):
        r_t = placement.r_t_m
        xyz = cloud.cartesian()
        r_tn = np.linalg.norm(xyz - np.array([r_t, 0.0, 0.0]), axis=1)
        terms = (r_t / r_tn) * np.exp(-1j * k * (r_tn + cloud.rho - r_t)) / cloud.rho
    else:
        terms = np.exp(-1j * k * cloud.rho * (1.0 - np.cos(cloud.theta))) / cloud.rho
    return complex(np.sum(np.cos(cloud.psi) * terms))


def receive_voltage(cloud: ScattererCloud, config: ScenarioConfig, f: Frequency) -> SignalSample:
    """
    Received amplitude v = v_d + A sum_n cos(psi_n) e^(-j k rho_n (1 - cos theta_n)) / rho_n.

    For a transmitter inside the region the plane-wave phase is replaced by
    the spherical path r_tn + rho_n - R_t and each term is scaled by R_t/r_tn.
    """
    if cloud.n_s and np.any(cloud.rho <= 0.0):
        raise ValueError("Scatterer located on the receiver; redraw the cloud")
    v_d = direct_amplitude(config, f)
    return SignalSample(v_d + scatter_amplitude(config, f) * scattered_sum(cloud, config, f))
