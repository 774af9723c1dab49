"""Closed-form K-factor, power, packing and cross-section formulas."""

import logging
import math

import numpy as np
from scipy.constants import physical_constants
from scipy.special import sici

logger = logging.getLogger(__name__)

# Free-space wave impedance (ohm)
ETA0 = physical_constants["characteristic impedance of vacuum"][0]

# Fit coefficients of the spatially averaged dipole cross-section
_XSEC_SLOPE = 1.178
_XSEC_LOG = 0.179
_XSEC_OFFSET = 0.131
_XSEC_SCALE = 22.368


class DomainError(ValueError):
    """A closed form evaluated outside the domain where it is defined."""


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0.0:
            raise DomainError(f"{name} must be positive, got {value!r}")


def avg_dipole_xsec(l_over_lambda: float) -> float:
    """
    Spatially averaged scattering cross-section of a thin dipole.

    Args:
        l_over_lambda: Dipole length in wavelengths

    Returns:
        <sigma> / lambda^2
    """
    _require_positive(l_over_lambda=l_over_lambda)
    arg = _XSEC_SCALE * l_over_lambda
    if arg <= 1.0:
        raise DomainError(
            f"L/lambda={l_over_lambda} too short: log argument {arg:.4g} must exceed 1"
        )
    log_term = math.log(arg)
    return (_XSEC_SLOPE * l_over_lambda + _XSEC_LOG * log_term - _XSEC_OFFSET) / log_term**2


def far_field_distance(wavelength: float, gain: float, gamma_a: float, alpha_e: float) -> float:
    """
    Distance beyond which an antenna of gain ``gain`` is in its far field.

    ``gamma_a`` is the accepted fraction of the asymptotic gain and
    ``alpha_e`` the empirical fitting coefficient shared by all antennas.
    """
    _require_positive(wavelength=wavelength, gain=gain, gamma_a=gamma_a, alpha_e=alpha_e)
    if gamma_a >= 1.0:
        raise DomainError(f"gamma_a must be below 1, got {gamma_a}")
    return (4.0 * wavelength * gain / math.pi**2) * math.sqrt(alpha_e / (1.0 - gamma_a))


def max_packed_count(r_s: float, r_ff: float, eta_pack: float) -> int:
    """Number of far-field spheres of radius r_ff/2 that fit in a sphere of radius r_s."""
    _require_positive(r_s=r_s, r_ff=r_ff)
    if eta_pack < 0.0:
        raise DomainError(f"eta_pack must be non-negative, got {eta_pack}")
    count = math.floor(8.0 * eta_pack * (r_s / r_ff) ** 3)
    if count < 1:
        logger.warning(
            f"No scatterer fits at far-field spacing (R_s={r_s} m, R_FF={r_ff} m, "
            f"eta_pack={eta_pack})"
        )
        return 0
    return count


def packed_density(r_ff: float, eta_pack: float) -> float:
    """Scatterer density (per m^3) of a far-field-spaced random close packing."""
    _require_positive(r_ff=r_ff)
    return 6.0 * eta_pack / (math.pi * r_ff**3)


def k_fixed_count(d_or: float, r_s: float, n_s: float, sigma_avg: float) -> float:
    """K-factor of N_s scatterers spread uniformly in a sphere of radius R_s."""
    _require_positive(d_or=d_or, r_s=r_s, n_s=n_s, sigma_avg=sigma_avg)
    return 8.0 * math.pi * d_or * r_s**2 / (3.0 * n_s * sigma_avg)


def k_fixed_density(d_or: float, rho_s: float, r_s: float, sigma_avg: float) -> float:
    """K-factor at constant scatterer density rho_s (per m^3)."""
    _require_positive(d_or=d_or, rho_s=rho_s, r_s=r_s, sigma_avg=sigma_avg)
    return 2.0 * d_or / (rho_s * r_s * sigma_avg)


def k_lower_bound(
    d_or: float, r_ff: float, r_s: float, sigma_avg: float, eta_pack: float
) -> float:
    """Lowest K reachable when the sphere is packed at far-field spacing."""
    _require_positive(d_or=d_or, r_ff=r_ff, r_s=r_s, sigma_avg=sigma_avg, eta_pack=eta_pack)
    return math.pi * d_or * r_ff**3 / (3.0 * eta_pack * r_s * sigma_avg)


def los_power(wavelength: float, r_o: float, g_or: float, g_ot: float, p_t: float) -> float:
    """Friis power of the direct wave (W)."""
    _require_positive(wavelength=wavelength, r_o=r_o, g_or=g_or, g_ot=g_ot, p_t=p_t)
    return (wavelength / (4.0 * math.pi * r_o)) ** 2 * g_or * g_ot * p_t


def rimp_power(
    n_s: float,
    r_s: float,
    wavelength: float,
    r_o: float,
    e_r: float,
    g_ot: float,
    sigma_avg: float,
    p_t: float,
) -> float:
    """Mean power (W) received from N_s scatterers with random phases and polarizations."""
    if n_s == 0:
        return 0.0
    _require_positive(
        n_s=n_s, r_s=r_s, wavelength=wavelength, r_o=r_o, e_r=e_r, g_ot=g_ot,
        sigma_avg=sigma_avg, p_t=p_t,
    )
    friis = (wavelength / (4.0 * math.pi * r_o)) ** 2
    return (3.0 * n_s / (4.0 * math.pi * r_s**2)) * friis * (e_r / 2.0) * g_ot * sigma_avg * p_t


def dipole_induced_emf_impedance(l_over_lambda: float, a_over_lambda: float) -> complex:
    """
    Center-fed input impedance of a thin dipole by the induced-EMF method.

    Assumes a sinusoidal current. The mutual-impedance expressions give the
    impedance at the current maximum; it is referred to the center feed by
    dividing by sin^2(kL/2).

    Args:
        l_over_lambda: Total length in wavelengths
        a_over_lambda: Wire radius in wavelengths

    Returns:
        Input impedance in ohms
    """
    _require_positive(l_over_lambda=l_over_lambda, a_over_lambda=a_over_lambda)
    kl = 2.0 * math.pi * l_over_lambda
    si_kl, ci_kl = sici(kl)
    si_2kl, ci_2kl = sici(2.0 * kl)
    _, ci_a = sici(2.0 * (2.0 * math.pi) * a_over_lambda**2 / l_over_lambda)
    gamma = np.euler_gamma

    resistance = ETA0 / (2.0 * math.pi) * (
        gamma + math.log(kl) - ci_kl
        + 0.5 * math.sin(kl) * (si_2kl - 2.0 * si_kl)
        + 0.5 * math.cos(kl) * (gamma + math.log(kl / 2.0) + ci_2kl - 2.0 * ci_kl)
    )
    reactance = ETA0 / (4.0 * math.pi) * (
        2.0 * si_kl
        + math.cos(kl) * (2.0 * si_kl - si_2kl)
        - math.sin(kl) * (2.0 * ci_kl - ci_2kl - ci_a)
    )
    feed = math.sin(kl / 2.0) ** 2
    if feed < 1e-12:
        raise DomainError(f"Center feed sits at a current null for L/lambda={l_over_lambda}")
    return complex(resistance, reactance) / feed


def antenna_mode_rcs(
    directivity: float, z_antenna: complex, z_load: complex, wavelength: float
) -> float:
    """
    Antenna-mode radar cross-section of a loaded minimum-scattering antenna (m^2).

    sigma = lambda^2 D^2 R_a^2 / (pi |Z_a + Z_L|^2)
    """
    _require_positive(directivity=directivity, wavelength=wavelength)
    total = z_antenna + z_load
    if abs(total) == 0.0:
        raise DomainError("Antenna and load impedances cancel")
    return wavelength**2 * directivity**2 * z_antenna.real**2 / (math.pi * abs(total) ** 2)
