"""Evaluate the closed forms for a whole scenario."""

import logging
import math
from enum import Enum

from kscat.analytic.formulas import (
    avg_dipole_xsec,
    far_field_distance,
    k_fixed_count,
    k_fixed_density,
    k_lower_bound,
    los_power,
    max_packed_count,
    rimp_power,
)
from kscat.core import (
    FixedCount,
    FixedCrossSection,
    FixedDensity,
    Frequency,
    GeometrySpec,
    MaxPacked,
    ScattererSpec,
    ScenarioConfig,
)

logger = logging.getLogger(__name__)

# Packing parameters used when the population does not define them
DEFAULT_PACKING = MaxPacked()


class AnalyticMethod(str, Enum):
    """Closed-form K model; values double as SweepTable method names."""
    FIXED_COUNT = "analytic_fixed_count"
    FIXED_DENSITY = "analytic_fixed_density"
    LOWER_BOUND = "analytic_lower_bound"


def analysis_radius(geometry: GeometrySpec) -> float:
    """R_s used by the closed forms (inscribed sphere for a cube)."""
    return geometry.analysis_radius


def sigma_avg(spec: ScattererSpec, f: Frequency) -> float:
    """Spatially averaged scattering cross-section (m^2) at frequency f."""
    if isinstance(spec.kind, FixedCrossSection):
        return spec.kind.sigma_m2
    return avg_dipole_xsec(spec.kind.l_over_lambda) * f.wavelength**2


def packing_of(config: ScenarioConfig) -> MaxPacked:
    if isinstance(config.population, MaxPacked):
        return config.population
    return DEFAULT_PACKING


def scatterer_far_field(config: ScenarioConfig, f: Frequency) -> float:
    packing = packing_of(config)
    return far_field_distance(f.wavelength, config.scatterer.gain, packing.gamma_a, packing.alpha_e)


def population_count(config: ScenarioConfig, f: Frequency) -> int:
    """Number of scatterers the population places in the region at frequency f."""
    population = config.population
    if isinstance(population, FixedCount):
        return population.n_s
    if isinstance(population, FixedDensity):
        return int(round(population.rho_s * config.geometry.volume))
    if population.reference_frequency_hz is not None:
        f = Frequency(population.reference_frequency_hz)
    return max_packed_count(
        config.geometry.analysis_radius, scatterer_far_field(config, f), population.eta_pack
    )


def population_density(config: ScenarioConfig, f: Frequency) -> float:
    """Scatterer density (per m^3) over the analysis sphere."""
    if isinstance(config.population, FixedDensity):
        return config.population.rho_s
    r_s = config.geometry.analysis_radius
    return 3.0 * population_count(config, f) / (4.0 * math.pi * r_s**3)


def primary_method(config: ScenarioConfig) -> AnalyticMethod:
    """The closed form that describes the population the simulators draw."""
    population = config.population
    if isinstance(population, FixedDensity):
        return AnalyticMethod.FIXED_DENSITY
    if isinstance(population, MaxPacked) and population.reference_frequency_hz is None:
        return AnalyticMethod.LOWER_BOUND
    return AnalyticMethod.FIXED_COUNT


def scenario_k(
    config: ScenarioConfig, f: Frequency, method: AnalyticMethod | None = None
) -> float:
    """
    Closed-form K of a scenario at one frequency.

    Args:
        config: Scenario
        f: Frequency
        method: Closed form to use (defaults to ``primary_method(config)``)

    Returns:
        K (linear); ``math.inf`` if the population is empty
    """
    method = method or primary_method(config)
    d_or = config.antenna.directivity_rx
    r_s = config.geometry.analysis_radius
    sigma = sigma_avg(config.scatterer, f)

    if method == AnalyticMethod.LOWER_BOUND:
        packing = packing_of(config)
        if packing.eta_pack == 0.0:
            return math.inf
        return k_lower_bound(d_or, scatterer_far_field(config, f), r_s, sigma, packing.eta_pack)

    n_s = population_count(config, f)
    if n_s == 0:
        return math.inf
    if method == AnalyticMethod.FIXED_DENSITY:
        return k_fixed_density(d_or, population_density(config, f), r_s, sigma)
    return k_fixed_count(d_or, r_s, n_s, sigma)


def scenario_powers(config: ScenarioConfig, f: Frequency) -> tuple[float, float]:
    """
    (P_LOS, P_RIMP) of a scenario at frequency f.

    In normalized-power mode P_LOS is 1 and P_RIMP is 1/K.
    """
    antenna = config.antenna
    n_s = population_count(config, f)
    if antenna.normalized_power:
        k = k_fixed_count(antenna.directivity_rx, config.geometry.analysis_radius,
                          max(n_s, 1), sigma_avg(config.scatterer, f))
        return 1.0, (1.0 / k if n_s else 0.0)
    r_o = config.geometry.los_distance_m
    p_los = los_power(f.wavelength, r_o, antenna.gain_rx, antenna.gain_tx, antenna.tx_power_w)
    p_rimp = rimp_power(
        n_s, config.geometry.analysis_radius, f.wavelength, r_o,
        antenna.radiation_efficiency, antenna.gain_tx, sigma_avg(config.scatterer, f),
        antenna.tx_power_w,
    )
    return p_los, p_rimp
