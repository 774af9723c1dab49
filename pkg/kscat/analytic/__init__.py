"""Closed-form K-factor models and the Rician envelope distribution."""

from kscat.analytic.formulas import (
    ETA0,
    DomainError,
    antenna_mode_rcs,
    avg_dipole_xsec,
    dipole_induced_emf_impedance,
    far_field_distance,
    k_fixed_count,
    k_fixed_density,
    k_lower_bound,
    los_power,
    max_packed_count,
    packed_density,
    rimp_power,
)
from kscat.analytic.rician import (
    RicianParams,
    rician_cdf,
    rician_moment_ratio,
    rician_pdf,
    rician_samples,
)
from kscat.analytic.scenario import (
    AnalyticMethod,
    analysis_radius,
    population_count,
    population_density,
    primary_method,
    scenario_k,
    scenario_powers,
    sigma_avg,
)
from kscat.analytic.sweep import analytic_rows, analytic_sweep, frozen_spacing

__all__ = [
    "ETA0",
    "AnalyticMethod",
    "DomainError",
    "RicianParams",
    "analysis_radius",
    "analytic_rows",
    "analytic_sweep",
    "antenna_mode_rcs",
    "avg_dipole_xsec",
    "dipole_induced_emf_impedance",
    "far_field_distance",
    "frozen_spacing",
    "k_fixed_count",
    "k_fixed_density",
    "k_lower_bound",
    "los_power",
    "max_packed_count",
    "packed_density",
    "population_count",
    "population_density",
    "primary_method",
    "rician_cdf",
    "rician_moment_ratio",
    "rician_pdf",
    "rician_samples",
    "rimp_power",
    "scenario_k",
    "scenario_powers",
    "sigma_avg",
]
