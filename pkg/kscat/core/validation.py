"""Report-based checks of the physical assumptions behind a scenario."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

from kscat.core.scenario import (
    DIPOLE_LENGTH_GRID,
    DipoleOfElectricalLength,
    FixedCount,
    FixedDensity,
    MaxPacked,
    ScenarioConfig,
    ScenarioError,
)

logger = logging.getLogger(__name__)

# "R_s much larger than lambda/2pi" is taken as a factor of ten
PHASE_AVERAGING_MARGIN = 10.0


class Severity(str, Enum):
    """Issue severity."""
    WARNING = "warning"
    ERROR = "error"


@dataclass(frozen=True)
class Issue:
    """One violated assumption, optionally tied to a frequency."""
    code: str
    message: str
    severity: Severity = Severity.ERROR
    frequency_hz: float | None = None


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = field(default_factory=tuple)

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == Severity.ERROR]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == Severity.WARNING]

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def raise_for_errors(self) -> None:
        """Raise ScenarioError listing every error-level issue."""
        if self.errors:
            details = "; ".join(i.message for i in self.errors)
            raise ScenarioError(f"Scenario violates model assumptions: {details}")


def validate(config: ScenarioConfig) -> ValidationReport:
    """
    Check a scenario against the assumptions of the scattering model.

    Hard invariants (positive sizes, M >= 1, increasing frequencies) are
    enforced when the config is built; this reports the softer ones that
    depend on frequency.

    Args:
        config: Parsed scenario

    Returns:
        ValidationReport with one Issue per violation (never raises)
    """
    from kscat.analytic.formulas import far_field_distance, max_packed_count, packed_density
    from kscat.analytic.scenario import population_count

    issues: list[Issue] = []
    r_s = config.geometry.analysis_radius
    population = config.population
    gain = config.scatterer.gain

    if isinstance(config.scatterer.kind, DipoleOfElectricalLength):
        l_ratio = config.scatterer.kind.l_over_lambda
        if not any(math.isclose(l_ratio, g) for g in DIPOLE_LENGTH_GRID):
            issues.append(Issue(
                "dipole_length_off_grid",
                f"L/lambda={l_ratio} outside {DIPOLE_LENGTH_GRID}",
                Severity.WARNING,
            ))

    if config.geometry.is_cube:
        issues.append(Issue(
            "cube_analytic_sphere",
            f"Analytic formulas use the inscribed sphere R_s={r_s} m for the cube",
            Severity.WARNING,
        ))

    for f in config.frequencies:
        limit = f.wavelength / (2.0 * math.pi)
        if r_s <= limit:
            issues.append(Issue(
                "radius_below_phase_limit",
                f"R_s={r_s} m <= lambda/2pi={limit:.4g} m at {f.value:.6g} Hz",
                Severity.ERROR,
                f.value,
            ))
        elif r_s < PHASE_AVERAGING_MARGIN * limit:
            issues.append(Issue(
                "radius_near_phase_limit",
                f"R_s={r_s} m is not much larger than lambda/2pi={limit:.4g} m "
                f"at {f.value:.6g} Hz",
                Severity.WARNING,
                f.value,
            ))

        if isinstance(population, MaxPacked):
            if population_count(config, f) < 1:
                issues.append(Issue(
                    "far_field_packing_infeasible",
                    f"No scatterer fits at far-field spacing at {f.value:.6g} Hz",
                    Severity.ERROR,
                    f.value,
                ))
        else:
            packing = MaxPacked()
            r_ff = far_field_distance(f.wavelength, gain, packing.gamma_a, packing.alpha_e)
            if isinstance(population, FixedCount):
                ceiling = max_packed_count(r_s, r_ff, packing.eta_pack)
                crowded = population.n_s > ceiling
            else:
                assert isinstance(population, FixedDensity)
                crowded = population.rho_s > packed_density(r_ff, packing.eta_pack)
            if crowded:
                issues.append(Issue(
                    "scatterers_within_far_field",
                    f"Scatterers are denser than far-field spacing allows at {f.value:.6g} Hz",
                    Severity.WARNING,
                    f.value,
                ))

    report = ValidationReport(tuple(issues))
    for issue in report.issues:
        log = logger.error if issue.severity == Severity.ERROR else logger.warning
        log(f"[{issue.code}] {issue.message}")
    return report
