"""Scenario file models (pydantic) and their JSON round trip."""

import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator, model_validator

from kscat.core.types import Frequency

logger = logging.getLogger(__name__)

# Electrical lengths on which the averaged dipole cross-section fit is defined
DIPOLE_LENGTH_GRID = (0.5, 1.5, 2.5, 3.5, 4.5)


class ScenarioError(ValueError):
    """A scenario that parses but cannot be run as described."""


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# Geometry

class SphereRegion(_Spec):
    kind: Literal["sphere"] = "sphere"
    radius_m: PositiveFloat


class CubeRegion(_Spec):
    kind: Literal["cube"] = "cube"
    side_m: PositiveFloat


Region = Annotated[SphereRegion | CubeRegion, Field(discriminator="kind")]


class FarFieldPlaneWave(_Spec):
    """Transmitter far outside the region; a plane wave hits every scatterer."""
    kind: Literal["far_field_plane_wave"] = "far_field_plane_wave"


class InVolumeDipole(_Spec):
    """Half-wave transmitting dipole inside the region at (r_t, 0, 0)."""
    kind: Literal["in_volume_dipole"] = "in_volume_dipole"
    r_t_m: PositiveFloat


TxPlacement = Annotated[FarFieldPlaneWave | InVolumeDipole, Field(discriminator="kind")]


class GeometrySpec(_Spec):
    """Scattering region, transmitter placement and LOS distance; the receiver is at the origin."""
    region: Region
    tx_placement: TxPlacement = FarFieldPlaneWave()
    los_distance_m: PositiveFloat | None = None

    @model_validator(mode="after")
    def _tx_inside(self) -> "GeometrySpec":
        if isinstance(self.tx_placement, InVolumeDipole):
            if not self.tx_placement.r_t_m < self.analysis_radius:
                raise ScenarioError(
                    f"Transmitter at r_t={self.tx_placement.r_t_m} m lies outside "
                    f"the region (radius {self.analysis_radius} m)"
                )
        return self

    @property
    def is_cube(self) -> bool:
        return isinstance(self.region, CubeRegion)

    @property
    def analysis_radius(self) -> float:
        """Sphere radius, or the inscribed radius of a cube."""
        if isinstance(self.region, CubeRegion):
            return self.region.side_m / 2.0
        return self.region.radius_m

    @property
    def bounding_radius(self) -> float:
        if isinstance(self.region, CubeRegion):
            return self.region.side_m * math.sqrt(3.0) / 2.0
        return self.region.radius_m

    @property
    def volume(self) -> float:
        if isinstance(self.region, CubeRegion):
            return self.region.side_m ** 3
        return 4.0 / 3.0 * math.pi * self.region.radius_m ** 3


# Antennas

class AntennaSpec(_Spec):
    """Station antennas and transmit power."""
    directivity_rx: PositiveFloat = 1.0
    gain_tx: PositiveFloat = 1.0
    radiation_efficiency: float = Field(1.0, gt=0.0, le=1.0)
    tx_power_w: PositiveFloat = 1.0
    # P_LOS fixed to 1 so that r_o never needs a value
    normalized_power: bool = True

    @property
    def gain_rx(self) -> float:
        return self.radiation_efficiency * self.directivity_rx


# Scatterers

class ResonantDipoleHalfWave(_Spec):
    kind: Literal["resonant_dipole_half_wave"] = "resonant_dipole_half_wave"

    @property
    def l_over_lambda(self) -> float:
        return 0.5


class DipoleOfElectricalLength(_Spec):
    kind: Literal["dipole_of_electrical_length"] = "dipole_of_electrical_length"
    l_over_lambda: PositiveFloat

    @field_validator("l_over_lambda")
    @classmethod
    def _warn_off_grid(cls, value: float) -> float:
        if not any(math.isclose(value, g) for g in DIPOLE_LENGTH_GRID):
            logger.warning(
                f"Dipole length L/lambda={value} is outside the tabulated grid "
                f"{DIPOLE_LENGTH_GRID}; the cross-section fit is extrapolated"
            )
        return value


class FixedCrossSection(_Spec):
    kind: Literal["fixed_cross_section"] = "fixed_cross_section"
    sigma_m2: PositiveFloat


ScattererKind = Annotated[
    ResonantDipoleHalfWave | DipoleOfElectricalLength | FixedCrossSection,
    Field(discriminator="kind"),
]


class ImpedanceLoad(_Spec):
    """Lumped load at the dipole center, ``ohms = [resistance, reactance]``."""
    kind: Literal["impedance"] = "impedance"
    ohms: tuple[float, float]

    @field_validator("ohms")
    @classmethod
    def _passive(cls, value: tuple[float, float]) -> tuple[float, float]:
        if value[0] < 0.0:
            raise ValueError(f"Load resistance must be non-negative, got {value[0]}")
        return value

    @property
    def impedance(self) -> complex:
        return complex(self.ohms[0], self.ohms[1])


class MatchedLoad(_Spec):
    """Conjugate of the isolated dipole's input impedance at each frequency."""
    kind: Literal["matched"] = "matched"


Load = Annotated[ImpedanceLoad | MatchedLoad, Field(discriminator="kind")]


class ScattererSpec(_Spec):
    kind: ScattererKind = ResonantDipoleHalfWave()
    # Scatterer gain used in the far-field distance
    gain: PositiveFloat = 1.64
    load: Load | None = None  # None is an unloaded PEC wire

    @property
    def is_dipole(self) -> bool:
        return not isinstance(self.kind, FixedCrossSection)


# Populations

class FixedCount(_Spec):
    kind: Literal["fixed_count"] = "fixed_count"
    n_s: int = Field(ge=1)


class FixedDensity(_Spec):
    kind: Literal["fixed_density"] = "fixed_density"
    rho_s: PositiveFloat  # per m^3


class MaxPacked(_Spec):
    """Region filled up to the far-field spacing of the scatterers."""
    kind: Literal["max_packed"] = "max_packed"
    gamma_a: float = Field(0.9, gt=0.0, lt=1.0)
    eta_pack: float = Field(0.64, ge=0.0, le=1.0)
    alpha_e: PositiveFloat = 0.06
    # Freeze the spacing at this frequency instead of re-packing per frequency
    reference_frequency_hz: PositiveFloat | None = None


Population = Annotated[FixedCount | FixedDensity | MaxPacked, Field(discriminator="kind")]


class ScenarioConfig(_Spec):
    """Full description of one propagation scenario."""
    geometry: GeometrySpec
    antenna: AntennaSpec = AntennaSpec()
    scatterer: ScattererSpec = ScattererSpec()
    population: Population
    frequencies_hz: tuple[PositiveFloat, ...] = Field(min_length=1)
    ensembles: int = Field(1, ge=1)
    seed: int | None = Field(None, ge=0, lt=2**64)

    @field_validator("frequencies_hz")
    @classmethod
    def _strictly_increasing(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("frequencies_hz must be strictly increasing")
        return value

    @model_validator(mode="after")
    def _los_distance_given(self) -> "ScenarioConfig":
        if not self.antenna.normalized_power and self.geometry.los_distance_m is None:
            raise ScenarioError(
                "geometry.los_distance_m is required when normalized_power is false"
            )
        return self

    @property
    def frequencies(self) -> tuple[Frequency, ...]:
        return tuple(Frequency(f) for f in self.frequencies_hz)


def parse_scenario(text: str | bytes) -> ScenarioConfig:
    """Parse a scenario from JSON text. Raises pydantic.ValidationError."""
    return ScenarioConfig.model_validate_json(text)


def dump_scenario(config: ScenarioConfig) -> str:
    """Serialize a scenario to JSON text that parses back to an equal config."""
    return config.model_dump_json(indent=2)


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Read and parse a scenario file."""
    path = Path(path)
    logger.debug(f"Loading scenario: {path}")
    return parse_scenario(path.read_text(encoding="utf-8"))


def config_hash(config: ScenarioConfig) -> str:
    """SHA-256 over the canonical JSON form of every field."""
    canonical = json.dumps(
        config.model_dump(mode="json"), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def with_overrides(config: ScenarioConfig, **updates) -> ScenarioConfig:
    """
    Copy a scenario with top-level fields replaced, re-running validation.

    ``None`` values are ignored so CLI flags that were not given pass through.
    """
    data = config.model_dump()
    data.update({key: value for key, value in updates.items() if value is not None})
    return ScenarioConfig.model_validate(data)


def with_population(config: ScenarioConfig, population: dict) -> ScenarioConfig:
    data = config.model_dump()
    data["population"] = population
    return ScenarioConfig.model_validate(data)


def with_scatterer_load(config: ScenarioConfig, load: dict | None) -> ScenarioConfig:
    data = config.model_dump()
    data["scatterer"]["load"] = load
    return ScenarioConfig.model_validate(data)


def with_tx_placement(config: ScenarioConfig, placement: dict) -> ScenarioConfig:
    data = config.model_dump()
    data["geometry"]["tx_placement"] = placement
    return ScenarioConfig.model_validate(data)


def effective_seed(config: ScenarioConfig, override: int | None = None) -> int:
    """Seed precedence: explicit override > scenario file > Settings.default_seed."""
    from kscat.config import get_settings

    if override is not None:
        return override
    if config.seed is not None:
        return config.seed
    return get_settings().default_seed
