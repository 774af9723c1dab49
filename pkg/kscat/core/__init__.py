"""Domain types and validated scenario configuration."""

from kscat.core.scenario import (
    DIPOLE_LENGTH_GRID,
    AntennaSpec,
    CubeRegion,
    DipoleOfElectricalLength,
    FarFieldPlaneWave,
    FixedCount,
    FixedCrossSection,
    FixedDensity,
    GeometrySpec,
    ImpedanceLoad,
    InVolumeDipole,
    MatchedLoad,
    MaxPacked,
    ResonantDipoleHalfWave,
    ScattererSpec,
    ScenarioConfig,
    ScenarioError,
    SphereRegion,
    config_hash,
    dump_scenario,
    effective_seed,
    load_scenario,
    parse_scenario,
    with_overrides,
    with_population,
    with_scatterer_load,
    with_tx_placement,
)
from kscat.core.table import COLUMNS, METHODS, SweepRow, SweepTable, read_csv
from kscat.core.types import C0, Frequency, KFactorEstimate, ScattererCloud, to_db
from kscat.core.validation import Issue, Severity, ValidationReport, validate

__all__ = [
    "C0",
    "COLUMNS",
    "DIPOLE_LENGTH_GRID",
    "AntennaSpec",
    "CubeRegion",
    "DipoleOfElectricalLength",
    "FarFieldPlaneWave",
    "FixedCount",
    "FixedCrossSection",
    "FixedDensity",
    "Frequency",
    "GeometrySpec",
    "ImpedanceLoad",
    "InVolumeDipole",
    "Issue",
    "KFactorEstimate",
    "METHODS",
    "MatchedLoad",
    "MaxPacked",
    "ResonantDipoleHalfWave",
    "ScattererCloud",
    "ScattererSpec",
    "ScenarioConfig",
    "ScenarioError",
    "SweepRow",
    "SweepTable",
    "Severity",
    "SphereRegion",
    "ValidationReport",
    "config_hash",
    "dump_scenario",
    "effective_seed",
    "load_scenario",
    "parse_scenario",
    "read_csv",
    "to_db",
    "validate",
    "with_overrides",
    "with_population",
    "with_scatterer_load",
    "with_tx_placement",
]
