"""Shared fixtures: scenario builders and isolated settings."""

import json

import pytest

from kscat.config import get_settings
from kscat.core import ScenarioConfig


def scenario_dict(
    *,
    radius_m: float = 15.0,
    population: dict | None = None,
    frequencies_hz=(1e9,),
    ensembles: int = 1000,
    seed: int | None = 42,
    scatterer: dict | None = None,
    tx_placement: dict | None = None,
) -> dict:
    return {
        "geometry": {
            "region": {"kind": "sphere", "radius_m": radius_m},
            "tx_placement": tx_placement or {"kind": "far_field_plane_wave"},
            "los_distance_m": None,
        },
        "antenna": {
            "directivity_rx": 1.0,
            "gain_tx": 1.0,
            "radiation_efficiency": 1.0,
            "tx_power_w": 1.0,
            "normalized_power": True,
        },
        "scatterer": scatterer or {"kind": {"kind": "resonant_dipole_half_wave"}, "gain": 1.64},
        "population": population or {"kind": "fixed_count", "n_s": 100},
        "frequencies_hz": list(frequencies_hz),
        "ensembles": ensembles,
        "seed": seed,
    }


def make_scenario(**kwargs) -> ScenarioConfig:
    return ScenarioConfig.model_validate(scenario_dict(**kwargs))


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees settings built from its own environment."""
    for name in ("KSCAT_WORKERS", "KSCAT_WORKER_BACKEND", "KSCAT_DEFAULT_SEED",
                 "KSCAT_ENSEMBLE_CHUNK_SIZE", "KSCAT_MOM_DUMP_DIR", "KSCAT_MOM_SEGMENTS"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings_env(monkeypatch):
    """Set KSCAT_* variables and rebuild the cached settings."""
    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"KSCAT_{key.upper()}", str(value))
        get_settings.cache_clear()
        return get_settings()
    return apply


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario dict to a JSON file and return its path."""
    def write(data: dict, name: str = "scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return write
