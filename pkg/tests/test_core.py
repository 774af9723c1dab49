"""Tests for value types, scenario files and validation reports."""

import math

import numpy as np
import pytest
from conftest import make_scenario, scenario_dict
from pydantic import ValidationError

from kscat.core import (
    C0,
    Frequency,
    KFactorEstimate,
    ScattererCloud,
    ScenarioConfig,
    ScenarioError,
    Severity,
    config_hash,
    dump_scenario,
    effective_seed,
    load_scenario,
    parse_scenario,
    to_db,
    validate,
    with_overrides,
    with_scatterer_load,
    with_tx_placement,
)


class TestFrequency:
    def test_wavelength_and_wavenumber(self):
        f = Frequency.from_ghz(1.0)
        assert f.value == 1e9
        assert f.ghz == pytest.approx(1.0)
        assert f.wavelength == pytest.approx(C0 / 1e9)
        assert f.wavenumber == pytest.approx(2.0 * math.pi * 1e9 / C0)

    @pytest.mark.parametrize("value", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_non_positive(self, value):
        with pytest.raises(ValueError):
            Frequency(value)

    def test_ordering(self):
        assert Frequency(1e9) < Frequency(2e9)


def test_to_db_sentinels():
    assert to_db(100.0) == pytest.approx(20.0)
    assert to_db(0.0) == -math.inf
    assert to_db(math.inf) == math.inf


def test_k_estimate_validation():
    estimate = KFactorEstimate(10.0, 1.1, 0.2, 100)
    assert estimate.k_db == pytest.approx(10.0)
    with pytest.raises(ValueError):
        KFactorEstimate(-1.0, 1.0, 0.0, 10)
    with pytest.raises(ValueError):
        KFactorEstimate(1.0, 1.0, -0.1, 10)


class TestScattererCloud:
    def test_arrays_are_read_only(self):
        cloud = ScattererCloud([1.0, 2.0], [0.1, 0.2], [0.0, 1.0], [0.5, 0.5])
        with pytest.raises(ValueError):
            cloud.rho[0] = 3.0

    def test_unequal_lengths(self):
        with pytest.raises(ValueError):
            ScattererCloud([1.0, 2.0], [0.1], [0.0, 1.0], [0.5, 0.5])

    def test_take_prefix(self):
        cloud = ScattererCloud([1.0, 2.0, 3.0], [0.1, 0.2, 0.3], [0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
        head = cloud.take(2)
        assert head.n_s == 2
        np.testing.assert_array_equal(head.rho, [1.0, 2.0])
        with pytest.raises(ValueError):
            cloud.take(4)

    def test_from_cartesian(self):
        xyz = np.array([[0.0, 0.0, 2.0], [1.0, 1.0, 0.0], [0.0, -3.0, 0.0]])
        cloud = ScattererCloud.from_cartesian(xyz, np.zeros(3))
        np.testing.assert_allclose(cloud.rho, [2.0, math.sqrt(2.0), 3.0])
        np.testing.assert_allclose(cloud.theta, [0.0, math.pi / 2, math.pi / 2])
        np.testing.assert_allclose(cloud.phi, [0.0, math.pi / 4, 3 * math.pi / 2])
        assert np.all((cloud.phi >= 0.0) & (cloud.phi < 2.0 * math.pi))
        np.testing.assert_allclose(cloud.cartesian(), xyz, atol=1e-12)

    def test_empty(self):
        assert ScattererCloud.empty().n_s == 0


class TestScenarioFile:
    def test_round_trip(self):
        config = make_scenario(frequencies_hz=(5e8, 1e9, 2e9))
        assert parse_scenario(dump_scenario(config)) == config

    def test_load_from_disk(self, write_scenario):
        path = write_scenario(scenario_dict(radius_m=3.0))
        config = load_scenario(path)
        assert config.geometry.analysis_radius == 3.0
        assert config.frequencies == (Frequency(1e9),)

    def test_unknown_key_rejected(self):
        data = scenario_dict()
        data["geometry"]["colour"] = "blue"
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate(data)

    def test_frequencies_strictly_increasing(self):
        with pytest.raises(ValidationError):
            make_scenario(frequencies_hz=(2e9, 1e9))
        with pytest.raises(ValidationError):
            make_scenario(frequencies_hz=(1e9, 1e9))

    def test_transmitter_outside_region(self):
        with pytest.raises(ValidationError, match="outside"):
            make_scenario(radius_m=5.0, tx_placement={"kind": "in_volume_dipole", "r_t_m": 6.0})

    def test_los_distance_required_without_normalization(self):
        data = scenario_dict()
        data["antenna"]["normalized_power"] = False
        with pytest.raises(ValidationError, match="los_distance_m"):
            ScenarioConfig.model_validate(data)

    def test_seed_must_fit_u64(self):
        with pytest.raises(ValidationError):
            make_scenario(seed=2**64)

    def test_load_resistance_non_negative(self):
        scatterer = {"kind": {"kind": "resonant_dipole_half_wave"},
                     "load": {"kind": "impedance", "ohms": [-1.0, 0.0]}}
        with pytest.raises(ValidationError):
            make_scenario(scatterer=scatterer)

    def test_cube_geometry(self):
        data = scenario_dict()
        data["geometry"]["region"] = {"kind": "cube", "side_m": 4.0}
        geometry = ScenarioConfig.model_validate(data).geometry
        assert geometry.is_cube
        assert geometry.analysis_radius == 2.0
        assert geometry.volume == pytest.approx(64.0)
        assert geometry.bounding_radius == pytest.approx(2.0 * math.sqrt(3.0))


class TestConfigHash:
    def test_equal_configs_hash_equal(self):
        assert config_hash(make_scenario()) == config_hash(make_scenario())

    @pytest.mark.parametrize("change", [
        {"ensembles": 1001},
        {"seed": 43},
        {"radius_m": 15.5},
        {"frequencies_hz": (1e9, 2e9)},
        {"population": {"kind": "fixed_count", "n_s": 101}},
    ])
    def test_semantic_change_changes_hash(self, change):
        assert config_hash(make_scenario(**change)) != config_hash(make_scenario())


class TestOverrides:
    def test_none_passes_through(self):
        config = make_scenario()
        assert with_overrides(config, ensembles=None, seed=None) == config

    def test_overrides_are_validated(self):
        config = make_scenario()
        assert with_overrides(config, ensembles=7).ensembles == 7
        with pytest.raises(ValidationError):
            with_overrides(config, ensembles=0)

    def test_load_and_placement(self):
        config = with_scatterer_load(make_scenario(), {"kind": "matched"})
        assert config.scatterer.load.kind == "matched"
        assert with_scatterer_load(config, None).scatterer.load is None
        moved = with_tx_placement(config, {"kind": "in_volume_dipole", "r_t_m": 7.5})
        assert moved.geometry.tx_placement.r_t_m == 7.5


class TestEffectiveSeed:
    def test_flag_wins(self):
        assert effective_seed(make_scenario(seed=5), 9) == 9

    def test_file_over_default(self):
        assert effective_seed(make_scenario(seed=5)) == 5

    def test_settings_default(self, settings_env):
        assert effective_seed(make_scenario(seed=None)) == 42
        settings_env(default_seed=7)
        assert effective_seed(make_scenario(seed=None)) == 7


class TestValidate:
    @pytest.mark.parametrize("radius_m,flagged", [(15.0, False), (0.01, True)])
    def test_phase_limit_at_half_gigahertz(self, radius_m, flagged):
        report = validate(make_scenario(radius_m=radius_m, frequencies_hz=(0.5e9,)))
        assert ("radius_below_phase_limit" in report.codes()) is flagged
        assert report.ok is not flagged

    def test_clean_scenario(self):
        report = validate(make_scenario())
        assert report.ok
        assert report.issues == ()

    def test_radius_below_phase_limit(self):
        report = validate(make_scenario(radius_m=0.01))
        assert "radius_below_phase_limit" in report.codes()
        assert not report.ok
        with pytest.raises(ScenarioError):
            report.raise_for_errors()

    def test_radius_near_phase_limit_is_a_warning(self):
        report = validate(make_scenario(radius_m=0.2))
        assert "radius_near_phase_limit" in report.codes()
        assert all(i.severity == Severity.WARNING for i in report.issues
                   if i.code == "radius_near_phase_limit")

    def test_packing_infeasible(self):
        report = validate(make_scenario(radius_m=0.05, population={"kind": "max_packed"}))
        assert "far_field_packing_infeasible" in report.codes()
        assert not report.ok

    def test_crowded_fixed_count(self):
        report = validate(make_scenario(radius_m=1.0, population={"kind": "fixed_count", "n_s": 10_000}))
        assert "scatterers_within_far_field" in report.codes()
        assert report.ok

    def test_off_grid_dipole_and_cube(self):
        data = scenario_dict(scatterer={"kind": {"kind": "dipole_of_electrical_length",
                                                 "l_over_lambda": 1.0}})
        data["geometry"]["region"] = {"kind": "cube", "side_m": 30.0}
        report = validate(ScenarioConfig.model_validate(data))
        assert {"dipole_length_off_grid", "cube_analytic_sphere"} <= report.codes()
        assert report.ok
