"""Tests for random clouds, the voltage model and Monte-Carlo sweeps."""

import math

import numpy as np
import pytest
from conftest import make_scenario, scenario_dict

from kscat.analytic import (
    RicianParams,
    population_count,
    rician_samples,
    scenario_k,
    sigma_avg,
)
from kscat.core import Frequency, ScattererCloud, ScenarioConfig, ScenarioError
from kscat.ensemble import (
    RngStream,
    SignalSample,
    direct_amplitude,
    estimate_k,
    mc_sweep,
    receive_voltage,
    sample_cloud,
    scatter_amplitude,
    simulate_mc_chunk,
)


class TestRngStream:
    def test_reproducible(self):
        a = RngStream(42, 7).generator().random(5)
        b = RngStream(42, 7).generator().random(5)
        np.testing.assert_array_equal(a, b)

    def test_streams_are_distinct(self):
        base = RngStream(42, 7).generator().random(5)
        assert not np.array_equal(base, RngStream(42, 8).generator().random(5))
        assert not np.array_equal(base, RngStream(43, 7).generator().random(5))
        assert not np.array_equal(base, RngStream(42, 7).generator(purpose=1).random(5))

    @pytest.mark.parametrize("seed,stream", [(-1, 0), (2**64, 0), (0, -3)])
    def test_u64_range(self, seed, stream):
        with pytest.raises(ValueError):
            RngStream(seed, stream)


class TestSampleCloud:
    def test_sphere_bounds(self):
        config = make_scenario(radius_m=15.0)
        cloud = sample_cloud(config, RngStream(1, 0), n_s=5000)
        assert cloud.n_s == 5000
        assert np.all((cloud.rho > 0.0) & (cloud.rho <= 15.0))
        assert np.all((cloud.theta >= 0.0) & (cloud.theta <= math.pi))
        assert np.all((cloud.phi >= 0.0) & (cloud.phi < 2.0 * math.pi))
        assert np.all((cloud.psi >= 0.0) & (cloud.psi < 2.0 * math.pi))

    def test_cube_bounds(self):
        data = scenario_dict()
        data["geometry"]["region"] = {"kind": "cube", "side_m": 4.0}
        cloud = sample_cloud(ScenarioConfig.model_validate(data), RngStream(1, 0), n_s=5000)
        assert np.all(np.abs(cloud.cartesian()) <= 2.0 + 1e-12)

    def test_deterministic_and_prefix(self):
        config = make_scenario()
        a = sample_cloud(config, RngStream(9, 3))
        b = sample_cloud(config, RngStream(9, 3))
        np.testing.assert_array_equal(a.rho, b.rho)
        np.testing.assert_array_equal(a.psi, b.psi)
        assert a.n_s == 100

    def test_default_count_is_grid_maximum(self):
        config = make_scenario(population={"kind": "max_packed"}, radius_m=0.5,
                               frequencies_hz=(1e9, 2e9))
        cloud = sample_cloud(config, RngStream(0, 0))
        counts = [population_count(config, f) for f in config.frequencies]
        assert counts[1] > counts[0]
        assert cloud.n_s == counts[1]

    def test_uniform_volume_identities(self):
        # <1/rho^2> has infinite variance; the tolerance reflects its slow convergence
        r_s = 15.0
        cloud = sample_cloud(make_scenario(radius_m=r_s), RngStream(2024, 0), n_s=1_000_000)
        assert np.mean(1.0 / cloud.rho**2) == pytest.approx(3.0 / r_s**2, rel=0.05)
        cos_psi = np.cos(cloud.psi)
        assert abs(cos_psi.mean()) < 4.0 * cos_psi.std() / math.sqrt(cloud.n_s)
        assert np.mean(cos_psi**2) == pytest.approx(0.5, abs=0.01)
        assert np.mean(cloud.rho**3) == pytest.approx(r_s**3 / 2.0, rel=0.01)


class TestVoltage:
    def test_empty_cloud_is_direct_wave(self):
        config = make_scenario()
        sample = receive_voltage(ScattererCloud.empty(), config, Frequency(1e9))
        assert sample.v == 1.0

    def test_direct_amplitude_from_friis(self):
        data = scenario_dict()
        data["antenna"]["normalized_power"] = False
        data["geometry"]["los_distance_m"] = 100.0
        config = ScenarioConfig.model_validate(data)
        f = Frequency(1e9)
        assert direct_amplitude(config, f) == pytest.approx(f.wavelength / (4 * math.pi * 100.0))

    def test_single_scatterer(self):
        config = make_scenario()
        f = Frequency(1e9)
        rho, theta, psi = 3.0, 1.1, 0.4
        cloud = ScattererCloud([rho], [theta], [0.2], [psi])
        expected = 1.0 + scatter_amplitude(config, f) * math.cos(psi) * np.exp(
            -1j * f.wavenumber * rho * (1.0 - math.cos(theta))
        ) / rho
        assert receive_voltage(cloud, config, f).v == pytest.approx(expected)

    def test_scatter_amplitude(self):
        config = make_scenario()
        f = Frequency(2e9)
        assert scatter_amplitude(config, f) == pytest.approx(
            math.sqrt(sigma_avg(config.scatterer, f) / (4.0 * math.pi))
        )

    def test_in_volume_transmitter(self):
        config = make_scenario(tx_placement={"kind": "in_volume_dipole", "r_t_m": 5.0})
        f = Frequency(1e9)
        cloud = ScattererCloud([2.0], [math.pi / 2], [math.pi / 2], [0.0])
        r_tn = math.hypot(2.0, 5.0)
        expected = 1.0 + scatter_amplitude(config, f) * (5.0 / r_tn) * np.exp(
            -1j * f.wavenumber * (r_tn + 2.0 - 5.0)
        ) / 2.0
        assert receive_voltage(cloud, config, f).v == pytest.approx(expected)

    def test_scatterer_on_receiver(self):
        cloud = ScattererCloud([0.0], [0.0], [0.0], [0.0])
        with pytest.raises(ValueError):
            receive_voltage(cloud, make_scenario(), Frequency(1e9))

    def test_signal_sample_must_be_finite(self):
        with pytest.raises(ValueError):
            SignalSample(complex(math.nan, 0.0))

    def test_scattered_part_has_zero_mean(self):
        config = make_scenario()
        f = Frequency(1e9)
        scattered = np.array([
            receive_voltage(sample_cloud(config, RngStream(21, m)), config, f).v - 1.0
            for m in range(2000)
        ])
        spread = math.sqrt(np.mean(np.abs(scattered - scattered.mean()) ** 2))
        assert abs(scattered.mean()) < 4.0 * spread / math.sqrt(scattered.size)


class TestEstimateK:
    def test_recovers_rician_k(self):
        v = rician_samples(RicianParams(5.0, 1.0), 100_000, np.random.default_rng(11))
        estimate = estimate_k(v)
        assert estimate.k_linear == pytest.approx(5.0, rel=0.05)
        assert estimate.total_power == pytest.approx(1.0, rel=0.02)
        assert 0.0 < estimate.stderr_db < 0.1
        assert estimate.samples == 100_000

    def test_rayleigh_samples(self):
        v = rician_samples(RicianParams(0.0, 1.0), 1_000_000, np.random.default_rng(12))
        assert estimate_k(v).k_linear < 0.02

    def test_accepts_signal_samples(self):
        samples = [SignalSample(complex(1.0 + 0.1 * i, 0.0)) for i in range(10)]
        assert estimate_k(samples).k_linear == pytest.approx(
            estimate_k(np.array([s.v for s in samples])).k_linear
        )

    def test_deterministic(self):
        estimate = estimate_k(np.full(50, 1.0 + 0.5j))
        assert estimate.deterministic
        assert estimate.k_linear == math.inf
        assert estimate.stderr_db == 0.0

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            estimate_k(np.array([1.0 + 0j]))

    def test_invariant_to_common_complex_scale(self):
        v = rician_samples(RicianParams(2.0, 1.0), 10_000, np.random.default_rng(13))
        scaled = estimate_k(v * (2.7 * np.exp(0.9j)))
        assert scaled.k_linear == pytest.approx(estimate_k(v).k_linear, rel=1e-12)

    def test_stderr_shrinks_as_inverse_root_of_samples(self):
        v = rician_samples(RicianParams(5.0, 1.0), 40_000, np.random.default_rng(14))
        errors = [estimate_k(v[:m]).stderr_db for m in (10_000, 20_000, 40_000)]
        assert errors[0] / errors[1] == pytest.approx(math.sqrt(2.0), rel=0.1)
        assert errors[1] / errors[2] == pytest.approx(math.sqrt(2.0), rel=0.1)


class TestMonteCarloSweep:
    def test_matches_analytic_k(self):
        config = make_scenario(
            radius_m=15.0, population={"kind": "fixed_count", "n_s": 100},
            frequencies_hz=(1e9, 5e9), ensembles=20_000,
        )
        table = mc_sweep(config, seed=1)
        mc = table.column("mc", "k_db")
        analytic = table.column("analytic_fixed_count", "k_db")
        np.testing.assert_allclose(mc, analytic, atol=0.5)

    def test_quadratic_frequency_law(self):
        freqs = (0.5e9, 2e9, 10e9, 50e9, 100e9)
        config = make_scenario(population={"kind": "fixed_count", "n_s": 100},
                               frequencies_hz=freqs, ensembles=10_000)
        table = mc_sweep(config, seed=2)
        slope = np.polyfit(np.log(freqs), np.log(table.column("mc", "k_linear")), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.2)

    def test_in_volume_transmitter_keeps_trend(self):
        config = make_scenario(
            population={"kind": "fixed_count", "n_s": 100},
            tx_placement={"kind": "in_volume_dipole", "r_t_m": 7.5},
            frequencies_hz=(0.5e9, 5e9, 50e9), ensembles=4000,
        )
        k = mc_sweep(config, seed=3).column("mc", "k_linear")
        assert np.all(np.diff(k) > 0)

    def test_max_packed_k_falls_with_frequency(self):
        config = make_scenario(radius_m=0.5, population={"kind": "max_packed"},
                               frequencies_hz=(1e9, 2e9, 4e9), ensembles=2000)
        table = mc_sweep(config, seed=7)
        assert table.methods() == ["analytic_lower_bound", "mc"]
        assert np.all(np.diff(table.column("mc", "k_linear")) < 0)

    def test_rows_and_metadata(self):
        config = make_scenario(frequencies_hz=(1e9, 2e9), ensembles=300)
        table = mc_sweep(config, seed=4)
        assert table.methods() == ["analytic_fixed_count", "mc"]
        rows = table.for_method("mc")
        assert [r.frequency_hz for r in rows] == [1e9, 2e9]
        assert all(r.ensembles == 300 and r.seed == 4 and r.n_s == 100 for r in rows)
        assert "radius_redraws" in table.metadata

    def test_chunking_does_not_change_result(self, settings_env):
        config = make_scenario(frequencies_hz=(1e9, 3e9), ensembles=500)
        whole = mc_sweep(config, seed=5)
        settings_env(ensemble_chunk_size=64)
        chunked = mc_sweep(config, seed=5)
        assert chunked.to_csv() == whole.to_csv()

    def test_workers_do_not_change_result(self, settings_env):
        settings_env(ensemble_chunk_size=100)
        config = make_scenario(frequencies_hz=(1e9,), ensembles=400)
        assert mc_sweep(config, seed=6, workers=2).to_csv() == mc_sweep(config, seed=6, workers=1).to_csv()

    def test_needs_two_ensembles(self):
        with pytest.raises(ScenarioError):
            mc_sweep(make_scenario(ensembles=1))

    def test_scatterer_cap(self, settings_env):
        settings_env(mc_max_scatterers=50)
        with pytest.raises(ScenarioError, match="KSCAT_MC_MAX_SCATTERERS"):
            mc_sweep(make_scenario(ensembles=10))

    def test_chunk_samples_match_single_realization(self):
        config = make_scenario(frequencies_hz=(1e9,), ensembles=10)
        payload = {"config": config.model_dump(mode="json"), "seed": 8, "counts": [100],
                   "start": 3, "stop": 5}
        result = simulate_mc_chunk(payload)
        cloud = sample_cloud(config, RngStream(8, 4), n_s=100)
        expected = receive_voltage(cloud, config, Frequency(1e9)).v
        assert complex(result["re"][0][1], result["im"][0][1]) == pytest.approx(expected)

    def test_analytic_reference_row(self):
        config = make_scenario(frequencies_hz=(1e9,), ensembles=10)
        row = mc_sweep(config, seed=1).for_method("analytic_fixed_count")[0]
        assert row.k_linear == pytest.approx(scenario_k(config, Frequency(1e9)))


@pytest.mark.slow
@pytest.mark.parametrize("n_s", [10, 100, 1000])
def test_monte_carlo_grid_matches_analytic(n_s):
    config = make_scenario(
        radius_m=15.0, population={"kind": "fixed_count", "n_s": n_s},
        frequencies_hz=(0.5e9, 1e9, 2e9, 5e9, 10e9), ensembles=100_000,
    )
    table = mc_sweep(config, seed=10)
    np.testing.assert_allclose(
        table.column("mc", "k_db"), table.column("analytic_fixed_count", "k_db"), atol=0.5
    )
