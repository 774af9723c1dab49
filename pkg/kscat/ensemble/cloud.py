"""Random scatterer clouds: uniform positions and polarization mismatch."""

import logging
import math

import numpy as np

from kscat.analytic import population_count
from kscat.core import CubeRegion, InVolumeDipole, ScattererCloud, ScenarioConfig
from kscat.ensemble.rng import RngStream

logger = logging.getLogger(__name__)

# Draws closer than this fraction of R_s to the receiver (or transmitter) are redrawn
MIN_RADIUS_FRACTION = 1e-6

TWO_PI = 2.0 * math.pi


def _sphere_draw(rng: np.random.Generator, n: int, r_s: float) -> np.ndarray:
    """(n, 3) array of (rho, theta, phi) uniform in a sphere."""
    rho = r_s * np.cbrt(rng.random(n))
    theta = np.arccos(1.0 - 2.0 * rng.random(n))
    phi = rng.uniform(0.0, TWO_PI, n)
    return np.column_stack((rho, theta, phi))


def _cube_draw(rng: np.random.Generator, n: int, side: float) -> np.ndarray:
    """(n, 3) array of (x, y, z) uniform in a cube centered on the receiver."""
    return rng.uniform(-side / 2.0, side / 2.0, (n, 3))


def _to_cartesian(points: np.ndarray, spherical: bool) -> np.ndarray:
    if not spherical:
        return points
    rho, theta, phi = points.T
    sin_t = np.sin(theta)
    return np.column_stack(
        (rho * sin_t * np.cos(phi), rho * sin_t * np.sin(phi), rho * np.cos(theta))
    )


def _too_close(xyz: np.ndarray, config: ScenarioConfig, limit: float) -> np.ndarray:
    bad = np.linalg.norm(xyz, axis=1) < limit
    placement = config.geometry.tx_placement
    if isinstance(placement, InVolumeDipole):
        tx = np.array([placement.r_t_m, 0.0, 0.0])
        bad |= np.linalg.norm(xyz - tx, axis=1) < limit
    return bad


def sample_cloud(
    config: ScenarioConfig, rng: RngStream, n_s: int | None = None
) -> ScattererCloud:
    """
    Draw one scatterer cloud.

    Sphere regions use inverse-CDF sampling (rho = R_s u^(1/3),
    theta = arccos(1 - 2u), phi uniform); cube regions draw uniformly in the
    cube. The mismatch angle psi is uniform on [0, 2pi).

    Args:
        config: Scenario
        rng: Random stream for this realization
        n_s: Number of scatterers; defaults to the largest count over the
            frequency grid so per-frequency clouds are prefixes of one draw

    Returns:
        ScattererCloud with the number of degenerate redraws recorded
    """
    if n_s is None:
        n_s = max(population_count(config, f) for f in config.frequencies)
    generator = rng.generator()
    region = config.geometry.region
    spherical = not isinstance(region, CubeRegion)
    limit = MIN_RADIUS_FRACTION * config.geometry.analysis_radius

    def draw(n: int) -> np.ndarray:
        if spherical:
            return _sphere_draw(generator, n, region.radius_m)
        return _cube_draw(generator, n, region.side_m)

    points = draw(n_s)
    psi = generator.uniform(0.0, TWO_PI, n_s)

    redraws = 0
    bad = np.flatnonzero(_too_close(_to_cartesian(points, spherical), config, limit))
    while bad.size:
        redraws += int(bad.size)
        points[bad] = draw(bad.size)
        bad = bad[_too_close(_to_cartesian(points[bad], spherical), config, limit)]
    if redraws:
        logger.warning(f"Redrew {redraws} scatterer(s) too close to a station antenna")

    if spherical:
        return ScattererCloud(points[:, 0], points[:, 1], points[:, 2], psi, redraws=redraws)
    return ScattererCloud.from_cartesian(points, psi, redraws=redraws)
