"""Straight vertical thin-wire meshes for ensembles of dipoles."""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from kscat.config import get_settings
from kscat.core import (
    CubeRegion,
    Frequency,
    InVolumeDipole,
    ScattererCloud,
    ScenarioConfig,
    ScenarioError,
)

logger = logging.getLogger(__name__)

# Strip of width w is modelled as a wire of radius w/4; strips are lambda/100 wide
STRIP_WIDTH_WAVELENGTHS = 1.0 / 100.0
STRIP_TO_RADIUS = 0.25


def equivalent_radius(wavelength: float) -> float:
    return STRIP_TO_RADIUS * STRIP_WIDTH_WAVELENGTHS * wavelength


@dataclass(frozen=True)
class WireMesh:
    """
    Vertical wires of equal length, each split into ``n_seg`` equal segments.

    Wire ``w`` carries ``n_seg - 1`` triangular basis functions; basis ``b``
    rises over segment ``b`` and falls over segment ``b + 1``.
    """
    centers: np.ndarray
    length: float
    radius: float
    n_seg: int
    feed_wire: int | None = None
    overlap_redraws: int = field(default=0, compare=False)

    def __post_init__(self):
        centers = np.array(self.centers, dtype=float).reshape(-1, 3)
        centers.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        if self.n_seg < 3 or self.n_seg % 2 == 0:
            raise ValueError(f"n_seg must be odd and at least 3, got {self.n_seg}")
        if not (self.length > 0.0 and self.radius > 0.0):
            raise ValueError("Wire length and radius must be positive")
        if self.feed_wire is not None and not 0 <= self.feed_wire < self.n_wires:
            raise ValueError(f"feed_wire {self.feed_wire} outside [0, {self.n_wires})")
        if self.radius > self.segment_length / 4.0:
            logger.warning(
                f"Thin-wire kernel questionable: radius {self.radius:.3g} m vs "
                f"segment length {self.segment_length:.3g} m"
            )

    @property
    def n_wires(self) -> int:
        return int(self.centers.shape[0])

    @property
    def bases_per_wire(self) -> int:
        return self.n_seg - 1

    @property
    def n_basis(self) -> int:
        return self.n_wires * self.bases_per_wire

    @property
    def n_segments(self) -> int:
        return self.n_wires * self.n_seg

    @property
    def segment_length(self) -> float:
        return self.length / self.n_seg

    @property
    def center_segment(self) -> int:
        return self.n_seg // 2

    @property
    def scatterer_wires(self) -> list[int]:
        return [w for w in range(self.n_wires) if w != self.feed_wire]

    def segment_wire(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_wires), self.n_seg)

    def segment_local(self) -> np.ndarray:
        return np.tile(np.arange(self.n_seg), self.n_wires)

    def segment_start_z(self) -> np.ndarray:
        """z coordinate of the lower end of every segment."""
        bottom = self.centers[:, 2] - self.length / 2.0
        return (bottom[:, None] + self.segment_length * np.arange(self.n_seg)[None, :]).reshape(-1)

    def segment_xy(self) -> np.ndarray:
        return np.repeat(self.centers[:, :2], self.n_seg, axis=0)

    def rising_segment(self) -> np.ndarray:
        """Global segment index of the rising half of every basis."""
        wires = np.repeat(np.arange(self.n_wires), self.bases_per_wire)
        local = np.tile(np.arange(self.bases_per_wire), self.n_wires)
        return wires * self.n_seg + local

    def falling_segment(self) -> np.ndarray:
        return self.rising_segment() + 1

    def port_bases(self, wire: int) -> tuple[int, int]:
        """The two bases sharing the center (gap) segment of ``wire``."""
        first = wire * self.bases_per_wire + self.center_segment - 1
        return first, first + 1

    def port_vector(self, wire: int) -> np.ndarray:
        """Gap vector g: V g excites the gap and g^T I is the gap current."""
        g = np.zeros(self.n_basis)
        g[list(self.port_bases(wire))] = 0.5
        return g

    def wire_bases(self, wire: int) -> slice:
        return slice(wire * self.bases_per_wire, (wire + 1) * self.bases_per_wire)

    def node_currents(self, currents: np.ndarray) -> np.ndarray:
        """(n_wires, n_seg + 1) currents at segment nodes, zero at wire ends."""
        nodes = np.zeros((self.n_wires, self.n_seg + 1), dtype=complex)
        nodes[:, 1:-1] = np.asarray(currents).reshape(self.n_wires, self.bases_per_wire)
        return nodes


def _clip_to_region(centers: np.ndarray, config: ScenarioConfig, length: float) -> np.ndarray:
    region = config.geometry.region
    if isinstance(region, CubeRegion):
        half = region.side_m / 2.0
        limit = max(half - length / 2.0, 0.0)
        centers[:, 2] = np.clip(centers[:, 2], -limit, limit)
    return centers


def _draw_centers(rng: np.random.Generator, n: int, config: ScenarioConfig) -> np.ndarray:
    region = config.geometry.region
    if isinstance(region, CubeRegion):
        return rng.uniform(-region.side_m / 2.0, region.side_m / 2.0, (n, 3))
    r_s = region.radius_m
    rho = r_s * np.cbrt(rng.random(n))
    cos_t = 1.0 - 2.0 * rng.random(n)
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    sin_t = np.sqrt(1.0 - cos_t**2)
    return np.column_stack((rho * sin_t * np.cos(phi), rho * sin_t * np.sin(phi), rho * cos_t))


def _overlapping(
    centers: np.ndarray, radius: float, length: float, keep: int | None
) -> list[int]:
    """Wires to move so that no two wires touch; wire ``keep`` never moves."""
    tree = cKDTree(centers[:, :2])
    clash = set()
    for i, j in sorted(tree.query_pairs(2.0 * radius)):
        if abs(centers[i, 2] - centers[j, 2]) < length:
            clash.add(i if j == keep else j)
    return sorted(clash)


def wire_length(config: ScenarioConfig, f: Frequency) -> float:
    """Dipole length at frequency f (resonant wires are rebuilt at every frequency)."""
    if not config.scatterer.is_dipole:
        raise ScenarioError("The MoM solver needs dipole scatterers, not a fixed cross-section")
    return config.scatterer.kind.l_over_lambda * f.wavelength


def mesh_ensemble(
    cloud: ScattererCloud,
    config: ScenarioConfig,
    f: Frequency,
    *,
    rng: np.random.Generator | None = None,
    n_seg: int | None = None,
) -> WireMesh:
    """
    One vertical wire per scatterer, plus the transmitting dipole when it sits
    inside the region (appended last and marked as ``feed_wire``).

    Touching wires (horizontal spacing below 2a with overlapping heights)
    are redrawn uniformly in the region; the redraw count is kept on the mesh.

    Args:
        cloud: Scatterer positions
        config: Scenario
        f: Frequency
        rng: Generator for overlap redraws
        n_seg: Segments per wire (defaults to ``Settings.mom_segments``)
    """
    n_seg = n_seg or get_settings().mom_segments
    length = wire_length(config, f)
    radius = equivalent_radius(f.wavelength)

    centers = _clip_to_region(cloud.cartesian(), config, length)
    feed_wire = None
    placement = config.geometry.tx_placement
    if isinstance(placement, InVolumeDipole):
        if abs(length - f.wavelength / 2.0) > 1e-12 * f.wavelength:
            raise ScenarioError("An in-volume transmitter needs half-wave scatterers")
        centers = np.vstack((centers, [placement.r_t_m, 0.0, 0.0]))
        feed_wire = centers.shape[0] - 1

    redraws = 0
    clash = _overlapping(centers, radius, length, feed_wire)
    while clash:
        if rng is None:
            raise ScenarioError(f"{len(clash)} overlapping wire(s) and no generator to redraw")
        redraws += len(clash)
        centers[clash] = _clip_to_region(_draw_centers(rng, len(clash), config), config, length)
        clash = _overlapping(centers, radius, length, feed_wire)
    if redraws:
        logger.warning(f"Redrew {redraws} overlapping wire(s) at {f.ghz:g} GHz")

    return WireMesh(centers, length, radius, n_seg, feed_wire=feed_wire, overlap_redraws=redraws)


def single_wire(f: Frequency, *, center=(0.0, 0.0, 0.0), length: float | None = None,
                n_seg: int | None = None, fed: bool = False) -> WireMesh:
    """Isolated vertical wire, half-wave by default."""
    return WireMesh(
        np.array([center], dtype=float),
        length or f.wavelength / 2.0,
        equivalent_radius(f.wavelength),
        n_seg or get_settings().mom_segments,
        feed_wire=0 if fed else None,
    )
