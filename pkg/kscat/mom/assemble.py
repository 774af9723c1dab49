"""Galerkin EFIE impedance matrix for vertical thin wires."""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from kscat.analytic import ETA0
from kscat.config import get_settings
from kscat.core import Frequency
from kscat.mom.mesh import WireMesh

logger = logging.getLogger(__name__)

# Half-basis coefficients on the segment weights {1, s/delta}: rising, falling
HALF_COEFFS = np.array([[0.0, 1.0], [1.0, -1.0]])
# Same-wire segment offsets handled by the singular near table
NEAR_OFFSETS = 2
FAR_ORDER = 3
CLOSE_ORDER = 8
NEAR_ORDER = 24


@lru_cache
def gauss_unit(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def reduced_green(r2: np.ndarray, k: float) -> np.ndarray:
    """e^(-jkR) / (4 pi R) with R^2 already including the wire radius."""
    r = np.sqrt(r2)
    return np.exp(-1j * k * r) / (4.0 * np.pi * r)


@dataclass(frozen=True)
class MomSystem:
    """
    Dense system (Z + loads) I = V of one realization at one frequency.

    ``loads`` holds one lumped impedance per wire (0 for PEC), applied at the
    wire's center segment.
    """
    z: np.ndarray
    frequency: Frequency
    v: np.ndarray | None = None
    loads: np.ndarray | None = None
    source: object | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return int(self.z.shape[0])

    def with_loads(self, loads: np.ndarray) -> "MomSystem":
        return replace(self, loads=np.asarray(loads, dtype=complex))

    def load_matrix(self, mesh: WireMesh) -> np.ndarray:
        """Z plus the port loads: Z_L g g^T on every loaded wire."""
        matrix = self.z.copy()
        if self.loads is None:
            return matrix
        for wire, z_load in enumerate(self.loads):
            if z_load != 0:
                a, b = mesh.port_bases(wire)
                matrix[np.ix_([a, b], [a, b])] += z_load / 4.0
        return matrix


def near_table(delta: float, radius: float, k: float) -> dict[int, np.ndarray]:
    """
    Segment moments for same-wire offsets -2..2.

    The inner integral splits into the static 1/(4 pi R) part, integrated in
    closed form, and the smooth (e^(-jkR) - 1)/(4 pi R) part by Gauss rule.
    """
    x, w = gauss_unit(NEAR_ORDER)
    z = x * delta
    wz = w * delta
    obs = np.stack((np.ones_like(x), x))  # (2, n) weights {1, s/delta}

    forward = {}
    for off in range(-NEAR_OFFSETS, NEAR_OFFSETS + 1):
        z1, z2 = off * delta, (off + 1) * delta
        j0 = np.arcsinh((z2 - z) / radius) - np.arcsinh((z1 - z) / radius)
        j1 = np.sqrt((z2 - z) ** 2 + radius**2) - np.sqrt((z1 - z) ** 2 + radius**2)
        static = np.stack((j0, ((z - z1) * j0 + j1) / delta)) / (4.0 * np.pi)

        zs = z1 + x * delta
        r = np.sqrt((z[:, None] - zs[None, :]) ** 2 + radius**2)
        smooth = (np.exp(-1j * k * r) - 1.0) / (4.0 * np.pi * r)
        src = np.stack((wz, wz * x))
        inner = static + np.einsum("bj,ij->bi", src, smooth)
        forward[off] = np.einsum("ai,i,bi->ab", obs, wz, inner)

    table = {}
    for off in range(0, NEAR_OFFSETS + 1):
        sym = (forward[off] + forward[-off].T) / 2.0
        table[off] = sym
        table[-off] = sym.T
    return table


def _pair_moments(
    obs_z: np.ndarray, obs_xy: np.ndarray, src_z: np.ndarray, src_xy: np.ndarray,
    delta: float, radius: float, k: float, order: int,
) -> np.ndarray:
    """(O, S, 2, 2) segment moments by tensor Gauss rule."""
    x, w = gauss_unit(order)
    weights = np.stack((w * delta, w * x * delta), axis=1)  # (n, 2)
    zo = obs_z[:, None] + delta * x[None, :]
    zs = src_z[:, None] + delta * x[None, :]
    d2 = np.sum((obs_xy[:, None, :] - src_xy[None, :, :]) ** 2, axis=-1)
    dz = zo[:, None, :, None] - zs[None, :, None, :]
    g = reduced_green(d2[:, :, None, None] + dz**2 + radius**2, k)
    return np.einsum("ia,pqij,jb->pqab", weights, g, weights)


def segment_moments(mesh: WireMesh, rows: np.ndarray, k: float, table: dict) -> np.ndarray:
    """Moments between segments ``rows`` (observation) and every segment (source)."""
    delta = mesh.segment_length
    start_z = mesh.segment_start_z()
    xy = mesh.segment_xy()
    wires = mesh.segment_wire()
    local = mesh.segment_local()

    moments = _pair_moments(
        start_z[rows], xy[rows], start_z, xy, delta, mesh.radius, k, FAR_ORDER
    )

    same_wire = wires[rows][:, None] == wires[None, :]
    offset = local[None, :] - local[rows][:, None]
    for off in range(-NEAR_OFFSETS, NEAR_OFFSETS + 1):
        moments[same_wire & (offset == off)] = table[off]

    # Parallel wires closer than two segments: refine with a higher-order rule
    d2 = np.sum((xy[rows][:, None, :] - xy[None, :, :]) ** 2, axis=-1)
    dz = np.abs(start_z[rows][:, None] - start_z[None, :])
    close = ~same_wire & (d2 < (2.0 * delta) ** 2) & (dz < 3.0 * delta)
    if close.any():
        p, q = np.nonzero(close)
        for pi, qi in zip(p, q):
            moments[pi, qi] = _pair_moments(
                start_z[rows[pi]:rows[pi] + 1], xy[rows[pi]:rows[pi] + 1],
                start_z[qi:qi + 1], xy[qi:qi + 1], delta, mesh.radius, k, CLOSE_ORDER,
            )[0, 0]
    return moments


def assemble(mesh: WireMesh, f: Frequency, *, block: int | None = None) -> MomSystem:
    """
    Galerkin EFIE matrix with triangular basis and test functions.

    Z_mn = jk eta <f_m, G f_n> - j (eta/k) <f_m', G f_n'> with the reduced
    kernel R = sqrt(|r - r'|^2 + a^2). Rows are assembled in blocks of bases.

    Args:
        mesh: Wire mesh
        f: Frequency
        block: Bases per assembly block (defaults to ``Settings.mom_assembly_block``)

    Returns:
        MomSystem without excitation
    """
    block = block or get_settings().mom_assembly_block
    k = f.wavenumber
    delta = mesh.segment_length
    table = near_table(delta, mesh.radius, k)
    derivative = np.array([1.0, -1.0]) / delta

    rising = mesh.rising_segment()
    falling = mesh.falling_segment()
    n = mesh.n_basis
    z = np.empty((n, n), dtype=complex)

    for start in range(0, n, block):
        basis = np.arange(start, min(start + block, n))
        segments = np.concatenate((rising[basis], falling[basis]))
        rows, inverse = np.unique(segments, return_inverse=True)
        moments = segment_moments(mesh, rows, k, table)
        # halves[p, q, i, j]: half i of an observation basis against half j of a source basis
        halves = 1j * k * ETA0 * np.einsum("ia,pqab,jb->pqij", HALF_COEFFS, moments, HALF_COEFFS)
        scalar = np.einsum("i,j,pq->pqij", derivative, derivative, moments[..., 0, 0])
        halves -= 1j * (ETA0 / k) * scalar
        r_idx = inverse[: basis.size]
        f_idx = inverse[basis.size:]
        z[basis] = (
            halves[r_idx][:, rising, 0, 0]
            + halves[r_idx][:, falling, 0, 1]
            + halves[f_idx][:, rising, 1, 0]
            + halves[f_idx][:, falling, 1, 1]
        )

    logger.debug(f"Assembled {n}x{n} system for {mesh.n_wires} wire(s) at {f.ghz:g} GHz")
    return MomSystem(z, f)


def decouple(system: MomSystem, mesh: WireMesh) -> MomSystem:
    """Copy of the system with every wire-to-wire coupling block zeroed."""
    z = np.zeros_like(system.z)
    for wire in range(mesh.n_wires):
        s = mesh.wire_bases(wire)
        z[s, s] = system.z[s, s]
    return replace(system, z=z)
