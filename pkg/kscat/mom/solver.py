"""LU solution, port quantities and radiated fields of wire currents."""

import logging
import warnings
from dataclasses import replace
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from kscat.analytic import ETA0
from kscat.core import Frequency
from kscat.mom.assemble import MomSystem, assemble, gauss_unit
from kscat.mom.excitation import GapFedDipole, Source, excite
from kscat.mom.mesh import WireMesh, single_wire

logger = logging.getLogger(__name__)

FIELD_ORDER = 8


class SingularSystemError(RuntimeError):
    """The MoM matrix could not be factorized (e.g. near-touching wires)."""


def _factor(matrix: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        try:
            lu = lu_factor(matrix, check_finite=True)
        except (LinAlgWarning, ValueError, np.linalg.LinAlgError) as e:
            raise SingularSystemError(f"LU factorization failed: {e}") from e
    return lu


def _solve(lu, rhs: np.ndarray) -> np.ndarray:
    x = lu_solve(lu, rhs)
    if not np.all(np.isfinite(x)):
        raise SingularSystemError("Non-finite currents; the system is singular")
    return x


def excited(system: MomSystem, mesh: WireMesh, source: Source) -> MomSystem:
    """Attach the excitation of ``source`` to a system."""
    return replace(system, v=excite(mesh, source, system.frequency), source=source)


def solve(system: MomSystem, mesh: WireMesh) -> np.ndarray:
    """Basis currents I of (Z + loads) I = V."""
    if system.v is None:
        raise ValueError("System has no excitation")
    if system.n == 0:
        return np.zeros(0, dtype=complex)
    return _solve(_factor(system.load_matrix(mesh)), system.v)


def scattered_field(
    points: np.ndarray, currents: np.ndarray, mesh: WireMesh, f: Frequency
) -> np.ndarray:
    """
    E_z radiated by the wire currents at (P, 3) points.

    E = -jk eta int I t G ds - j (eta/k) int (dI/ds) grad G ds with the
    current linear on each segment.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    k = f.wavenumber
    delta = mesh.segment_length
    x, w = gauss_unit(FIELD_ORDER)

    nodes = mesh.node_currents(currents)
    i_start = nodes[:, :-1].reshape(-1)
    i_end = nodes[:, 1:].reshape(-1)
    slope = (i_end - i_start) / delta

    src = np.empty((mesh.n_segments, x.size, 3))
    src[..., :2] = mesh.segment_xy()[:, None, :]
    src[..., 2] = mesh.segment_start_z()[:, None] + delta * x[None, :]
    current = i_start[:, None] + (i_end - i_start)[:, None] * x[None, :]  # (S, n)

    out = np.empty(points.shape[0], dtype=complex)
    for idx, point in enumerate(points):
        diff = point[None, None, :] - src
        r = np.sqrt(np.sum(diff**2, axis=-1) + mesh.radius**2)
        g = np.exp(-1j * k * r) / (4.0 * np.pi * r)
        grad_z = -(1.0 + 1j * k * r) * np.exp(-1j * k * r) / (4.0 * np.pi * r**3) * diff[..., 2]
        vector = -1j * k * ETA0 * np.sum(current * g * (w * delta))
        scalar = -1j * (ETA0 / k) * np.sum(slope[:, None] * grad_z * (w * delta))
        out[idx] = vector + scalar
    return out


def received_field(system: MomSystem, mesh: WireMesh, currents: np.ndarray,
                   rx_point=(0.0, 0.0, 0.0)) -> complex:
    """Incident plus re-radiated E_z at the receiver."""
    point = np.asarray(rx_point, dtype=float)[None, :]
    incident = system.source.incident_field(point, system.frequency)[0] if system.source else 0j
    return complex(incident + scattered_field(point, currents, mesh, system.frequency)[0])


def solve_and_receive(system: MomSystem, mesh: WireMesh, rx_point=(0.0, 0.0, 0.0)) -> complex:
    """
    Solve the excited system and return the vertical field at ``rx_point``.

    Raises:
        SingularSystemError: if the LU factorization fails
    """
    return received_field(system, mesh, solve(system, mesh), rx_point)


def port_admittance(system: MomSystem, mesh: WireMesh) -> np.ndarray:
    """
    Admittance matrix Y[i, j] = gap current of wire i per volt at the gap of wire j.

    Loads in ``system`` are included.
    """
    lu = _factor(system.load_matrix(mesh))
    ports = np.column_stack([mesh.port_vector(w) for w in range(mesh.n_wires)])
    return ports.T @ _solve(lu, ports.astype(complex))


def transfer_admittance(
    system: MomSystem, mesh: WireMesh, source_wire: int, probe_wire: int
) -> complex:
    """Gap current on ``probe_wire`` per volt applied at the gap of ``source_wire``."""
    lu = _factor(system.load_matrix(mesh))
    current = _solve(lu, mesh.port_vector(source_wire).astype(complex))
    return complex(mesh.port_vector(probe_wire) @ current)


def port_impedance(system: MomSystem, mesh: WireMesh, wire: int) -> complex:
    """Input impedance V / I_gap seen at the gap of ``wire``."""
    return 1.0 / transfer_admittance(system, mesh, wire, wire)


@lru_cache(maxsize=256)
def _isolated_impedance(f_hz: float, n_seg: int, length: float | None) -> complex:
    f = Frequency(f_hz)
    mesh = single_wire(f, n_seg=n_seg, length=length, fed=True)
    return port_impedance(assemble(mesh, f), mesh, 0)


def input_impedance(
    f: Frequency, *, n_seg: int | None = None, length: float | None = None
) -> complex:
    """Input impedance of an isolated center-fed wire (half-wave by default)."""
    mesh = single_wire(f, n_seg=n_seg, length=length)
    return _isolated_impedance(f.value, mesh.n_seg, length)


def matched_load(f: Frequency, *, n_seg: int | None = None, length: float | None = None) -> complex:
    """Conjugate of the isolated wire's input impedance."""
    return input_impedance(f, n_seg=n_seg, length=length).conjugate()


def transmitter_current(system: MomSystem, mesh: WireMesh, voltage: complex = 1.0) -> np.ndarray:
    """Currents of a mesh driven only by its feed wire."""
    return solve(excited(system, mesh, GapFedDipole(voltage)), mesh)
