"""Excitation sources: incident plane wave or delta-gap fed dipole."""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from kscat.core import Frequency
from kscat.mom.assemble import gauss_unit
from kscat.mom.mesh import WireMesh

QUADRATURE_ORDER = 8


class Source(ABC):
    """Something that drives the wire currents."""

    @abstractmethod
    def excitation(self, mesh: WireMesh, f: Frequency) -> np.ndarray:
        """Tested excitation vector V."""
        pass

    @abstractmethod
    def incident_field(self, points: np.ndarray, f: Frequency) -> np.ndarray:
        """Incident E_z at (P, 3) points (zero where the source is a wire)."""
        pass


@dataclass(frozen=True)
class PlaneWave(Source):
    """Plane wave E = E0 p e^(-jk d.r); +x propagation, z polarization by default."""
    direction: tuple[float, float, float] = (1.0, 0.0, 0.0)
    polarization: tuple[float, float, float] = (0.0, 0.0, 1.0)
    amplitude: complex = 1.0

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        p = np.asarray(self.polarization, dtype=float)
        if not np.isclose(np.linalg.norm(d), 1.0) or not np.isclose(np.linalg.norm(p), 1.0):
            raise ValueError("direction and polarization must be unit vectors")
        if abs(float(d @ p)) > 1e-12:
            raise ValueError("polarization must be perpendicular to direction")

    def _field_z(self, points: np.ndarray, k: float) -> np.ndarray:
        phase = np.exp(-1j * k * (np.asarray(points) @ np.asarray(self.direction)))
        return self.amplitude * self.polarization[2] * phase

    def excitation(self, mesh: WireMesh, f: Frequency) -> np.ndarray:
        v = np.zeros(mesh.n_basis, dtype=complex)
        if self.polarization[2] == 0.0:
            return v
        x, w = gauss_unit(QUADRATURE_ORDER)
        delta = mesh.segment_length
        starts = mesh.segment_start_z()
        xy = mesh.segment_xy()
        pts = np.empty((mesh.n_segments, x.size, 3))
        pts[..., :2] = xy[:, None, :]
        pts[..., 2] = starts[:, None] + delta * x[None, :]
        e_z = self._field_z(pts, f.wavenumber)  # (S, n)
        seg_up = e_z @ (w * x * delta)
        seg_down = e_z @ (w * (1.0 - x) * delta)
        v += seg_up[mesh.rising_segment()]
        v += seg_down[mesh.falling_segment()]
        return v

    def incident_field(self, points: np.ndarray, f: Frequency) -> np.ndarray:
        return self._field_z(np.atleast_2d(points), f.wavenumber)


@dataclass(frozen=True)
class GapFedDipole(Source):
    """Delta-gap generator of ``voltage`` volts at the center of the mesh's feed wire."""
    voltage: complex = 1.0

    def excitation(self, mesh: WireMesh, f: Frequency) -> np.ndarray:
        if mesh.feed_wire is None:
            raise ValueError("Mesh has no feed wire for a gap-fed source")
        return self.voltage * mesh.port_vector(mesh.feed_wire).astype(complex)

    def incident_field(self, points: np.ndarray, f: Frequency) -> np.ndarray:
        return np.zeros(np.atleast_2d(points).shape[0], dtype=complex)


def excite(mesh: WireMesh, source: Source, f: Frequency) -> np.ndarray:
    """Excitation vector of ``source`` tested with every basis function."""
    return source.excitation(mesh, f)
