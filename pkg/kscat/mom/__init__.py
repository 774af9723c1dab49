"""Thin-wire Method of Moments: multiple scattering and mutual coupling included."""

from kscat.mom.assemble import MomSystem, assemble, decouple, near_table
from kscat.mom.dump import read_container, write_container
from kscat.mom.excitation import GapFedDipole, PlaneWave, Source, excite
from kscat.mom.mesh import WireMesh, equivalent_radius, mesh_ensemble, single_wire
from kscat.mom.solver import (
    SingularSystemError,
    excited,
    input_impedance,
    matched_load,
    port_admittance,
    port_impedance,
    received_field,
    scattered_field,
    solve,
    solve_and_receive,
    transfer_admittance,
    transmitter_current,
)
from kscat.mom.sweep import mom_k_sweep, simulate_mom_chunk

__all__ = [
    "GapFedDipole",
    "MomSystem",
    "PlaneWave",
    "SingularSystemError",
    "Source",
    "WireMesh",
    "assemble",
    "decouple",
    "equivalent_radius",
    "excite",
    "excited",
    "input_impedance",
    "matched_load",
    "mesh_ensemble",
    "mom_k_sweep",
    "near_table",
    "port_admittance",
    "port_impedance",
    "read_container",
    "received_field",
    "scattered_field",
    "simulate_mom_chunk",
    "single_wire",
    "solve",
    "solve_and_receive",
    "transfer_admittance",
    "transmitter_current",
    "write_container",
]
