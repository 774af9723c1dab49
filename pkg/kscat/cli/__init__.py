"""Command-line front-end; re-exports the sweep table types."""

from kscat.core import COLUMNS, METHODS, SweepRow, SweepTable, read_csv

__all__ = [
    "COLUMNS",
    "METHODS",
    "SweepRow",
    "SweepTable",
    "read_csv",
]
