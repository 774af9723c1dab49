"""SweepTable: per-frequency K-factor rows and their CSV form."""

import csv
import io
import math
from dataclasses import astuple, dataclass, field, fields
from pathlib import Path

import numpy as np

METHODS = (
    "analytic_fixed_count",
    "analytic_fixed_density",
    "analytic_lower_bound",
    "mc",
    "mom",
)


@dataclass(frozen=True)
class SweepRow:
    """One K-factor result at one frequency."""
    frequency_hz: float
    method: str
    k_linear: float
    k_db: float
    stderr_db: float
    n_s: int
    r_s_m: float
    sigma_avg_m2: float
    ensembles: int
    seed: int

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown method: {self.method}. Available: {list(METHODS)}")
        for name in ("frequency_hz", "r_s_m", "sigma_avg_m2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def sort_key(self) -> tuple[int, float]:
        return (METHODS.index(self.method), self.frequency_hz)


COLUMNS = tuple(f.name for f in fields(SweepRow))


def _format(value) -> str:
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


@dataclass(frozen=True)
class SweepTable:
    """Rows sorted by (method, frequency) plus run metadata counters."""
    rows: tuple[SweepRow, ...] = ()
    metadata: dict[str, int | float | str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows, key=lambda r: r.sort_key)))

    def __len__(self) -> int:
        return len(self.rows)

    def for_method(self, method: str) -> list[SweepRow]:
        return [r for r in self.rows if r.method == method]

    def methods(self) -> list[str]:
        return [m for m in METHODS if any(r.method == m for r in self.rows)]

    def column(self, method: str, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.for_method(method)], dtype=float)

    def deviation_db(self, method: str, reference: str) -> np.ndarray:
        """k_db of ``method`` minus k_db of ``reference`` at their shared frequencies."""
        ref = {r.frequency_hz: r.k_db for r in self.for_method(reference)}
        deltas = [r.k_db - ref[r.frequency_hz] for r in self.for_method(method)
                  if r.frequency_hz in ref]
        if not deltas:
            raise ValueError(f"No shared frequencies between {method} and {reference}")
        return np.array(deltas, dtype=float)

    def rms_deviation_db(self, method: str, reference: str) -> float:
        """Root-mean-square dB gap between two methods over their shared frequencies."""
        return float(np.sqrt(np.mean(self.deviation_db(method, reference) ** 2)))

    def to_csv(self, header: dict[str, object] | None = None) -> str:
        """
        Render as CSV: '# key=value' lines, the column header, then rows.

        Floats use repr so values round-trip exactly; infinities are 'inf'.
        """
        buffer = io.StringIO()
        for key, value in (header or {}).items():
            buffer.write(f"# {key}={value}\n")
        for key in sorted(self.metadata):
            buffer.write(f"# {key}={self.metadata[key]}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in self.rows:
            writer.writerow([_format(v) for v in astuple(row)])
        return buffer.getvalue()

    def write_csv(self, path: str | Path, header: dict[str, object] | None = None) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(header), encoding="utf-8", newline="")
        return path


def read_csv(text: str) -> tuple[dict[str, str], SweepTable]:
    """Parse CSV produced by ``SweepTable.to_csv`` into (header, table)."""
    header: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            header[key] = value
        elif line:
            body.append(line)
    reader = csv.DictReader(body)
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError(f"Unexpected CSV columns: {reader.fieldnames}")
    types = {f.name: f.type for f in fields(SweepRow)}
    rows = []
    for record in reader:
        values = {}
        for name, raw in record.items():
            kind = types[name]
            values[name] = raw if kind in (str, "str") else (
                int(raw) if kind in (int, "int") else float(raw)
            )
        rows.append(SweepRow(**values))
    return header, SweepTable(tuple(rows))
