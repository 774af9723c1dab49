"""kscat subcommands: analytic, mc, mom, xsec-table and fit."""

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from kscat import __version__
from kscat.analytic import AnalyticMethod, analytic_sweep, avg_dipole_xsec
from kscat.core import (
    DIPOLE_LENGTH_GRID,
    ScenarioConfig,
    ScenarioError,
    SweepTable,
    config_hash,
    effective_seed,
    load_scenario,
    to_db,
    validate,
    with_overrides,
    with_scatterer_load,
    with_tx_placement,
)
from kscat.ensemble import mc_sweep
from kscat.mom import mom_k_sweep
from kscat.stats import fit_rician, ks_critical_value

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2

FIT_COLUMNS = ("k_linear", "k_db", "p_r", "method", "ks_distance", "ks_critical_1pct", "n")
XSEC_COLUMNS = ("l_over_lambda", "sigma_avg_over_lambda2")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _freq_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) * 1e9 for item in text.split(",") if item.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Invalid frequency list: {text}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kscat", description="Rician K-factor of random scatterer clouds vs frequency"
    )
    parser.add_argument("--version", action="version", version=f"kscat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_parser(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, required=True, help="Scenario JSON file")
        p.add_argument("--out", type=Path, default=None, help="Output CSV (stdout if omitted)")
        p.add_argument("--freq-ghz", type=_freq_list, default=None,
                       help="Comma-separated frequencies in GHz")
        p.add_argument("--seed", type=_u64, default=None)
        return p

    analytic = scenario_parser("analytic", "Closed-form K-factor curves")
    analytic.add_argument("--method", type=str, default=None,
                          choices=[m.value for m in AnalyticMethod])
    analytic.set_defaults(handler=cmd_analytic)

    for name, help_text, handler in (
        ("mc", "Monte-Carlo K-factor sweep", cmd_mc),
        ("mom", "Method-of-Moments K-factor sweep", cmd_mom),
    ):
        p = scenario_parser(name, help_text)
        p.add_argument("--ensembles", type=int, default=None)
        p.add_argument("--workers", type=int, default=None)
        if name == "mom":
            p.add_argument("--tx", type=str, default=None, choices=["planewave", "involume"])
            p.add_argument("--load", type=str, default=None, choices=["pec", "matched"])
        p.set_defaults(handler=handler)

    xsec = sub.add_parser("xsec-table", help="Average cross-section of dipoles on the length grid")
    xsec.add_argument("--out", type=Path, default=None)
    xsec.set_defaults(handler=cmd_xsec_table)

    fit = sub.add_parser("fit", help="Fit a Rician distribution to envelope samples")
    fit.add_argument("--envelopes", type=Path, required=True, help="CSV of envelope samples")
    fit.add_argument("--ml", action="store_true", default=False,
                     help="Refine K by maximum likelihood")
    fit.add_argument("--out", type=Path, default=None)
    fit.set_defaults(handler=cmd_fit)
    return parser


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    """Load the scenario, apply flag overrides and reject model violations."""
    try:
        config = load_scenario(args.config)
    except OSError as e:
        raise ScenarioError(f"Cannot read scenario {args.config}: {e}") from e
    config = with_overrides(
        config,
        frequencies_hz=args.freq_ghz,
        ensembles=getattr(args, "ensembles", None),
    )
    validate(config).raise_for_errors()
    return config


def _header(command: str, config: ScenarioConfig, seed: int) -> dict[str, object]:
    return {
        "kscat_version": __version__,
        "command": command,
        "config_hash": config_hash(config),
        "seed": seed,
    }


def cmd_analytic(args: argparse.Namespace) -> str:
    config = _scenario(args)
    methods = [AnalyticMethod(args.method)] if args.method else None
    seed = effective_seed(config, args.seed)
    table = analytic_sweep(config, methods=methods, seed=seed)
    return table.to_csv(_header("analytic", config, seed))


def cmd_mc(args: argparse.Namespace) -> str:
    config = _scenario(args)
    seed = effective_seed(config, args.seed)
    table = mc_sweep(config, seed=seed, workers=args.workers)
    return table.to_csv(_header("mc", config, seed))


def cmd_mom(args: argparse.Namespace) -> str:
    config = _scenario(args)
    if args.tx == "planewave":
        config = with_tx_placement(config, {"kind": "far_field_plane_wave"})
    elif args.tx == "involume":
        r_t = config.geometry.analysis_radius / 2.0
        config = with_tx_placement(config, {"kind": "in_volume_dipole", "r_t_m": r_t})
    if args.load == "pec":
        config = with_scatterer_load(config, None)
    elif args.load == "matched":
        config = with_scatterer_load(config, {"kind": "matched"})
    seed = effective_seed(config, args.seed)
    table: SweepTable = mom_k_sweep(config, seed=seed, workers=args.workers)
    return table.to_csv(_header("mom", config, seed))


def cmd_xsec_table(args: argparse.Namespace) -> str:
    buffer = io.StringIO()
    buffer.write(f"# kscat_version={__version__}\n# command=xsec-table\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(XSEC_COLUMNS)
    for l_ratio in DIPOLE_LENGTH_GRID:
        writer.writerow([f"{l_ratio:g}", f"{avg_dipole_xsec(l_ratio):.4f}"])
    return buffer.getvalue()


def read_envelopes(text: str) -> np.ndarray:
    """
    Envelope samples from CSV text.

    '#' lines are skipped. A non-numeric first row is a header; the
    ``envelope`` column is used when present, otherwise the first column.
    """
    rows = [row for row in csv.reader(
        line for line in text.splitlines() if line.strip() and not line.startswith("#")
    )]
    if not rows:
        raise ScenarioError("Envelope file has no samples")
    column = 0
    try:
        float(rows[0][0])
    except ValueError:
        names = [name.strip() for name in rows[0]]
        column = names.index("envelope") if "envelope" in names else 0
        rows = rows[1:]
    try:
        return np.array([float(row[column]) for row in rows], dtype=float)
    except (ValueError, IndexError) as e:
        raise ScenarioError(f"Malformed envelope file: {e}") from e


def cmd_fit(args: argparse.Namespace) -> str:
    try:
        text = Path(args.envelopes).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"Cannot read envelopes {args.envelopes}: {e}") from e
    envelopes = read_envelopes(text)
    result = fit_rician(envelopes, ml=args.ml)
    k = result.params.k

    buffer = io.StringIO()
    buffer.write(f"# kscat_version={__version__}\n# command=fit\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FIT_COLUMNS)
    writer.writerow([
        repr(float(k)),
        repr(float(to_db(k))),
        repr(float(result.params.p_r)),
        result.method.value,
        repr(float(result.gof_statistic)),
        repr(ks_critical_value(result.n, 0.01)),
        result.n,
    ])
    return buffer.getvalue()


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8", newline="")
    logger.info(f"Wrote {out}")


def run(argv: list[str] | None = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        0 on success, 1 for invalid input (usage, unreadable or invalid
        scenario), 2 when the computation itself fails
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID

    try:
        text = args.handler(args)
    except (ScenarioError, ValidationError) as e:
        logger.error(f"Invalid input for {args.command}: {e}")
        return EXIT_INVALID
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        return EXIT_RUNTIME

    try:
        _emit(text, args.out)
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        return EXIT_RUNTIME
    return EXIT_OK
