"""Command line front end.

Subcommands generate constellations, estimate mutual information at one
SNR or over a sweep, report gaps to capacity, compare the shaped
families, and run the built-in selftest.  Output is CSV (header plus
rows, floats rendered with shortest round-trip digits) or JSON (the full
resolved run configuration plus rows), written to a file or stdout.
Identical configurations always reproduce byte-identical output.

Exit status: 0 on success, 2 for configuration errors, 3 for runtime or
search failures.

Environment: ``AENSHAPE_SEED`` and ``AENSHAPE_SHARDS`` override the
built-in defaults for ``--seed`` and ``--shards``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, analysis, channel, constellation
from .mi import mi_bicm_mc, mi_bicm_quadrature, mi_cm_mc, mi_cm_quadrature
from .selftest import run_selftest

FIG1_SIZES = (4, 8, 16, 32, 64, 128, 256)
FIG2_SIZES = (256, 512, 1024, 2048)

DEFAULT_SEED = 0
DEFAULT_GRID = (0.0, 30.0, 0.25)


class ConfigError(ValueError):
    pass


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _render_json(config: dict, header: list[str], rows: list[list]) -> str:
    doc = {
        "tool": "aenshape",
        "version": __version__,
        "config": config,
        "rows": [dict(zip(header, row)) for row in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(args, config: dict, header: list[str], rows: list[list]) -> None:
    text = (_render_json(config, header, rows) if args.format == "json"
            else _render_csv(header, rows))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="\n") as handle:
            handle.write(text)


def _config_dict(args, command: str) -> dict:
    skip = {"func", "output", "lam"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    cfg["command"] = command
    cfg["output"] = args.output
    if hasattr(args, "lam"):
        cfg["lambda"] = args.lam
    return cfg


def _resolve_constellation(args):
    family = args.family
    if family == "capacity":
        return None, None
    if args.m is None:
        raise ConfigError("--m is required for a constellation family")
    if family == "martinez" and args.lam is None:
        args.lam = analysis.DEFAULT_SHAPE_EXPONENT
    if family != "martinez" and args.lam is not None:
        raise ConfigError("--lambda applies to the martinez family only")
    try:
        cons = analysis.make_constellation(family, args.m, args.lam)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    labeling = None
    if getattr(args, "scheme", None) == "bicm":
        try:
            labeling = constellation.gray_labels(args.m)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return cons, labeling


def cmd_constellation(args) -> int:
    cons, labeling = _resolve_constellation(args)
    if cons is None:
        raise ConfigError("the capacity pseudo-family has no symbol table")
    config = _config_dict(args, "constellation")
    if labeling is None:
        header = ["index", "amplitude"]
        rows = [[i, float(x)] for i, x in enumerate(cons.symbols)]
    else:
        header = ["index", "amplitude", "label"]
        strings = labeling.bitstrings()
        rows = [[i, float(x), strings[i]] for i, x in enumerate(cons.symbols)]
    config.update(beta=cons.beta, family=cons.family)
    _emit(args, config, header, rows)
    return 0


def _estimate(args, cons, labeling, snr_db: float):
    gamma = channel.db_to_linear(snr_db)
    if cons is None:
        value = channel.capacity(gamma)
        return value, 0.0, 0, "quadrature"
    if args.method == "quadrature":
        if args.scheme == "bicm":
            est = mi_bicm_quadrature(cons, labeling, gamma, args.n_nodes)
        else:
            est = mi_cm_quadrature(cons, gamma, args.n_nodes)
    elif args.scheme == "bicm":
        est = mi_bicm_mc(cons, labeling, gamma, args.n_samples, args.seed,
                         n_shards=args.shards)
    else:
        est = mi_cm_mc(cons, gamma, args.n_samples, args.seed,
                       n_shards=args.shards)
    return est.value, est.std_error, est.n_samples, est.method


def cmd_mi(args) -> int:
    cons, labeling = _resolve_constellation(args)
    config = _config_dict(args, "mi")
    value, std_error, count, method = _estimate(args, cons, labeling, args.snr_db)
    header = ["snr_db", "mi", "std_error", "n_samples", "seed", "method"]
    rows = [[float(args.snr_db), value, std_error, count, args.seed, method]]
    _emit(args, config, header, rows)
    return 0


def cmd_sweep(args) -> int:
    cons, labeling = _resolve_constellation(args)
    config = _config_dict(args, "sweep")
    start, stop, step = args.snr_start, args.snr_stop, args.snr_step
    if step <= 0 or stop < start:
        raise ConfigError("sweep grid must have positive step and stop >= start")
    count = int(round((stop - start) / step)) + 1
    grid = [start + i * step for i in range(count) if start + i * step <= stop + 1e-12]
    result = analysis.sweep(args.scheme, cons, labeling, grid,
                            n_samples=args.n_samples, seed=args.seed,
                            n_shards=args.shards, method=args.method,
                            n_nodes=args.n_nodes)
    header = ["snr_db", "mi", "std_error", "n_samples", "seed", "method"]
    rows = [[snr_db, est.value, est.std_error, est.n_samples, args.seed, est.method]
            for snr_db, est in result.rows]
    _emit(args, config, header, rows)
    return 0


GAP_HEADER = ["scheme", "family", "m", "lambda", "target_rate",
              "snr_at_rate_db", "capacity_snr_db", "gap_db"]


def _gap_row(args, family, m_symbols, lam, target) -> list:
    cons = analysis.make_constellation(family, m_symbols, lam) if family != "capacity" else None
    labeling = None
    if args.scheme == "bicm" and cons is not None:
        labeling = constellation.gray_labels(m_symbols)
    report = analysis.gap_to_capacity_db(
        args.scheme, cons, labeling, target=target, tol_db=args.tol_db,
        n_samples=args.n_samples, seed=args.seed, n_shards=args.shards,
        method=args.method, n_nodes=args.n_nodes)
    return [args.scheme, family, m_symbols, lam, float(target),
            report.snr_at_rate_db, report.capacity_snr_db, report.gap_db]


def cmd_gap(args) -> int:
    cons, _ = _resolve_constellation(args)
    config = _config_dict(args, "gap")
    family = args.family
    rows = [_gap_row(args, family,
                     None if cons is None else args.m,
                     None if cons is None else args.lam,
                     args.target)]
    _emit(args, config, GAP_HEADER, rows)
    return 0


def cmd_compare(args) -> int:
    config = _config_dict(args, "compare")
    if args.recipe == "fig2":
        # near-capacity behavior of large alphabets, one gap row per set
        args.scheme = "cm"
        targets = args.targets or [4.0]
        sizes = args.m_set or FIG2_SIZES
        rows = []
        for family in ("log", "martinez"):
            lam = analysis.DEFAULT_SHAPE_EXPONENT if family == "martinez" else None
            for m_symbols in sizes:
                for target in targets:
                    rows.append(_gap_row(args, family, m_symbols, lam, target))
        _emit(args, config, GAP_HEADER, rows)
        return 0

    if args.recipe == "fig1":
        args.scheme = "cm"
        targets = args.targets or [1.0, 2.0, 3.0, 4.0, 5.0]
    elif args.recipe == "fig3":
        args.scheme = "bicm"
        targets = args.targets or [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    else:
        if args.scheme is None:
            raise ConfigError("compare needs --recipe or --scheme")
        if not args.targets:
            raise ConfigError("compare needs at least one --target")
        targets = args.targets
    m_values = args.m_set or list(FIG1_SIZES)
    comparisons = analysis.compare_families(
        targets, args.scheme, m_values, lam=args.lam, tol_db=args.tol_db,
        n_samples=args.n_samples, seed=args.seed, n_shards=args.shards,
        method=args.method, n_nodes=args.n_nodes)
    header = ["target_rate", "log_m", "log_snr_db", "martinez_m",
              "martinez_snr_db", "delta_db"]
    rows = [[c.target_rate, c.log_m, c.log_snr_db, c.martinez_m,
             c.martinez_snr_db, c.delta_db] for c in comparisons]
    _emit(args, config, header, rows)
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest()
    for result in results:
        print(result.line())
    failures = [r for r in results if not r.passed]
    print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return 3 if failures else 0


def _add_common(parser, *, with_scheme=True, with_estimation=True):
    if with_scheme:
        parser.add_argument("--scheme", choices=("cm", "bicm"), default=None)
    parser.add_argument("--family",
                        choices=("uniform", "martinez", "log", "capacity"))
    parser.add_argument("--m", type=int, default=None)
    parser.add_argument("--lambda", dest="lam", type=float, default=None,
                        help="martinez shape exponent (default 1.618)")
    if with_estimation:
        parser.add_argument("--method", choices=("monte_carlo", "quadrature"),
                            default="monte_carlo")
        parser.add_argument("--n-samples", type=int,
                            default=analysis.DEFAULT_SAMPLES)
        parser.add_argument("--n-nodes", type=int, default=512)
        parser.add_argument("--seed", type=int,
                            default=_env_int("AENSHAPE_SEED", DEFAULT_SEED))
        parser.add_argument("--shards", type=int,
                            default=_env_int("AENSHAPE_SHARDS",
                                             os.cpu_count() or 1))
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", default="-",
                        help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aenshape",
        description="Shaped constellations and mutual information for the "
                    "additive exponential noise channel")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constellation", help="emit a symbol table")
    _add_common(p, with_estimation=False)
    p.set_defaults(func=cmd_constellation)

    p = sub.add_parser("mi", help="mutual information at one SNR")
    _add_common(p)
    p.add_argument("--snr-db", type=float, required=True)
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("sweep", help="mutual information over an SNR grid")
    _add_common(p)
    p.add_argument("--snr-start", type=float, default=DEFAULT_GRID[0])
    p.add_argument("--snr-stop", type=float, default=DEFAULT_GRID[1])
    p.add_argument("--snr-step", type=float, default=DEFAULT_GRID[2])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gap", help="dB gap to capacity at a target rate")
    _add_common(p)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--tol-db", type=float, default=analysis.DEFAULT_TOL_DB)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("compare", help="best log vs best martinez per target")
    _add_common(p)
    p.add_argument("--recipe", choices=("fig1", "fig2", "fig3"), default=None)
    p.add_argument("--target", dest="targets", type=float, action="append",
                   default=None, help="target rate; repeatable")
    p.add_argument("--m-set", dest="m_set", type=int, nargs="+", default=None)
    p.add_argument("--tol-db", type=float, default=analysis.DEFAULT_TOL_DB)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("selftest", help="run reduced-scale invariant checks")
    p.set_defaults(func=cmd_selftest)

    return parser


def _validate(args) -> None:
    if getattr(args, "scheme", None) == "bicm" and getattr(args, "m", None):
        if args.m & (args.m - 1):
            raise ConfigError(f"bicm needs a power-of-two alphabet, got M={args.m}")
    if getattr(args, "n_samples", 1) < 1:
        raise ConfigError("--n-samples must be at least 1")
    if getattr(args, "shards", 1) < 1:
        raise ConfigError("--shards must be at least 1")
    if getattr(args, "seed", 0) < 0:
        raise ConfigError("--seed must be non-negative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        if args.command in ("mi", "sweep", "gap") and args.scheme is None:
            args.scheme = "cm"
        if args.command in ("mi", "sweep", "gap") and args.family is None:
            raise ConfigError(f"{args.command} needs --family")
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (analysis.UnattainableRateError, analysis.BracketSearchError,
            RuntimeError, ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
