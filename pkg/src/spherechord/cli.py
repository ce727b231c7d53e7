"""Command-line front end.

Subcommands: eval (scalar evaluation of either law), table (inter-quantile
ranges), sample (seeded generation), gof (audit a distance file against a
chord law), dim (estimate dimension and radius from a distance file), and
figures (dimension-indexed series and cdf/pdf curve grids as CSV, with an
optional rendered plot).

Exit codes: 0 success or "consistent", 1 statistical rejection, 2 usage,
validation, or I/O failure.  All numeric output is printed at 17
significant digits so parsing it back reproduces the exact binary value,
and identical invocations produce byte-identical output.

The SPHERECHORD_FORMAT environment variable ("csv" or "json") picks the
default output format for subcommands that support both; an explicit
--format always wins.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import List, Optional, Tuple

import numpy as np

from .analysis import (
    DistanceSample,
    FIGURE_KINDS,
    estimate_dimension,
    figure_series,
    gof_test,
    quantile_table,
)
from .chord import ChordDistribution
from .dotprod import DotProductDistribution
from .errors import ConvergenceError, DomainError
from .sampling import (
    SampleSpec,
    sample_chords,
    sample_dot_products,
    sample_sphere_point,
)

FORMAT_ENV_VAR = "SPHERECHORD_FORMAT"

_TABLE_DIMS = "2,3,4,8,16,32,64,128,256"
_TABLE_QS = "3,4,6,8,16"
_SERIES_DIMS = "2..64"
_CURVE_DIMS = "2,3,4,8,16,32"
_CURVE_POINTS = 256


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_int_list(text: str, what: str, minimum: int) -> List[int]:
    """Comma-separated integers; a..b tokens expand inclusively."""
    out: List[int] = []
    for token in text.split(","):
        token = token.strip()
        try:
            if ".." in token:
                lo_s, _, hi_s = token.partition("..")
                lo, hi = int(lo_s), int(hi_s)
                if hi < lo:
                    raise DomainError(f"empty range {token!r} in {what}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(token))
        except ValueError:
            raise DomainError(f"cannot parse {what} token {token!r}") from None
    for v in out:
        if v < minimum:
            raise DomainError(f"{what} values must be >= {minimum}, got {v}")
    if not out:
        raise DomainError(f"{what} must be non-empty")
    return out


def _moment_order(value: float) -> int:
    if not float(value).is_integer():
        raise DomainError(f"moment order must be an integer, got {value!r}")
    return int(value)


def _resolve_format(args) -> str:
    if args.format is not None:
        return args.format
    env = os.environ.get(FORMAT_ENV_VAR)
    if env is None:
        return "csv"
    if env not in ("csv", "json"):
        raise DomainError(
            f"{FORMAT_ENV_VAR} must be 'csv' or 'json', got {env!r}"
        )
    return env


def _read_distances(path: str) -> np.ndarray:
    """One non-negative decimal per line; '#' comments and blank lines are
    skipped; a single leading header line "distance" is tolerated."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from None
    values: List[float] = []
    header_allowed = True
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header_allowed and line.lower() == "distance":
            header_allowed = False
            continue
        header_allowed = False
        try:
            v = float(line)
        except ValueError:
            raise DomainError(f"{path}:{lineno}: not a number: {line!r}") from None
        if not math.isfinite(v) or v < 0.0:
            raise DomainError(
                f"{path}:{lineno}: distances must be finite and non-negative"
            )
        values.append(v)
    if not values:
        raise DomainError(f"{path}: no distance values found")
    return np.asarray(values)


def _csv_text(header: List[str], rows: List[List[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------- eval

_AT_FNS = ("pdf", "cdf", "quantile", "moment")


def _cmd_eval(args) -> Tuple[str, int]:
    if args.fn in _AT_FNS and not args.at:
        raise DomainError(f"--fn {args.fn} requires --at")
    if args.fn not in _AT_FNS and args.at:
        raise DomainError(f"--fn {args.fn} does not take --at")

    if args.dist == "dot":
        if args.radius is not None:
            raise DomainError("--radius applies to chord distances only")
        return _eval_dot(args)
    dist = ChordDistribution(args.dim, 1.0 if args.radius is None else args.radius)
    if args.fn == "mean":
        values = [dist.mean()]
    elif args.fn == "variance":
        values = [dist.variance()]
    elif args.fn == "bertrand":
        values = [dist.bertrand_probability()]
    elif args.fn == "moment":
        values = [dist.moment(_moment_order(v)) for v in args.at]
    else:
        fn = getattr(dist, args.fn)
        values = [fn(v) for v in args.at]
    return "".join(_fmt(v) + "\n" for v in values), 0


def _eval_dot(args) -> Tuple[str, int]:
    dist = DotProductDistribution(args.dim)
    if args.fn == "mean":
        values = [0.0]
    elif args.fn == "variance":
        values = [dist.even_moment(1)]
    elif args.fn == "bertrand":
        raise DomainError("bertrand applies to chord distances only")
    elif args.fn == "moment":
        values = []
        for v in args.at:
            k = _moment_order(v)
            if k < 1:
                raise DomainError(f"moment order must be >= 1, got {k}")
            values.append(0.0 if k % 2 else dist.even_moment(k // 2))
    else:
        fn = getattr(dist, args.fn)
        values = [fn(v) for v in args.at]
    return "".join(_fmt(v) + "\n" for v in values), 0


# ---------------------------------------------------------------- table

def _cmd_table(args) -> Tuple[str, int]:
    fmt = _resolve_format(args)
    dims = _parse_int_list(args.dims, "--dims", 2)
    qs = _parse_int_list(args.qs, "--qs", 3)
    tab = quantile_table(dims, qs, args.radius)
    grid = {}
    for n, q, rng in tab.rows:
        grid.setdefault(n, []).append(rng)
    if fmt == "json":
        payload = {
            "schema": "table/1",
            "radius": tab.radius,
            "qs": qs,
            "rows": [{"dim": n, "ranges": grid[n]} for n in dims],
        }
        return _json_text(payload), 0
    header = ["dim"] + [f"q{q}" for q in qs]
    rows = [[str(n)] + [_fmt(v) for v in grid[n]] for n in dims]
    return _csv_text(header, rows), 0


# ---------------------------------------------------------------- sample

def _cmd_sample(args) -> Tuple[str, int]:
    radius = 1.0 if args.radius is None else args.radius
    if args.kind != "chord" and args.method is not None:
        raise DomainError("--method applies to chord sampling only")
    if args.kind == "dot" and args.radius is not None:
        raise DomainError("dot products are radius-free; drop --radius")

    if args.kind == "chord":
        method = "pairwise-points" if args.method in (None, "pairwise") else args.method
        spec = SampleSpec(
            dim=args.dim, radius=radius, count=args.count, seed=args.seed,
            method=method,
        )
        values = sample_chords(spec)
        return "".join(_fmt(v) + "\n" for v in values), 0
    if args.kind == "dot":
        SampleSpec(dim=args.dim, count=args.count, seed=args.seed)
        values = sample_dot_products(args.dim, args.count, args.seed)
        return "".join(_fmt(v) + "\n" for v in values), 0
    # points: one comma-separated coordinate row per line
    SampleSpec(dim=args.dim, radius=radius, count=args.count, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    lines = []
    for _ in range(args.count):
        point = sample_sphere_point(args.dim, radius, rng)
        lines.append(",".join(_fmt(c) for c in point) + "\n")
    return "".join(lines), 0


# ---------------------------------------------------------------- gof

def _cmd_gof(args) -> Tuple[str, int]:
    if (args.radius is None) == (not args.estimate_radius):
        raise DomainError("provide exactly one of --radius or --estimate-radius")
    values = _read_distances(args.input)
    sample = DistanceSample(values, source=args.input)
    if args.estimate_radius:
        radius = math.sqrt(float(np.mean(values * values)) / 2.0)
    else:
        radius = args.radius
    report = gof_test(sample, ChordDistribution(args.dim, radius), args.alpha)
    payload = {
        "schema": "gof/1",
        "statistic": report.statistic,
        "p_bound": report.p_bound,
        "n": report.n,
        "null_dim": report.null_dim,
        "null_radius": report.null_radius,
        "alpha": report.alpha,
        "verdict": report.verdict,
    }
    return _json_text(payload), 0 if report.verdict == "consistent" else 1


# ---------------------------------------------------------------- dim

def _cmd_dim(args) -> Tuple[str, int]:
    values = _read_distances(args.input)
    sample = DistanceSample(values, source=args.input)
    est = estimate_dimension(sample, radius=args.radius, alpha=args.alpha)
    payload = {
        "schema": "dim/1",
        "best_dim": est.best_dim,
        "ks_at_best": est.ks_at_best,
        "lower_bound": est.lower_bound,
        "upper_bound": est.upper_bound,
        "radius_estimate": est.radius_estimate,
        "n": sample.size,
        "alpha": args.alpha,
    }
    return _json_text(payload), 0


# ---------------------------------------------------------------- figures

def _cmd_figures(args) -> Tuple[str, int]:
    series = args.kind in FIGURE_KINDS
    if args.points is not None and series:
        raise DomainError("--points applies to curve kinds only")

    if series:
        dims = _parse_int_list(args.dims or _SERIES_DIMS, "--dims", 2)
        pairs = figure_series(args.kind, dims, args.radius)
        text = _csv_text(
            ["dim", args.kind],
            [[str(n), _fmt(v)] for n, v in pairs],
        )
        if args.plot is not None:
            from . import plotting

            plotting.render_series(args.plot, args.kind, pairs)
        return text, 0

    dims = _parse_int_list(args.dims or _CURVE_DIMS, "--dims", 2)
    points = _CURVE_POINTS if args.points is None else args.points
    if points < 2:
        raise DomainError(f"--points must be at least 2, got {points}")
    radius = args.radius
    if args.kind == "cdf-curves":
        grid = np.linspace(0.0, 2.0 * radius, points)
    else:
        # open grid: the N=2 density is singular at both exact endpoints
        grid = np.linspace(0.0, 2.0 * radius, points + 2)[1:-1]
    columns = []
    for n in dims:
        dist = ChordDistribution(n, radius)
        arr = dist.cdf_array(grid) if args.kind == "cdf-curves" else dist.pdf_array(grid)
        columns.append((n, arr))
    header = ["d"] + [f"dim{n}" for n in dims]
    rows = [
        [_fmt(d)] + [_fmt(col[i]) for _, col in columns]
        for i, d in enumerate(grid)
    ]
    text = _csv_text(header, rows)
    if args.plot is not None:
        from . import plotting

        plotting.render_curves(args.plot, args.kind, grid, columns)
    return text, 0


# ---------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherechord",
        description="Chord-length and dot-product laws on the N-sphere: "
        "evaluation, tables, sampling, and goodness-of-fit auditing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a law at given points")
    p.add_argument("--dist", choices=("chord", "dot"), required=True)
    p.add_argument(
        "--fn",
        choices=("pdf", "cdf", "quantile", "mean", "variance", "moment", "bertrand"),
        required=True,
    )
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--at", type=float, nargs="+", default=None,
                   help="evaluation points (moment: integer orders)")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("table", help="inter-quantile range table")
    p.add_argument("--dims", default=_TABLE_DIMS)
    p.add_argument("--qs", default=_TABLE_QS)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("sample", help="seeded sampling")
    p.add_argument("--kind", choices=("chord", "dot", "point"), required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("pairwise", "inverse-cdf"), default=None)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("gof", help="audit a distance file against a chord law")
    p.add_argument("--input", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--estimate-radius", action="store_true")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("dim", help="estimate dimension and radius from distances")
    p.add_argument("--input", required=True)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("figures", help="plot-ready series and curve grids")
    p.add_argument(
        "--kind",
        choices=FIGURE_KINDS + ("cdf-curves", "pdf-curves"),
        required=True,
    )
    p.add_argument("--dims", default=None,
                   help=f"defaults: {_SERIES_DIMS} (series), {_CURVE_DIMS} (curves)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--points", type=int, default=None,
                   help=f"grid size for curve kinds (default {_CURVE_POINTS})")
    p.add_argument("--plot", default=None,
                   help="also render the figure to this image file")
    p.add_argument("--output", "-o", default=None)

    return parser


_DISPATCH = {
    "eval": _cmd_eval,
    "table": _cmd_table,
    "sample": _cmd_sample,
    "gof": _cmd_gof,
    "dim": _cmd_dim,
    "figures": _cmd_figures,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text, code = _DISPATCH[args.command](args)
        if args.output is None:
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
    except (ValueError, OSError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
