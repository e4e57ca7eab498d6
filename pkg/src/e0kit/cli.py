"""Command-line interface: compute, match, curves, intersect, verify.

Exit codes: 0 success, 1 usage or input-file problems, 2 a verification
suite found violations, 3 numeric failure (no bracket, domain error, ...).
All numbers print with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import channels, extremal, verify
from .channels import BinaryChannel
from .numerics import DEFAULT_TOL, NumericsError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK = 2
EXIT_NUMERIC = 3


class ParseError(Exception):
    """Channel file is syntactically malformed."""


class InvariantError(Exception):
    """Channel file parsed but violates a channel invariant."""


def _fmt(value: float) -> str:
    value = float(value)
    if value == 0.0:
        value = 0.0  # normalize -0.0 so grids print a plain zero
    return format(value, ".12g")


def parse_channel(text: str) -> BinaryChannel:
    """Parse the channel file format.

    Payload lines (after stripping blank lines and '#' comments): first the
    output-alphabet size N, then two lines of N probabilities, the rows for
    input 0 and input 1. Errors carry the offending line number.
    """
    payload: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            payload.append((lineno, stripped))
    if not payload:
        raise ParseError("no payload lines found")
    if len(payload) < 3:
        raise ParseError(
            f"expected 3 payload lines (size then two rows), found {len(payload)}"
        )
    if len(payload) > 3:
        raise ParseError(f"unexpected extra payload at line {payload[3][0]}")

    lineno, header = payload[0]
    try:
        n = int(header)
    except ValueError:
        raise ParseError(f"line {lineno}: output count must be an integer, got {header!r}")
    if n < 1:
        raise ParseError(f"line {lineno}: output count must be positive, got {n}")

    rows: list[np.ndarray] = []
    for row_idx, (lineno, line) in enumerate(payload[1:3]):
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(
                f"line {lineno}: expected {n} entries for input-{row_idx} row, "
                f"found {len(tokens)}"
            )
        values = []
        for col, token in enumerate(tokens, start=1):
            try:
                values.append(float(token))
            except ValueError:
                raise ParseError(
                    f"line {lineno}, field {col}: not a number: {token!r}"
                )
        rows.append(np.array(values))

    for row_idx, row in enumerate(rows):
        if not np.all(row >= 0.0):
            raise InvariantError(f"input-{row_idx} row has negative entries")
        total = float(row.sum())
        if abs(total - 1.0) > channels.ROW_SUM_TOL:
            raise InvariantError(f"input-{row_idx} row sums to {_fmt(total)}, not 1")
    return BinaryChannel(rows[0], rows[1])


def _load_channel(path: str) -> BinaryChannel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_channel(fh.read())


def _add_channel_source(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--channel", metavar="FILE", help="channel matrix file")
    group.add_argument(
        "--bec", type=float, metavar="EPS", help="erasure channel with rate EPS"
    )
    group.add_argument(
        "--bsc", type=float, metavar="X", help="crossover channel with probability X"
    )


def _channel_from_args(args: argparse.Namespace) -> BinaryChannel:
    if args.channel is not None:
        return _load_channel(args.channel)
    if args.bec is not None:
        return extremal.bec_matrix(args.bec)
    return extremal.bsc_matrix(args.bsc)


@dataclass(frozen=True)
class CurveSample:
    """One grid row of the curves table; absent series stay None."""

    rho: float
    e0_w: float | None = None
    r_w: float | None = None
    e0_bec: float | None = None
    r_bec: float | None = None
    e0_bsc: float | None = None
    r_bsc: float | None = None


_CURVE_COLUMNS = ("e0_w", "r_w", "e0_bec", "r_bec", "e0_bsc", "r_bsc")


def build_curve_samples(
    rhos,
    ch: BinaryChannel | None = None,
    eps: float | None = None,
    x: float | None = None,
) -> list[CurveSample]:
    """Evaluate the requested E0/rate series on a rho grid."""
    samples = []
    for rho in rhos:
        rho = float(rho)
        field_values: dict[str, float] = {}
        if ch is not None:
            field_values["e0_w"] = channels.e0_raw(rho, ch)
            field_values["r_w"] = channels.r_slope(rho, ch)
        if eps is not None:
            field_values["e0_bec"] = extremal.e0_bec(rho, eps)
            field_values["r_bec"] = extremal.r_bec(rho, eps)
        if x is not None:
            field_values["e0_bsc"] = extremal.e0_bsc(rho, x)
            field_values["r_bsc"] = extremal.r_bsc(rho, x)
        samples.append(CurveSample(rho=rho, **field_values))
    return samples


def curve_grid(rho_min: float, rho_max: float, steps: int) -> list[float]:
    """Evenly spaced grid with rho = 0 inserted when the range straddles it."""
    if not rho_max > rho_min:
        raise NumericsError(f"empty rho range [{rho_min!r}, {rho_max!r}]")
    grid = [float(r) for r in np.linspace(rho_min, rho_max, steps)]
    if rho_min < 0.0 < rho_max and 0.0 not in grid:
        grid.append(0.0)
        grid.sort()
    return grid


def write_curve_csv(samples, stream) -> None:
    present = [c for c in _CURVE_COLUMNS if getattr(samples[0], c) is not None]
    stream.write(",".join(["rho", *present]) + "\n")
    for s in samples:
        cells = [_fmt(s.rho), *(_fmt(getattr(s, c)) for c in present)]
        stream.write(",".join(cells) + "\n")


def _cmd_compute(args: argparse.Namespace) -> int:
    ch = _channel_from_args(args)
    needs_rho = {"e0", "rate", "e0-over-rho"}
    if needs_rho & set(args.quantities) and args.rho is None:
        print("error: --rho is required for e0/rate/e0-over-rho", file=sys.stderr)
        return EXIT_USAGE
    if "er" in args.quantities and args.er_rate is None:
        print("error: --er-rate is required for er", file=sys.stderr)
        return EXIT_USAGE
    for quantity in args.quantities:
        if quantity == "e0":
            if args.q is not None:
                value = channels.e0_general(args.rho, args.q, ch)
            else:
                value = channels.e0_raw(args.rho, ch)
        elif quantity == "rate":
            value = channels.r_slope(args.rho, ch)
        elif quantity == "e0-over-rho":
            value = channels.e0_over_rho(args.rho, ch)
        elif quantity == "capacity":
            value = channels.capacity(ch)
        elif quantity == "cutoff":
            value = channels.cutoff_rate(ch)
        else:  # er
            value = channels.er_at_rate(args.er_rate, ch)
        print(f"{quantity}={_fmt(value)}")
    return EXIT_OK


def _cmd_match(args: argparse.Namespace) -> int:
    ch = _channel_from_args(args)
    bec, bsc = extremal.match_at_rho(ch, args.rho0)
    print(f"epsilon={_fmt(bec.eps)} x={_fmt(bsc.x)}")
    return EXIT_OK


def _cmd_curves(args: argparse.Namespace) -> int:
    ch = _load_channel(args.channel) if args.channel is not None else None
    if ch is None and args.bec is None and args.bsc is None:
        print(
            "error: need at least one of --channel, --bec, --bsc", file=sys.stderr
        )
        return EXIT_USAGE
    grid = curve_grid(args.rho_min, args.rho_max, args.steps)
    samples = build_curve_samples(grid, ch, args.bec, args.bsc)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_curve_csv(samples, fh)
    else:
        write_curve_csv(samples, sys.stdout)
    if args.plot is not None:
        from . import plotting  # matplotlib import deferred to first use

        plotting.render_curves(samples, args.plot)
    return EXIT_OK


def _cmd_intersect(args: argparse.Namespace) -> int:
    report = extremal.intersections(
        extremal.BecParams(args.bec),
        extremal.BscParams(args.bsc),
        rho_hi=args.rho_hi,
    )
    print(f"classification={report.classification}")
    for rho, kind in report.roots:
        print(f"root rho={_fmt(rho)} kind={kind}")
    return EXIT_OK


_SUITE_RUNNERS = {
    "theorem1": lambda seed, trials, tol: verify.run_theorem1_fuzz(
        seed=seed, trials=trials, tol=tol
    ),
    "capacity": lambda seed, trials, tol: verify.run_capacity_fuzz(
        seed=seed, trials=max(1, trials // 4), tol=tol
    ),
    "corollary1": lambda seed, trials, tol: verify.run_corollary1_fuzz(
        seed=seed, trials=max(1, trials // 4), tol=tol
    ),
    "lemmas": lambda seed, trials, tol: verify.check_lemma_suite(tol=tol),
}


def _cmd_verify(args: argparse.Namespace) -> int:
    names = list(_SUITE_RUNNERS) if args.suite == "all" else [args.suite]
    reports = [
        _SUITE_RUNNERS[name](args.seed, args.trials, DEFAULT_TOL) for name in names
    ]
    for report in reports:
        print(
            f"suite={report.suite} trials={report.trials} checks={report.checks} "
            f"failures={len(report.failures)} max_violation={_fmt(report.max_violation)}"
        )
    if args.report is not None:
        with open(args.report, "w", encoding="utf-8") as fh:
            for report in reports:
                fh.write(json.dumps(report.to_dict()) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="e0kit",
        description="E0 curves, extremal erasure/crossover bounds, and "
        "error-exponent tools for binary-input channels (all rates in nats)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser(
        "compute", help="evaluate E0-family quantities for one channel"
    )
    _add_channel_source(p_compute)
    p_compute.add_argument("--rho", type=float, help="E0 slope parameter")
    p_compute.add_argument(
        "--q", type=float, help="input weight on symbol 0 (default: uniform)"
    )
    p_compute.add_argument(
        "--er-rate", type=float, metavar="RATE", help="rate in nats for er"
    )
    p_compute.add_argument(
        "quantities",
        nargs="+",
        choices=["e0", "rate", "capacity", "cutoff", "e0-over-rho", "er"],
        metavar="QUANTITY",
        help="one or more of: e0, rate, capacity, cutoff, e0-over-rho, er",
    )
    p_compute.set_defaults(func=_cmd_compute)

    p_match = sub.add_parser(
        "match", help="matched erasure/crossover parameters at a reference rho"
    )
    _add_channel_source(p_match)
    p_match.add_argument("--rho0", type=float, required=True)
    p_match.set_defaults(func=_cmd_match)

    p_curves = sub.add_parser("curves", help="CSV table of E0 and rate curves")
    # unlike compute/match, these combine: each adds its own column pair
    p_curves.add_argument("--channel", metavar="FILE", help="channel matrix file")
    p_curves.add_argument(
        "--bec", type=float, metavar="EPS", help="erasure curve with rate EPS"
    )
    p_curves.add_argument(
        "--bsc", type=float, metavar="X", help="crossover curve with probability X"
    )
    p_curves.add_argument("--rho-min", type=float, default=-0.99)
    p_curves.add_argument("--rho-max", type=float, default=10.0)
    p_curves.add_argument(
        "--steps", type=int, default=200, help="number of grid points (default 200)"
    )
    p_curves.add_argument("--out", metavar="FILE", help="write CSV here, not stdout")
    p_curves.add_argument(
        "--plot", metavar="FILE", help="also render the curves to an image file"
    )
    p_curves.set_defaults(func=_cmd_curves)

    p_intersect = sub.add_parser(
        "intersect", help="classify E0 crossings of an erasure/crossover pair"
    )
    p_intersect.add_argument("--bec", type=float, required=True, metavar="EPS")
    p_intersect.add_argument("--bsc", type=float, required=True, metavar="X")
    p_intersect.add_argument("--rho-hi", type=float, default=40.0)
    p_intersect.set_defaults(func=_cmd_intersect)

    p_verify = sub.add_parser("verify", help="run randomized verification suites")
    p_verify.add_argument(
        "--suite",
        choices=["all", *_SUITE_RUNNERS],
        default="all",
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--trials",
        type=int,
        default=200,
        help="channel draws for theorem1; capacity/corollary1 run trials/4 "
        "(they are slower per trial); lemmas is a fixed grid",
    )
    p_verify.add_argument(
        "--report", metavar="FILE", help="write one JSON object per suite here"
    )
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericsError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
