"""``polbench`` command line.

Angles are degrees at this boundary. Exit status: 0 success, 2 usage or
flag error, 3 bench-file error, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import benchfile, output, scans
from .bench import AnalyzerSettings
from .errors import BenchFileError, InvalidInputError, InvariantViolation
from .estimators import (
    C_MAX,
    canonical_estimator,
    check_interference,
    closed_form_amplitudes,
    estimate,
)
from .jones import canonical_degrees

EXIT_OK, EXIT_USAGE, EXIT_BENCHFILE, EXIT_INVARIANT = 0, 2, 3, 4
DEFAULT_SAMPLES = 1_000_000
SEED_ENV = "POLBENCH_SEED"
NORMALIZATION = "raw / C, C = coherent value at {90,0,0,90} deg"
INVARIANT_TOL = 1e-12


class UsageError(InvalidInputError):
    pass


# --- argument helpers -----------------------------------------------------


def parse_theta(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected four comma-separated angles, got {text!r}")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed angle list {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"angles must be finite, got {text!r}")
    return values


def _interference(text):
    try:
        return check_interference(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value <= benchfile.MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text!r}")
    return value


def _estimator(text):
    try:
        return canonical_estimator(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{SEED_ENV}: {exc}") from None
    return 0


def _sampling(estimator, samples, seed):
    if estimator in ("coherent-mc", "detection-mc"):
        return (samples or DEFAULT_SAMPLES), _resolve_seed(seed)
    return None, None


def _canonical_theta(theta):
    return tuple(canonical_degrees(d) for d in theta)


# --- command bodies (shared by flags and bench files) ---------------------


def do_simulate(theta, e=None, estimator="coherent-exact", samples=None, seed=None):
    e = 1.0 if e is None else e
    theta = _canonical_theta(theta)
    samples, seed = _sampling(estimator, samples, seed)
    a = AnalyzerSettings.from_degrees(*theta)
    r = estimate(a, e, estimator, samples=samples, seed=seed)
    if estimator == "coherent-exact":
        _check_coherent(a, r)
    meta = _meta(estimator, e, seed, samples)
    meta["theta_deg"] = list(theta)
    row = _theta_columns(theta)
    row.update(e=e, raw=r.raw, normalized=r.normalized, stderr=r.stderr)
    if estimator == "detection-mc":
        meta["scale_product"] = r.extra["scale_product"]
    columns = ["theta1_deg", "theta2_deg", "theta3_deg", "theta4_deg", "e", "raw", "normalized", "stderr"]
    return "simulate", meta, columns, [row]


def do_regimes(e=None, estimator="coherent-exact", samples=None, seed=None):
    e = 1.0 if e is None else e
    samples, seed = _sampling(estimator, samples, seed)
    rows = []
    for r in scans.regime_table(e, estimator, samples=samples, seed=seed):
        row = _theta_columns(tuple(round(d, 9) for d in r.settings.degrees()))
        row.update(raw=r.raw, normalized=r.normalized, stderr=r.stderr)
        rows.append(row)
    columns = ["theta1_deg", "theta2_deg", "theta3_deg", "theta4_deg", "raw", "normalized", "stderr"]
    return "regimes", _meta(estimator, e, seed, samples), columns, rows


def do_curve(kind, points=scans.DEFAULT_POINTS, range_deg=(0.0, 90.0), e=None, estimator="coherent-exact"):
    if estimator != "coherent-exact":
        raise UsageError("skew curves use the coherent estimator")
    if points < 2:
        raise UsageError("a curve needs at least 2 points")
    lo, hi = range_deg
    if not lo < hi:
        raise UsageError("curve range needs lo < hi")
    kinds = scans.SKEW_KINDS if kind == "all" else (kind,)
    grid = scans.default_grid(points, math.radians(lo), math.radians(hi))
    rows = []
    meta = _meta(estimator, e, None, None)
    meta.update(kind=kind, range_deg=[lo, hi], points=points)
    if kind == "all":
        meta["e_by_kind"] = {k: (scans.SKEW_DEFAULT_E[k] if e is None else e) for k in kinds}
    for k in kinds:
        curve = scans.skew_curve(k, grid, e)
        if kind != "all":
            meta["e"] = curve.e
        if "counter_rotated" in curve.metadata:
            meta["counter_rotated"] = curve.metadata["counter_rotated"]
        if e is None:
            _check_curve(k, curve)
        for p in curve.points:
            row = {"kind": k} if kind == "all" else {}
            row.update(t_rad=p.t, t_deg=math.degrees(p.t), raw=p.raw, normalized=p.normalized)
            rows.append(row)
    columns = (["kind"] if kind == "all" else []) + ["t_rad", "t_deg", "raw", "normalized"]
    return "curve", meta, columns, rows


def do_sweep(theta, points=11, range_e=(0.0, 1.0), estimator="coherent-exact"):
    if estimator != "coherent-exact":
        raise UsageError("overlap sweeps use the coherent estimator")
    if points < 2:
        raise UsageError("a sweep needs at least 2 points")
    lo, hi = (check_interference(x) for x in range_e)
    if not lo < hi:
        raise UsageError("sweep range needs lo < hi")
    theta = _canonical_theta(theta)
    grid = [min(1.0, max(0.0, x)) for x in scans.default_grid(points, lo, hi)]
    rows = [
        {"e": e, "raw": raw, "normalized": norm}
        for e, raw, norm in scans.overlap_sweep(AnalyzerSettings.from_degrees(*theta), grid)
    ]
    meta = _meta(estimator, None, None, None)
    meta.update(theta_deg=list(theta), range_e=[lo, hi], points=points)
    return "sweep", meta, ["e", "raw", "normalized"], rows


def _meta(estimator, e, seed, samples):
    return {
        "estimator": estimator,
        "e": e,
        "seed": seed,
        "samples": samples,
        "normalization": NORMALIZATION,
        "c_raw": C_MAX,
    }


def _theta_columns(theta):
    return {f"theta{j + 1}_deg": theta[j] for j in range(4)}


def _check_coherent(a, r):
    amp1, amp2 = closed_form_amplitudes(a)
    if r.raw < 0.0 or abs(r.extra["A1"] - amp1) > INVARIANT_TOL or abs(r.extra["A2"] - amp2) > INVARIANT_TOL:
        raise InvariantViolation(f"coherent amplitudes disagree with closed form at {a}")


def _check_curve(kind, curve):
    for p in curve.points:
        if abs(p.raw - scans.skew_closed_form(kind, p.t)) > INVARIANT_TOL:
            raise InvariantViolation(f"{kind} curve departs from closed form at t={p.t!r}")


# --- bench files ----------------------------------------------------------


def read_bench(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise BenchFileError(f"cannot read file: {exc.strerror}", 0, str(path)) from None
    return benchfile.parse_bytes(data)


def plan_from_bench(d: benchfile.BenchDescription, samples=None, seed=None):
    estimator = canonical_estimator(d.estimator)
    if d.sampled:
        samples = d.samples if d.samples is not None else samples
        seed = d.seed if d.seed is not None else seed
    scan = d.scan
    if scan is None:
        return do_simulate, dict(
            theta=d.analyzers_deg, e=d.interference, estimator=estimator, samples=samples, seed=seed
        )
    if scan.kind == "regimes":
        return do_regimes, dict(e=d.interference, estimator=estimator, samples=samples, seed=seed)
    if scan.kind == "overlap":
        return do_sweep, dict(theta=d.analyzers_deg, points=scan.points, range_e=scan.range, estimator=estimator)
    return do_curve, dict(
        kind=scan.kind.removeprefix("skew-"),
        points=scan.points,
        range_deg=scan.range,
        e=d.interference,
        estimator=estimator,
    )


# --- argparse wiring --------------------------------------------------------


def _common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("csv", "json"), default=d(None), help="output format (default csv)")
    parser.add_argument("--seed", type=_seed, default=d(None), help=f"RNG seed for sampled estimators (fallback ${SEED_ENV}, then 0)")
    parser.add_argument("--samples", type=_positive_int, default=d(None), help=f"samples/trials for sampled estimators (default {DEFAULT_SAMPLES})")
    parser.add_argument("--e", type=_interference, default=d(None), help="interference weight in [0, 1]")
    parser.add_argument(
        "--estimator",
        type=_estimator,
        default=d(None),
        help="coherent (default), incoherent, coherent-mc or detection-mc",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polbench",
        description="Classical four-photon coincidence model: regimes, skew curves, overlap sweeps.",
    )
    _common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="evaluate one analyzer setting")
    p.add_argument("--theta", type=parse_theta, required=True, metavar="D1,D2,D3,D4", help="analyzer angles, degrees")

    sub.add_parser("regimes", parents=[common], help="all 16 settings from {0, 90}^4")

    p = sub.add_parser("curve", parents=[common], help="skew curves")
    p.add_argument("--kind", choices=("upper", "lower", "middle", "all"), default="all")
    p.add_argument("--points", type=_positive_int, default=scans.DEFAULT_POINTS)
    p.add_argument("--range", type=float, nargs=2, default=(0.0, 90.0), metavar=("LO", "HI"), help="skew range, degrees")

    p = sub.add_parser("sweep", parents=[common], help="coherent intensity versus interference weight")
    p.add_argument("--theta", type=parse_theta, required=True, metavar="D1,D2,D3,D4")
    p.add_argument("--points", type=_positive_int, default=11)
    p.add_argument("--range", type=float, nargs=2, default=(0.0, 1.0), metavar=("LO", "HI"))

    p = sub.add_parser("run", parents=[common], help="execute a bench description file")
    p.add_argument("file")

    p = sub.add_parser("validate", parents=[common], help="check a bench file and print its canonical form")
    p.add_argument("file")

    sub.add_parser("schema", help="print the JSON output schema")
    return parser


def _dispatch(args):
    est = args.estimator or "coherent-exact"
    cmd = args.command
    if cmd == "simulate":
        return do_simulate(args.theta, args.e, est, args.samples, args.seed)
    if cmd == "regimes":
        return do_regimes(args.e, est, args.samples, args.seed)
    if cmd == "curve":
        return do_curve(args.kind, args.points, tuple(args.range), args.e, est)
    if cmd == "sweep":
        return do_sweep(args.theta, args.points, tuple(args.range), est)
    if cmd == "run":
        fn, kwargs = plan_from_bench(read_bench(args.file), args.samples, args.seed)
        return fn(**kwargs)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or "csv"
    try:
        if args.command == "schema":
            sys.stdout.write(json.dumps(output.output_schema(), indent=2) + "\n")
            return EXIT_OK
        if args.command == "validate":
            sys.stdout.write(benchfile.serialize(read_bench(args.file)))
            return EXIT_OK
        command, meta, columns, rows = _dispatch(args)
        sys.stdout.write(output.render(fmt, command, meta, columns, rows))
        return EXIT_OK
    except BenchFileError as exc:
        sys.stderr.write(f"polbench: {getattr(args, 'file', '')}:{exc.line}: {exc.message} (at {exc.token!r})\n")
        return EXIT_BENCHFILE
    except InvariantViolation as exc:
        sys.stderr.write(f"polbench: internal invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except InvalidInputError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"polbench: error: {exc}\n")
        return EXIT_USAGE


def entry():
    sys.exit(main())
