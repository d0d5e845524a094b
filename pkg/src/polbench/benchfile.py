"""Line-oriented bench description format.

One statement per line, ``keyword value...``; ``#`` starts a comment line::

    # the maximal-coincidence regime
    analyzers_deg 90 0 0 90
    interference 1
    estimator coherent
    scan skew-upper points 181 range 0 90

Angles are degrees and are reduced to [0, 180) on parse. Unknown keywords,
repeated keywords, wrong arity and out-of-range values are all errors that
carry the line number and the offending token.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .errors import ParseError, ValidationError
from .jones import canonical_degrees

__all__ = [
    "BenchDescription",
    "ScanSpec",
    "ESTIMATOR_NAMES",
    "SCAN_KINDS",
    "parse",
    "parse_bytes",
    "serialize",
    "format_real",
]

ESTIMATOR_NAMES = ("coherent", "incoherent", "coherent-mc", "detection-mc")
SAMPLED = ("coherent-mc", "detection-mc")
SCAN_KINDS = ("regimes", "skew-upper", "skew-lower", "skew-middle", "overlap")
CURVE_KINDS = ("skew-upper", "skew-lower", "skew-middle", "overlap")
SCAN_DEFAULTS = {
    "skew-upper": (181, (0.0, 90.0)),
    "skew-lower": (181, (0.0, 90.0)),
    "skew-middle": (181, (0.0, 90.0)),
    "overlap": (11, (0.0, 1.0)),
}
KEY_ORDER = ("analyzers_deg", "interference", "estimator", "samples", "seed", "scan")
MAX_SEED = (1 << 64) - 1

_REAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")
_INT = re.compile(r"\d+\Z")
_NAME = re.compile(r"[a-z][a-z-]*\Z")


@dataclass(frozen=True)
class ScanSpec:
    """Batch request. ``range`` is degrees for skew scans, interference weights for overlap.

    Regime tables take neither points nor range.
    """

    kind: str
    points: Optional[int] = None
    range: Optional[tuple] = None

    def __post_init__(self):
        if self.kind in SCAN_DEFAULTS:
            pts, rng = SCAN_DEFAULTS[self.kind]
            if self.points is None:
                object.__setattr__(self, "points", pts)
            if self.range is None:
                object.__setattr__(self, "range", rng)
            else:
                object.__setattr__(self, "range", tuple(float(x) for x in self.range))


@dataclass(frozen=True)
class BenchDescription:
    analyzers_deg: Optional[tuple] = None
    interference: Optional[float] = None
    estimator: str = "coherent"
    samples: Optional[int] = None
    seed: Optional[int] = None
    scan: Optional[ScanSpec] = None

    def __post_init__(self):
        if self.analyzers_deg is not None:
            object.__setattr__(
                self,
                "analyzers_deg",
                tuple(canonical_degrees(float(d)) for d in self.analyzers_deg),
            )
        if self.interference is not None:
            object.__setattr__(self, "interference", float(self.interference))

    @property
    def thetas(self):
        """Analyzer angles in radians, or None."""
        if self.analyzers_deg is None:
            return None
        return tuple(math.radians(d) for d in self.analyzers_deg)

    @property
    def sampled(self) -> bool:
        return self.estimator in SAMPLED


def _real(tok, line, key):
    if not _REAL.match(tok):
        raise ParseError(f"{key}: expected a real number", line, tok)
    value = float(tok)
    if not math.isfinite(value):
        raise ValidationError(f"{key}: value is not finite", line, tok)
    return value


def _int(tok, line, key):
    if not _INT.match(tok):
        raise ParseError(f"{key}: expected a nonnegative integer", line, tok)
    return int(tok)


def _arity(args, n, line, key, stmt):
    if len(args) != n:
        tok = args[n] if len(args) > n else stmt
        raise ParseError(f"{key} takes {n} value{'s' if n != 1 else ''}, got {len(args)}", line, tok)


def _parse_scan(args, line):
    if not args:
        raise ParseError("scan needs a kind", line, "scan")
    kind = args[0]
    if not _NAME.match(kind):
        raise ParseError("scan kind must be a lowercase name", line, kind)
    if kind not in SCAN_KINDS:
        raise ParseError(f"unknown scan kind (expected one of {', '.join(SCAN_KINDS)})", line, kind)
    points = rng = None
    pos, tok_points, tok_range = 1, None, None
    while pos < len(args):
        word = args[pos]
        if word == "points":
            if tok_points is not None:
                raise ValidationError("scan: points given twice", line, word)
            if pos + 1 >= len(args):
                raise ParseError("points needs a value", line, word)
            tok_points = args[pos + 1]
            points = _int(tok_points, line, "points")
            pos += 2
        elif word == "range":
            if tok_range is not None:
                raise ValidationError("scan: range given twice", line, word)
            if pos + 2 >= len(args):
                raise ParseError("range needs two values", line, word)
            tok_range = args[pos + 2]
            rng = (_real(args[pos + 1], line, "range"), _real(args[pos + 2], line, "range"))
            pos += 3
        else:
            raise ParseError("unexpected token in scan statement", line, word)

    if kind == "regimes":
        if points is not None or rng is not None:
            raise ValidationError("regimes scan takes no points or range", line, tok_points or "range")
        return ScanSpec(kind)
    if points is not None and points < 2:
        raise ValidationError("scan needs at least 2 points", line, tok_points)
    spec = ScanSpec(kind, points, rng)
    lo, hi = spec.range
    if not lo < hi:
        raise ValidationError("scan range needs lo < hi", line, tok_range)
    if kind == "overlap" and not (0.0 <= lo and hi <= 1.0):
        raise ValidationError("overlap range must lie within [0, 1]", line, tok_range)
    return spec


def parse(text: str) -> BenchDescription:
    fields, where = {}, {}
    lines = text.split("\n")
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, *args = stripped.split()
        if key in fields:
            raise ValidationError(f"duplicate key {key!r} (first on line {where[key]})", lineno, key)
        if key == "analyzers_deg":
            _arity(args, 4, lineno, key, stripped)
            value = tuple(_real(a, lineno, key) for a in args)
        elif key == "interference":
            _arity(args, 1, lineno, key, stripped)
            value = _real(args[0], lineno, key)
            if not 0.0 <= value <= 1.0:
                raise ValidationError("interference must lie in [0, 1]", lineno, args[0])
        elif key == "estimator":
            _arity(args, 1, lineno, key, stripped)
            if not _NAME.match(args[0]) or args[0] not in ESTIMATOR_NAMES:
                raise ParseError(
                    f"unknown estimator (expected one of {', '.join(ESTIMATOR_NAMES)})", lineno, args[0]
                )
            value = args[0]
        elif key == "samples":
            _arity(args, 1, lineno, key, stripped)
            value = _int(args[0], lineno, key)
            if value < 1:
                raise ValidationError("samples must be positive", lineno, args[0])
        elif key == "seed":
            _arity(args, 1, lineno, key, stripped)
            value = _int(args[0], lineno, key)
            if value > MAX_SEED:
                raise ValidationError("seed must fit in 64 unsigned bits", lineno, args[0])
        elif key == "scan":
            value = _parse_scan(args, lineno)
        else:
            raise ParseError("unknown keyword", lineno, key)
        fields[key] = value
        where[key] = lineno

    last = max((i for i, ln in enumerate(lines, start=1) if ln.strip()), default=1)
    estimator = fields.get("estimator", "coherent")
    if estimator not in SAMPLED:
        for key in ("samples", "seed"):
            if key in fields:
                raise ValidationError(f"{key} only applies to sampled estimators", where[key], key)
    scan = fields.get("scan")
    if scan is not None and scan.kind in CURVE_KINDS and estimator != "coherent":
        raise ValidationError(
            f"{scan.kind} scans use the coherent estimator", where.get("estimator", where["scan"]), estimator
        )
    if scan is not None and scan.kind == "overlap" and "interference" in fields:
        raise ValidationError("overlap scans sweep the interference weight", where["interference"], "interference")
    if "analyzers_deg" not in fields and (scan is None or scan.kind == "overlap"):
        raise ValidationError("analyzers_deg is required", where.get("scan", last), "analyzers_deg")
    return BenchDescription(**fields)


def parse_bytes(data: bytes) -> BenchDescription:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        bad = data[exc.start : exc.end]
        raise ParseError("invalid UTF-8", line, bad.hex()) from None
    return parse(text)


def format_real(x: float) -> str:
    """Shortest text that parses back to exactly ``x``."""
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def serialize(d: BenchDescription) -> str:
    out = []
    if d.analyzers_deg is not None:
        out.append("analyzers_deg " + " ".join(format_real(x) for x in d.analyzers_deg))
    if d.interference is not None:
        out.append(f"interference {format_real(d.interference)}")
    out.append(f"estimator {d.estimator}")
    if d.samples is not None:
        out.append(f"samples {d.samples}")
    if d.seed is not None:
        out.append(f"seed {d.seed}")
    if d.scan is not None:
        line = f"scan {d.scan.kind}"
        if d.scan.points is not None:
            line += f" points {d.scan.points}"
        if d.scan.range is not None:
            line += " range " + " ".join(format_real(x) for x in d.scan.range)
        out.append(line)
    return "\n".join(out) + "\n"
