"""Batch evaluations: the 16-regime table, skew curves and overlap sweeps."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bench import AnalyzerSettings
from .errors import InvalidInputError
from .estimators import check_interference, coherent_correlation, estimate

__all__ = [
    "RegimeRow",
    "SkewPoint",
    "SkewCurve",
    "SKEW_KINDS",
    "SKEW_DEFAULT_E",
    "COUNTER_ROTATED",
    "default_grid",
    "regime_settings",
    "regime_table",
    "skew_settings",
    "skew_curve",
    "skew_closed_form",
    "overlap_sweep",
]

SKEW_KINDS = ("upper", "lower", "middle")
SKEW_DEFAULT_E = {"upper": 1.0, "lower": 1.0, "middle": 0.0}
#: Analyzer turned against the others on the lower curve.
COUNTER_ROTATED = "theta4"
DEFAULT_POINTS = 181


class RegimeRow(NamedTuple):
    settings: AnalyzerSettings
    raw: float
    normalized: float
    stderr: float | None = None


class SkewPoint(NamedTuple):
    t: float
    raw: float
    normalized: float


@dataclass(frozen=True)
class SkewCurve:
    kind: str
    e: float
    points: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)


def default_grid(points=DEFAULT_POINTS, lo=0.0, hi=math.pi / 2):
    """Evenly spaced grid with exact endpoints (181 points: half-degree steps)."""
    if points < 2:
        raise InvalidInputError(f"a grid needs at least 2 points, got {points}")
    return [lo + (hi - lo) * (k / (points - 1)) for k in range(points)]


def regime_settings():
    """The 16 analyzer tuples from {0, pi/2}^4, lexicographic with 0 before pi/2."""
    return [AnalyzerSettings(*t) for t in itertools.product((0.0, math.pi / 2), repeat=4)]


def regime_table(e=1.0, estimator="coherent", samples=1_000_000, seed=0):
    e = check_interference(e)
    rows = []
    for a in regime_settings():
        r = estimate(a, e, estimator, samples=samples, seed=seed)
        rows.append(RegimeRow(a, r.raw, r.normalized, r.stderr))
    return rows


def _check_kind(kind):
    if kind not in SKEW_KINDS:
        raise InvalidInputError(f"skew kind must be one of {SKEW_KINDS}, got {kind!r}")


def skew_settings(kind, t) -> AnalyzerSettings:
    """Analyzers 1 and 4 start at pi/2, 2 and 3 at 0; all turn through t.

    On the lower curve analyzer 4 turns the other way, which puts t = pi/4
    on {pi/4, pi/4, pi/4, -pi/4}.
    """
    _check_kind(kind)
    last = math.pi / 2 + t if kind == "lower" else math.pi / 2 - t
    return AnalyzerSettings(math.pi / 2 - t, t, t, last)


def _check_grid(t_grid):
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise InvalidInputError("skew grid is empty")
    if not all(math.isfinite(t) for t in t_grid):
        raise InvalidInputError("skew grid contains non-finite values")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise InvalidInputError("skew grid must be strictly increasing")
    return t_grid


def skew_curve(kind, t_grid=None, e=None) -> SkewCurve:
    """Coherent fourfold intensity along one of the three skew paths.

    ``e`` defaults to the kind's own value (1 for upper and lower, 0 for
    middle); passing it explicitly overrides that.
    """
    _check_kind(kind)
    t_grid = _check_grid(default_grid() if t_grid is None else t_grid)
    e = SKEW_DEFAULT_E[kind] if e is None else check_interference(e)
    path = "lower" if kind == "lower" else "upper"
    pts = []
    for t in t_grid:
        r = coherent_correlation(skew_settings(path, t), e)
        pts.append(SkewPoint(t, r.raw, r.normalized))
    meta = {"kind": kind, "e": e, "path": path, "estimator": "coherent-exact"}
    if kind == "lower":
        meta["counter_rotated"] = COUNTER_ROTATED
    return SkewCurve(kind=kind, e=e, points=pts, metadata=meta)


def skew_closed_form(kind, t):
    """Analytic skew curves, raw units. Accepts scalars or arrays."""
    _check_kind(kind)
    c, s = np.cos(t), np.sin(t)
    if kind == "upper":
        out = (c**4 + s**4) ** 2 / 16.0
    elif kind == "lower":
        out = (c**4 - s**4) ** 2 / 16.0
    else:
        out = (c**8 + s**8) / 16.0
    return float(out) if np.ndim(out) == 0 else out


def overlap_sweep(a, e_grid):
    """Coherent intensity at fixed analyzers across interference weights."""
    if not isinstance(a, AnalyzerSettings):
        a = AnalyzerSettings(*a)
    e_grid = [check_interference(e) for e in e_grid]
    if not e_grid:
        raise InvalidInputError("interference grid is empty")
    rows = []
    for e in e_grid:
        r = coherent_correlation(a, e)
        rows.append((e, r.raw, r.normalized))
    return rows

