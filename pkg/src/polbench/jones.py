"""Real-valued Jones calculus: polarization vectors and linear polarizers.

Only real amplitudes are carried; the bench never introduces a phase, so a
vector is just a (horizontal, vertical) pair and a polarizer is the rank-one
projector onto its transmission axis.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from .errors import InvalidInputError

__all__ = [
    "PolVector",
    "PolarizerOp",
    "canonical_angle",
    "canonical_degrees",
    "cos_sin",
    "polarizer_matrix",
    "apply",
    "project_amplitude",
    "intensity",
    "TRANSMIT",
    "REFLECT",
]

_QUARTER = math.pi / 4
_HALF_SQRT2 = math.sqrt(0.5)
# cos, sin at k*pi/4 for k = 0..7, exact to the last bit and sign-symmetric
_OCTANTS = [
    (1.0, 0.0),
    (_HALF_SQRT2, _HALF_SQRT2),
    (0.0, 1.0),
    (-_HALF_SQRT2, _HALF_SQRT2),
    (-1.0, 0.0),
    (-_HALF_SQRT2, -_HALF_SQRT2),
    (0.0, -1.0),
    (_HALF_SQRT2, -_HALF_SQRT2),
]


class PolVector(NamedTuple):
    h: float
    v: float

    def __add__(self, other):
        return PolVector(self.h + other.h, self.v + other.v)

    def __sub__(self, other):
        return PolVector(self.h - other.h, self.v - other.v)

    def __neg__(self):
        return PolVector(-self.h, -self.v)

    def dot(self, other) -> float:
        return self.h * other.h + self.v * other.v


class PolarizerOp(NamedTuple):
    """2x2 real matrix stored row-major as (m00, m01, m10, m11)."""

    m00: float
    m01: float
    m10: float
    m11: float

    def as_rows(self):
        return ((self.m00, self.m01), (self.m10, self.m11))

    def __matmul__(self, other):
        if isinstance(other, PolarizerOp):
            return PolarizerOp(
                self.m00 * other.m00 + self.m01 * other.m10,
                self.m00 * other.m01 + self.m01 * other.m11,
                self.m10 * other.m00 + self.m11 * other.m10,
                self.m10 * other.m01 + self.m11 * other.m11,
            )
        return apply(self, other)


def _check_finite(theta: float) -> float:
    try:
        theta = float(theta)
    except (TypeError, ValueError):
        raise InvalidInputError(f"angle must be a real number, got {theta!r}") from None
    if not math.isfinite(theta):
        raise InvalidInputError(f"angle must be finite, got {theta!r}")
    return theta


def canonical_angle(theta: float) -> float:
    """Reduce an analyzer angle (radians) to [0, pi).

    Analyzer axes are lines, not directions, so theta and theta + pi are the
    same setting.
    """
    theta = _check_finite(theta)
    r = math.fmod(theta, math.pi)
    if r < 0.0:
        r += math.pi
    # fmod of a tiny negative can round back up to pi
    if r >= math.pi:
        r = 0.0
    return r + 0.0


def canonical_degrees(deg: float) -> float:
    """Degree counterpart of :func:`canonical_angle`, reducing to [0, 180)."""
    deg = _check_finite(deg)
    r = math.fmod(deg, 180.0)
    if r < 0.0:
        r += 180.0
    if r >= 180.0:
        r = 0.0
    return r + 0.0


def cos_sin(theta: float) -> tuple[float, float]:
    """cos and sin of theta, exact at integer multiples of pi/4.

    ``math.cos(pi/4)`` and ``math.sin(pi/4)`` differ in the last bit, which
    turns exact cancellations (the null regime) into 1e-33 residues.
    """
    k = round(theta / _QUARTER)
    if abs(theta - k * _QUARTER) <= 4.0 * math.ulp(max(abs(theta), _QUARTER)):
        return _OCTANTS[k % 8]
    return math.cos(theta), math.sin(theta)


def polarizer_matrix(theta: float) -> PolarizerOp:
    """Projector onto the axis at angle theta from horizontal.

    theta = 0 transmits horizontal light, theta = pi/2 vertical light.
    """
    c, s = cos_sin(canonical_angle(theta))
    return PolarizerOp(c * c, c * s, s * c, s * s)


TRANSMIT = polarizer_matrix(0.0)
REFLECT = polarizer_matrix(math.pi / 2)


def apply(op: PolarizerOp, w: PolVector) -> PolVector:
    return PolVector(op.m00 * w.h + op.m01 * w.v, op.m10 * w.h + op.m11 * w.v)


def project_amplitude(w: PolVector, theta: float) -> float:
    """Signed amplitude of ``w`` along the analyzer axis at ``theta``."""
    c, s = cos_sin(canonical_angle(theta))
    return w.h * c + w.v * s


def intensity(w: PolVector) -> float:
    return w.h * w.h + w.v * w.v
