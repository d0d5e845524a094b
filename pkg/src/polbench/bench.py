"""The fixed four-detector bench: two pulse-pair sources and one PBS.

Source A feeds detector 1 directly and sends its partner pulse into one face
of the polarizing beam splitter; source B feeds detector 4 and the other face.
The PBS transmits horizontal and reflects vertical light, so detector 2 sees
B transmitted plus A reflected and detector 3 sees A transmitted plus B
reflected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidInputError
from .jones import (
    REFLECT,
    TRANSMIT,
    PolVector,
    apply,
    canonical_angle,
    canonical_degrees,
    cos_sin,
    polarizer_matrix,
    project_amplitude,
)

# cos(k*pi/2), sin(k*pi/2) for k in {0, 1}, exactly
_COS_BIT = (1.0, 0.0)
_SIN_BIT = (0.0, 1.0)


class SourceState(NamedTuple):
    """Emission mode of source A (n) and source B (m)."""

    n: int
    m: int

    def validate(self):
        if self.n not in (0, 1) or self.m not in (0, 1):
            raise InvalidInputError(f"source bits must be 0 or 1, got {tuple(self)}")
        return self


ALL_STATES = tuple(SourceState(n, m) for n in (0, 1) for m in (0, 1))


@dataclass(frozen=True)
class AnalyzerSettings:
    """Analyzer angles in front of detectors 1-4, radians, reduced to [0, pi)."""

    theta1: float
    theta2: float
    theta3: float
    theta4: float

    def __post_init__(self):
        for name in ("theta1", "theta2", "theta3", "theta4"):
            object.__setattr__(self, name, canonical_angle(getattr(self, name)))

    @classmethod
    def from_degrees(cls, d1, d2, d3, d4):
        # reduce in degrees first so 135 and -45 give bit-identical radians
        return cls(*(math.radians(canonical_degrees(d)) for d in (d1, d2, d3, d4)))

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return (self.theta1, self.theta2, self.theta3, self.theta4)

    def degrees(self) -> tuple[float, ...]:
        return tuple(math.degrees(t) for t in self.angles)


class PathwayAmplitudes(NamedTuple):
    """Fourfold amplitude split by PBS routing.

    ``t1``: B transmitted to detector 2, A transmitted to detector 3.
    ``t2``: A reflected to detector 2, B reflected to detector 3.
    """

    t1: float
    t2: float


def _as_state(s) -> SourceState:
    return SourceState(*s).validate()


def source_fields(s) -> tuple[PolVector, PolVector, PolVector, PolVector]:
    """Polarization vectors (A1, A2, B1, B2) of the two anticorrelated pulse pairs."""
    n, m = _as_state(s)
    cn, sn = _COS_BIT[n], _SIN_BIT[n]
    cm, sm = _COS_BIT[m], _SIN_BIT[m]
    return (
        PolVector(cn, sn),
        PolVector(sn, -cn),
        PolVector(cm, sm),
        PolVector(sm, -cm),
    )


def pbs_inputs(s) -> tuple[PolVector, PolVector]:
    """Fields leaving the PBS toward detectors 2 and 3, before their analyzers."""
    _, a2, _, b2 = source_fields(s)
    to2 = apply(TRANSMIT, b2) - apply(REFLECT, a2)
    to3 = apply(TRANSMIT, a2) - apply(REFLECT, b2)
    return to2, to3


def detector_fields(s, a: AnalyzerSettings) -> tuple[PolVector, PolVector, PolVector, PolVector]:
    a1, _, b1, _ = source_fields(s)
    to2, to3 = pbs_inputs(s)
    return (
        apply(polarizer_matrix(a.theta1), a1),
        apply(polarizer_matrix(a.theta2), to2),
        apply(polarizer_matrix(a.theta3), to3),
        apply(polarizer_matrix(a.theta4), b1),
    )


def detector_amplitudes(s, a: AnalyzerSettings) -> tuple[float, float, float, float]:
    """Signed scalar amplitude at each detector along its analyzer axis."""
    a1, _, b1, _ = source_fields(s)
    to2, to3 = pbs_inputs(s)
    return (
        project_amplitude(a1, a.theta1),
        project_amplitude(to2, a.theta2),
        project_amplitude(to3, a.theta3),
        project_amplitude(b1, a.theta4),
    )


def source_split(s, a: AnalyzerSettings):
    """Per-source amplitudes at detectors 2 and 3: ((A->2, B->2), (A->3, B->3)).

    A reaches detector 2 by reflection and detector 3 by transmission; B the
    other way round. The reflected term carries the sign of the PBS wiring.
    """
    n, m = _as_state(s)
    c2, s2 = cos_sin(a.theta2)
    c3, s3 = cos_sin(a.theta3)
    a_to_2 = _COS_BIT[n] * s2
    b_to_2 = _SIN_BIT[m] * c2
    a_to_3 = _SIN_BIT[n] * c3
    b_to_3 = _COS_BIT[m] * s3
    return (a_to_2, b_to_2), (a_to_3, b_to_3)


def pathway_amplitudes(s, a: AnalyzerSettings) -> PathwayAmplitudes:
    n, m = _as_state(s)
    a1, _, b1, _ = source_fields((n, m))
    amp1 = project_amplitude(a1, a.theta1)
    amp4 = project_amplitude(b1, a.theta4)
    (a_to_2, b_to_2), (a_to_3, b_to_3) = source_split((n, m), a)
    return PathwayAmplitudes(
        amp1 * b_to_2 * a_to_3 * amp4,
        amp1 * a_to_2 * b_to_3 * amp4,
    )


def pathway_table(a: AnalyzerSettings) -> tuple[PathwayAmplitudes, ...]:
    """Pathway amplitudes for the four source states, in ``ALL_STATES`` order."""
    return tuple(pathway_amplitudes(s, a) for s in ALL_STATES)
