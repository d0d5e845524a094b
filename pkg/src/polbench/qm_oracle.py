"""Quantum reference: fourfold projection probability of a four-photon GHZ state.

Built from explicit 16-dimensional state vectors rather than any closed form,
so it shares no code path with the classical estimators it is used to check.
"""
import math

import numpy as np

from .bench import AnalyzerSettings

__all__ = ["ghz_state", "analyzer_state", "ghz_amplitude", "ghz_probability"]

_H = np.array([1.0, 0.0])
_V = np.array([0.0, 1.0])


def _kron(*vs):
    out = np.ones(1)
    for v in vs:
        out = np.kron(out, v)
    return out


def ghz_state():
    """(|HVVH> + |VHHV>)/sqrt(2), photons ordered by detector 1-4."""
    return (_kron(_H, _V, _V, _H) + _kron(_V, _H, _H, _V)) / math.sqrt(2.0)


def analyzer_state(a):
    """Product state transmitted by the four analyzers."""
    if not isinstance(a, AnalyzerSettings):
        a = AnalyzerSettings(*a)
    return _kron(*(np.array([math.cos(t), math.sin(t)]) for t in a.angles))


def ghz_amplitude(a) -> float:
    return float(analyzer_state(a) @ ghz_state())


def ghz_probability(a) -> float:
    return ghz_amplitude(a) ** 2
