"""Fourfold coincidence estimators.

Two exact readings of the fourth-order correlation are provided:

``coherent``
    Average each PBS pathway amplitude over the four equally likely source
    states, then square. The cross term between the two pathways is weighted
    by the interference flag ``e``: 1 for crossover pulses that overlap in
    time, 0 for pulses that arrive separately.
``incoherent``
    Average the product of the four detector intensities over source states.
    Kept for comparison; squaring per state means opposite-sign pathways can
    never cancel, so it misses the null regime.

Each has a seeded Monte Carlo counterpart driven by the kernels in
:mod:`polbench.kernels`.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .bench import ALL_STATES, AnalyzerSettings, pathway_table, source_fields, source_split
from .errors import InvalidInputError, RangeError
from .jones import project_amplitude

__all__ = [
    "C_MAX",
    "ESTIMATORS",
    "CorrelationResult",
    "DenominatorReport",
    "RngSpec",
    "check_interference",
    "closed_form_amplitudes",
    "coherent_amplitudes",
    "coherent_correlation",
    "incoherent_correlation",
    "detector_intensities",
    "denominator_diagnostic",
    "coherent_mc",
    "detection_mc",
    "estimate",
]

#: Coherent fourfold intensity at {pi/2, 0, 0, pi/2}; every ``normalized`` is relative to this.
C_MAX = 1.0 / 16.0

ESTIMATORS = ("coherent-exact", "incoherent-exact", "coherent-mc", "detection-mc")
_ALIASES = {"coherent": "coherent-exact", "incoherent": "incoherent-exact"}

_MASK64 = (1 << 64) - 1


def check_interference(e) -> float:
    try:
        e = float(e)
    except (TypeError, ValueError):
        raise RangeError(f"interference must be a number in [0, 1], got {e!r}") from None
    if not (0.0 <= e <= 1.0):
        raise RangeError(f"interference must lie in [0, 1], got {e!r}")
    return e


def canonical_estimator(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in ESTIMATORS:
        raise InvalidInputError(f"unknown estimator {name!r}")
    return name


@dataclass(frozen=True)
class RngSpec:
    """Seed plus stream index.

    Different streams under one seed are statistically independent. Within a
    stream, sample ``i`` always reads the same random words, so splitting a
    run into blocks (see :func:`partition`) never changes the estimate.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed <= _MASK64:
            raise InvalidInputError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not isinstance(self.stream, (int, np.integer)) or self.stream < 0:
            raise InvalidInputError(f"stream must be a nonnegative integer, got {self.stream!r}")

    @property
    def key(self) -> int:
        return kernels.stream_key(int(self.seed), int(self.stream))


@dataclass(frozen=True)
class CorrelationResult:
    raw: float
    normalized: float
    estimator: str
    e: float
    stderr: Optional[float] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    extra: dict = field(default_factory=dict, compare=False)


def _result(raw, estimator, e, **kw) -> CorrelationResult:
    return CorrelationResult(raw=raw, normalized=raw / C_MAX, estimator=estimator, e=e, **kw)


def _settings(a) -> AnalyzerSettings:
    if isinstance(a, AnalyzerSettings):
        return a
    return AnalyzerSettings(*a)


def _interfere(a1: float, a2: float, e: float) -> float:
    # (1-e)(a1^2 + a2^2) + e(a1 + a2)^2 == a1^2 + a2^2 + 2e a1 a2, but never negative
    return (1.0 - e) * (a1 * a1 + a2 * a2) + e * (a1 + a2) ** 2


def coherent_amplitudes(a) -> tuple[float, float]:
    """Source-averaged pathway amplitudes, summed over states then divided by 4."""
    table = pathway_table(_settings(a))
    return (
        sum(p.t1 for p in table) / 4.0,
        sum(p.t2 for p in table) / 4.0,
    )


def closed_form_amplitudes(a) -> tuple[float, float]:
    a = _settings(a)
    s1, c1 = math.sin(a.theta1), math.cos(a.theta1)
    s2, c2 = math.sin(a.theta2), math.cos(a.theta2)
    s3, c3 = math.sin(a.theta3), math.cos(a.theta3)
    s4, c4 = math.sin(a.theta4), math.cos(a.theta4)
    return 0.25 * s1 * c2 * c3 * s4, 0.25 * c1 * s2 * s3 * c4


def coherent_correlation(a, e=1.0) -> CorrelationResult:
    e = check_interference(e)
    amp1, amp2 = coherent_amplitudes(a)
    return _result(
        _interfere(amp1, amp2, e), "coherent-exact", e, extra={"A1": amp1, "A2": amp2}
    )


def detector_intensities(s, a, e) -> tuple[float, float, float, float]:
    """Intensity at detectors 1-4 for one source state.

    At detectors 2 and 3 the two sources' contributions are combined with
    cross term weight ``e``.
    """
    a = _settings(a)
    a1, _, b1, _ = source_fields(s)
    (a_to_2, b_to_2), (a_to_3, b_to_3) = source_split(s, a)
    return (
        project_amplitude(a1, a.theta1) ** 2,
        _interfere(a_to_2, b_to_2, e),
        _interfere(a_to_3, b_to_3, e),
        project_amplitude(b1, a.theta4) ** 2,
    )


def incoherent_correlation(a, e=1.0) -> CorrelationResult:
    e = check_interference(e)
    a = _settings(a)
    total = 0.0
    for s in ALL_STATES:
        i1, i2, i3, i4 = detector_intensities(s, a, e)
        total += i1 * i2 * i3 * i4
    return _result(total / 4.0, "incoherent-exact", e)


@dataclass(frozen=True)
class DenominatorReport:
    """Singles-rate normalization under the two averaging conventions.

    ``mean`` averages each detector intensity over the four source states.
    ``sum`` sums it over the states of the sources that feed the detector
    (one bit for detectors 1 and 4, both bits for detectors 2 and 3).
    """

    mean: tuple[float, float, float, float]
    sum: tuple[float, float, float, float]

    @property
    def mean_product(self) -> float:
        return math.prod(self.mean)

    @property
    def sum_product(self) -> float:
        return math.prod(self.sum)

    def as_dict(self):
        return {
            "mean": list(self.mean),
            "mean_product": self.mean_product,
            "sum": list(self.sum),
            "sum_product": self.sum_product,
        }


def denominator_diagnostic(a, e=1.0) -> DenominatorReport:
    e = check_interference(e)
    a = _settings(a)
    totals = [0.0] * 4
    for s in ALL_STATES:
        for j, value in enumerate(detector_intensities(s, a, e)):
            totals[j] += value
    mean = tuple(t / 4.0 for t in totals)
    # detectors 1 and 4 depend on one bit only; the other bit doubles the sum
    summed = (totals[0] / 2.0, totals[1], totals[2], totals[3] / 2.0)
    return DenominatorReport(mean=mean, sum=summed)


# --- Monte Carlo ---------------------------------------------------------


def _check_count(samples, what="samples") -> int:
    if isinstance(samples, bool) or not isinstance(samples, (int, np.integer)):
        raise InvalidInputError(f"{what} must be a positive integer, got {samples!r}")
    if samples < 1:
        raise InvalidInputError(f"{what} must be at least 1, got {samples}")
    return int(samples)


def _rng(rng) -> RngSpec:
    if isinstance(rng, RngSpec):
        return rng
    return RngSpec(int(rng))


def partition(total: int, workers: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into ``workers`` contiguous, near-equal blocks."""
    workers = max(1, min(int(workers), total))
    base, rem = divmod(total, workers)
    blocks, lo = [], 0
    for k in range(workers):
        hi = lo + base + (1 if k < rem else 0)
        blocks.append((lo, hi))
        lo = hi
    return blocks


def _fan_out(fn, total, workers):
    blocks = partition(total, workers)
    if len(blocks) == 1:
        return [fn(*blocks[0])]
    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        return list(pool.map(lambda b: fn(*b), blocks))


def coherent_mc(a, e=1.0, samples=1_000_000, rng=0, workers=1) -> CorrelationResult:
    """Sampled coherent estimator.

    Source states are drawn uniformly; the pathway amplitudes are averaged
    over the draws and combined as in :func:`coherent_correlation`. The
    standard error propagates the sample covariance of (t1, t2) through the
    squaring by the delta method.
    """
    e = check_interference(e)
    samples = _check_count(samples)
    rng = _rng(rng)
    table = pathway_table(_settings(a))
    key = rng.key
    parts = _fan_out(lambda lo, hi: kernels.state_counts(key, lo, hi), samples, workers)
    counts = np.sum(parts, axis=0)

    t = np.array([[p.t1, p.t2] for p in table])
    w = counts / samples
    mean = w @ t
    dev = t - mean
    cov = (dev.T * w) @ dev
    if samples > 1:
        cov *= samples / (samples - 1)
    amp1, amp2 = float(mean[0]), float(mean[1])
    grad = np.array([2.0 * amp1 + 2.0 * e * amp2, 2.0 * amp2 + 2.0 * e * amp1])
    var = float(grad @ cov @ grad) / samples
    return _result(
        _interfere(amp1, amp2, e),
        "coherent-mc",
        e,
        stderr=math.sqrt(max(var, 0.0)),
        seed=int(rng.seed),
        samples=samples,
        extra={
            "A1": amp1,
            "A2": amp2,
            "stream": int(rng.stream),
            "state_counts": [int(c) for c in counts],
        },
    )


def detection_probabilities(a, e):
    """Per-state firing probabilities and the per-detector scale factors.

    Each detector's intensity is divided by its maximum over the source
    states so that it is a probability. A detector that is dark in every
    state keeps scale 1 and never fires.
    """
    a = _settings(a)
    inten = np.array([detector_intensities(s, a, e) for s in ALL_STATES])
    scale = inten.max(axis=0)
    scale[scale <= 0.0] = 1.0
    return np.minimum(inten / scale, 1.0), scale


def detection_mc(a, e=1.0, trials=1_000_000, rng=0, workers=1) -> CorrelationResult:
    """Event-level photodetection simulation.

    Per trial a source state is drawn, then each detector releases a
    photoelectron with probability proportional to its intensity. The
    fourfold coincidence rate times the product of scale factors converges
    to :func:`incoherent_correlation`; that rescaled value is ``raw``.
    """
    e = check_interference(e)
    trials = _check_count(trials, "trials")
    rng = _rng(rng)
    probs, scale = detection_probabilities(a, e)
    key = rng.key
    parts = _fan_out(
        lambda lo, hi: kernels.coincidence_counts(key, lo, hi, probs), trials, workers
    )
    per_state = np.sum([p[0] for p in parts], axis=0)
    hits = np.sum([p[1] for p in parts], axis=0)
    rate = float(hits.sum()) / trials
    factor = float(np.prod(scale))
    stderr = math.sqrt(rate * (1.0 - rate) / trials) * factor
    return _result(
        rate * factor,
        "detection-mc",
        e,
        stderr=stderr,
        seed=int(rng.seed),
        samples=trials,
        extra={
            "rate": rate,
            "scale": [float(x) for x in scale],
            "scale_product": factor,
            "stream": int(rng.stream),
            "state_counts": [int(c) for c in per_state],
            "coincidences": [int(c) for c in hits],
        },
    )


def estimate(a, e=1.0, estimator="coherent-exact", samples=1_000_000, seed=0, workers=1):
    """Dispatch by estimator name (short names ``coherent``/``incoherent`` accepted)."""
    name = canonical_estimator(estimator)
    if name == "coherent-exact":
        return coherent_correlation(a, e)
    if name == "incoherent-exact":
        return incoherent_correlation(a, e)
    if name == "coherent-mc":
        return coherent_mc(a, e, samples, RngSpec(seed), workers)
    return detection_mc(a, e, samples, RngSpec(seed), workers)
