"""Classical stochastic-signal model of a four-photon PBS coincidence bench."""
from .bench import AnalyzerSettings, PathwayAmplitudes, SourceState
from .estimators import (
    C_MAX,
    CorrelationResult,
    RngSpec,
    coherent_correlation,
    coherent_mc,
    denominator_diagnostic,
    detection_mc,
    incoherent_correlation,
)
from .kernels import BACKEND
from .qm_oracle import ghz_probability

__version__ = "0.1.0"

__all__ = [
    "AnalyzerSettings",
    "PathwayAmplitudes",
    "SourceState",
    "C_MAX",
    "CorrelationResult",
    "RngSpec",
    "coherent_correlation",
    "coherent_mc",
    "denominator_diagnostic",
    "detection_mc",
    "incoherent_correlation",
    "ghz_probability",
    "BACKEND",
]
