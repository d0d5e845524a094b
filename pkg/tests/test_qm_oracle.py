import math
import random

import numpy as np
import pytest

import sym_oracle
from polbench.bench import AnalyzerSettings
from polbench.estimators import coherent_correlation
from polbench.qm_oracle import analyzer_state, ghz_amplitude, ghz_probability, ghz_state

H, Q = math.pi / 2, math.pi / 4


@pytest.mark.parametrize(
    "theta, expected", [((H, 0, 0, H), 0.5), ((Q, Q, Q, Q), 0.125), ((Q, Q, Q, -Q), 0.0)]
)
def test_examples(theta, expected):
    assert ghz_probability(theta) == pytest.approx(expected, abs=1e-12)


def test_states_normalized():
    assert np.linalg.norm(ghz_state()) == pytest.approx(1.0)
    assert np.linalg.norm(analyzer_state((0.3, 1.0, 2.0, 2.5))) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(3))
def test_against_symbolic(seed):
    rnd = random.Random(seed)
    theta = tuple(rnd.uniform(0, math.pi) for _ in range(4))
    assert ghz_probability(theta) == pytest.approx(float(sym_oracle.ghz(theta)), abs=1e-12)


def test_proportional_to_coherent():
    rnd = random.Random(42)
    for _ in range(200):
        a = AnalyzerSettings(*(rnd.uniform(-math.pi, math.pi) for _ in range(4)))
        assert abs(ghz_amplitude(a)) <= 1.0
        assert ghz_probability(a) == pytest.approx(8 * coherent_correlation(a, 1).raw, abs=1e-9)
