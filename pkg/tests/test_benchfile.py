import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polbench.benchfile import (
    BenchDescription,
    ScanSpec,
    format_real,
    parse,
    parse_bytes,
    serialize,
)
from polbench.errors import BenchFileError, ParseError, ValidationError


def test_parse_c_regime():
    d = parse("analyzers_deg 90 0 0 90\ninterference 1\nestimator coherent")
    assert d.analyzers_deg == (90.0, 0.0, 0.0, 90.0)
    assert d.thetas == (math.pi / 2, 0.0, 0.0, math.pi / 2)
    assert d.interference == 1.0
    assert d.estimator == "coherent"


def test_parse_negative_angle_canonicalized():
    d = parse("analyzers_deg 45 45 45 -45\ninterference 0")
    assert d.analyzers_deg == (45.0, 45.0, 45.0, 135.0)
    assert d.thetas[0] == math.pi / 4
    assert d.interference == 0.0


def test_comments_and_blanks():
    text = "# header\n\n   # indented comment\nanalyzers_deg 1.5 -2 .5 3e1\n\r\n"
    assert parse(text).analyzers_deg == (1.5, 178.0, 0.5, 30.0)


def test_scan_defaults_filled():
    d = parse("scan skew-middle")
    assert d.scan == ScanSpec("skew-middle", 181, (0.0, 90.0))
    assert d.analyzers_deg is None
    assert "scan skew-middle points 181 range 0 90" in serialize(d)
    assert parse("analyzers_deg 0 0 0 0\nscan overlap").scan == ScanSpec("overlap", 11, (0.0, 1.0))
    assert serialize(parse("scan regimes")) == "estimator coherent\nscan regimes\n"


def test_sampled_fields():
    d = parse("analyzers_deg 0 0 0 0\nestimator coherent-mc\nsamples 1000\nseed 18446744073709551615")
    assert d.samples == 1000 and d.seed == 2**64 - 1 and d.sampled


def test_canonical_key_order():
    text = "seed 3\nscan regimes\nsamples 10\nestimator detection-mc\ninterference 0.5\n"
    assert serialize(parse(text)).splitlines() == [
        "interference 0.5",
        "estimator detection-mc",
        "samples 10",
        "seed 3",
        "scan regimes",
    ]


MALFORMED = [
    ("interference 2", 1, "2", ValidationError),
    ("analyzers_deg 0 0 0 0\nfoo 1", 2, "foo", ParseError),
    ("analyzers_deg 90 0 0", 1, "analyzers_deg 90 0 0", ParseError),
    ("analyzers_deg 90 0 0 0 0", 1, "0", ParseError),
    ("analyzers_deg 0 0 0 0\ninterference 1\ninterference 0", 3, "interference", ValidationError),
    ("analyzers_deg 0 0 x 0", 1, "x", ParseError),
    ("analyzers_deg 0 0 0 0\nestimator quantum", 2, "quantum", ParseError),
    ("analyzers_deg 0 0 0 0\nestimator coherent-mc\nsamples 0", 3, "0", ValidationError),
    ("analyzers_deg 0 0 0 0\nsamples 10", 2, "samples", ValidationError),
    ("scan skew-upper points 1", 1, "1", ValidationError),
    ("scan skew-upper range 90 0", 1, "0", ValidationError),
    ("analyzers_deg 0 0 0 0\nscan overlap range 0 2", 2, "2", ValidationError),
    ("scan wobble", 1, "wobble", ParseError),
    ("scan regimes points 5", 1, "5", ValidationError),
    ("interference 0.5", 1, "analyzers_deg", ValidationError),
    ("analyzers_deg 0 0 0 inf", 1, "inf", ParseError),
    ("analyzers_deg 0 0 0 1e999", 1, "1e999", ValidationError),
    ("analyzers_deg 0 0 0 1_0", 1, "1_0", ParseError),
    ("seed -1\nestimator coherent-mc", 1, "-1", ParseError),
    ("estimator incoherent\nscan skew-lower", 1, "incoherent", ValidationError),
    ("analyzers_deg 0 0 0 0\ninterference 1\nscan overlap", 2, "interference", ValidationError),
    ("scan skew-upper points", 1, "points", ParseError),
    ("scan skew-upper range 0", 1, "range", ParseError),
    ("scan skew-upper bogus", 1, "bogus", ParseError),
]


@pytest.mark.parametrize("text, line, token, exc", MALFORMED)
def test_malformed(text, line, token, exc):
    with pytest.raises(exc) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.token == token
    assert f"line {line}" in str(info.value)


def test_invalid_utf8_reports_line():
    with pytest.raises(ParseError) as info:
        parse_bytes(b"analyzers_deg 0 0 0 0\n\xff\xfe")
    assert info.value.line == 2


@pytest.mark.parametrize("x", [0.0, 1.0, 135.0, 0.1, 1e-7, 179.99999999999997, 1 / 3, 12345678.125])
def test_format_real_round_trips(x):
    assert float(format_real(x)) == x


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def descriptions(draw):
    estimator = draw(st.sampled_from(["coherent", "incoherent", "coherent-mc", "detection-mc"]))
    scan_kind = draw(st.sampled_from([None, "regimes", "skew-upper", "skew-lower", "skew-middle", "overlap"]))
    if scan_kind in ("skew-upper", "skew-lower", "skew-middle", "overlap"):
        estimator = "coherent"
    scan = None
    if scan_kind == "regimes":
        scan = ScanSpec("regimes")
    elif scan_kind == "overlap":
        lo = draw(st.floats(0.0, 0.5))
        hi = draw(st.floats(0.5, 1.0).filter(lambda h: h > lo))
        scan = ScanSpec("overlap", draw(st.integers(2, 500)), (lo, hi))
    elif scan_kind is not None:
        lo = draw(finite)
        hi = draw(finite.filter(lambda h: h > lo))
        scan = ScanSpec(scan_kind, draw(st.integers(2, 5000)), (lo, hi))
    need_angles = scan_kind in (None, "overlap")
    angles = None
    if need_angles or draw(st.booleans()):
        angles = tuple(draw(finite) for _ in range(4))
    interference = None
    if scan_kind != "overlap" and draw(st.booleans()):
        interference = draw(st.floats(0.0, 1.0))
    samples = seed = None
    if estimator in ("coherent-mc", "detection-mc"):
        samples = draw(st.none() | st.integers(1, 10**9))
        seed = draw(st.none() | st.integers(0, 2**64 - 1))
    return BenchDescription(angles, interference, estimator, samples, seed, scan)


@given(descriptions())
def test_round_trip(d):
    text = serialize(d)
    back = parse(text)
    assert back == d
    assert serialize(back) == text


@given(st.binary(max_size=200))
def test_fuzz_bytes_never_crash(data):
    try:
        parse_bytes(data)
    except BenchFileError as exc:
        assert exc.line >= 1


@given(st.text(alphabet=st.sampled_from(list("analyzers_deg interfc 0123456789.-+eE#\n\t")), max_size=120))
def test_fuzz_near_grammar(text):
    try:
        parse(text)
    except BenchFileError as exc:
        assert exc.line >= 1 and exc.token is not None
