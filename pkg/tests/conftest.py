import math
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

DEG = math.pi / 180


@pytest.fixture(params=["python", "cython"])
def kernel_impl(request):
    """Each Monte Carlo kernel backend that is available."""
    if request.param == "python":
        from polbench import _pykernels

        return _pykernels
    try:
        from polbench import _ckernels
    except ImportError:
        pytest.skip("compiled kernels not built")
    return _ckernels


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _ACCEPTANCE_MARKERS.get(report.nodeid)
    if marker is None:
        return
    n, title = marker
    _ACCEPTANCE[n] = (title, report.outcome)


_ACCEPTANCE_MARKERS = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _ACCEPTANCE_MARKERS[item.nodeid] = m.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[n]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {n:2d}: {title}")
