import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from dispersal import kernels

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BACKENDS = ["python"] + (["cython"] if kernels.compiled is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    module = kernels.python if request.param == "python" else kernels.compiled
    monkeypatch.setattr(kernels, "active", module)
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240601)


def quarter_grid(rng, n, top=16):
    return [Fraction(rng.randint(0, top), 4) for _ in range(n)]


_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")
    config.stash[_RESULTS] = {}


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed or report.skipped):
        number, title = marker.args
        results = item.config.stash[_RESULTS]
        ok, seconds, _ = results.get(number, (True, 0.0, title))
        results[number] = (ok and report.passed, seconds + report.duration, title)
    return report


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, seconds, title = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.1f}s)")
