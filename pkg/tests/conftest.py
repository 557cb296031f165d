import numpy as np
import pytest

from cpred import ControlPolygon, make_knot_sequence

REF_KNOTS = (1.0, 1.5, 2.3, 4.0, 4.5)
REF_THETA = (1.0, 0.0, 3.5, 4.2, 3.7, -0.5, -0.7, 2.0, 1.5)


@pytest.fixture
def ref_knots():
    return make_knot_sequence(4, (0.0, 6.0), REF_KNOTS)


@pytest.fixture
def ref_polygon(ref_knots):
    return ControlPolygon(ref_knots, REF_THETA)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def random_knots(rng, order, n_interior, a=0.0, b=1.0):
    interior = np.sort(rng.uniform(a, b, n_interior))
    # keep interior knots distinct and away from the boundary
    interior = np.clip(interior, a + 1e-3 * (b - a), b - 1e-3 * (b - a))
    return make_knot_sequence(order, (a, b), interior)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            verdict = "FAIL (known, recorded as xfail)"
        else:
            verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _acceptance[report.nodeid] = verdict


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, verdict in _acceptance.items():
        name = nodeid.split("::")[-1].removeprefix("test_")
        terminalreporter.write_line(f"{verdict:<32} {name}")
