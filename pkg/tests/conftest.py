import sys

import pytest
from hypothesis import HealthCheck, settings

from tangentalg import groebner
from tangentalg.polycore import PolyRing

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _no_disk_store():
    # library calls never touch the on-disk cache unless a test installs one
    groebner.set_store(None)
    enabled = groebner.cache_enabled
    yield
    groebner.set_store(None)
    groebner.cache_enabled = enabled


@pytest.fixture
def xy():
    return PolyRing(["x", "y"])


@pytest.fixture
def xyz():
    return PolyRing(["x", "y", "z"])


def to_sympy(f, symbols):
    """Polynomial -> sympy expression over the integers/rationals (coefficients as stored)."""
    import sympy

    expr = sympy.Integer(0)
    for exps, c in f.sorted_terms():
        term = sympy.Rational(str(c))
        for s, e in zip(symbols, exps):
            term *= s**e
        expr += term
    return expr



def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
