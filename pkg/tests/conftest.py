import random

import pytest
from hypothesis import settings, strategies as st

from cuntzli.rings import F2, F2T, ZI, Z

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

NONFIELD = [Z, ZI, F2T]
ALL_RINGS = [Z, ZI, F2T, F2]


def elements(ring, bound=40, nonzero=False):
    """Hypothesis strategy for raw ring values."""
    if ring is Z:
        s = st.integers(-bound, bound)
    elif ring is ZI:
        s = st.tuples(st.integers(-bound // 4, bound // 4), st.integers(-bound // 4, bound // 4))
    elif ring is F2T:
        s = st.integers(0, 63)
    else:
        s = st.integers(0, 1)
    if nonzero:
        s = s.filter(lambda v: v != ring.zero)
    return s


@pytest.fixture(params=NONFIELD, ids=lambda r: r.token)
def ring(request):
    return request.param


@pytest.fixture(params=ALL_RINGS, ids=lambda r: r.token)
def any_ring(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240517)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
