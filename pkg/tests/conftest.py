from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from quiverdt.quiver import (c3_quiver, conifold_quiver, jordan_quiver,
                             kronecker_quiver, loop_quiver)

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

ZERO_THETA1 = (Fraction(0),)
GENERIC_THETA2 = (Fraction(1), Fraction(0))


@pytest.fixture
def jordan():
    return jordan_quiver()


@pytest.fixture
def kronecker():
    return kronecker_quiver()


@pytest.fixture
def c3():
    return c3_quiver()


@pytest.fixture
def conifold():
    return conifold_quiver()


@pytest.fixture
def two_loop():
    return loop_quiver(2)
