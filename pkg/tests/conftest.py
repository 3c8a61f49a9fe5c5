from fractions import Fraction

import pytest

from tropbase.arith import PAdicField, RationalFunctionField
from tropbase.poly import PolyRing, parse_polynomial


@pytest.fixture
def q2():
    return PAdicField(2)


@pytest.fixture
def ring_xyz(q2):
    return PolyRing(("x", "y", "z"), q2)


@pytest.fixture
def example_gens(ring_xyz):
    return [parse_polynomial(ring_xyz, "2*x+y-4"),
            parse_polynomial(ring_xyz, "x+2*y+z-1")]


@pytest.fixture
def qt():
    return RationalFunctionField()


def frac(x):
    return Fraction(x)
