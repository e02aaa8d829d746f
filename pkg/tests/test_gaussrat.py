from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliationlab.gaussrat import GaussRat, I, rational_sqrt

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
gauss = st.builds(GaussRat, rationals, rationals)


def test_basic_arithmetic():
    assert GaussRat(1, 2) * GaussRat(1, -2) == GaussRat(5)
    assert I * I == GaussRat(-1)
    assert GaussRat(2) / I == GaussRat(0, -2)
    assert (GaussRat(3, 4) - GaussRat(1, 1)) == GaussRat(2, 3)


def test_division_exact():
    q = GaussRat(Fraction(3, 7), Fraction(-2, 5))
    assert q / q == GaussRat(1)
    with pytest.raises(ZeroDivisionError):
        q / GaussRat(0)


def test_sqrt_cases():
    assert GaussRat(Fraction(9, 4)).sqrt() == GaussRat(Fraction(3, 2))
    assert GaussRat(-4).sqrt() == GaussRat(0, 2)
    assert GaussRat(0, 2).sqrt() == GaussRat(1, 1)
    assert GaussRat(2).sqrt() is None
    assert GaussRat(0).sqrt() == GaussRat(0)
    assert rational_sqrt(Fraction(49, 81)) == Fraction(7, 9)
    assert rational_sqrt(Fraction(2)) is None


@given(gauss, gauss, gauss)
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@given(gauss)
@settings(max_examples=40, deadline=None)
def test_sqrt_squares_back(a):
    s = (a * a).sqrt()
    assert s is not None
    assert s * s == a * a


def test_q_plus_membership():
    assert GaussRat(Fraction(3, 2)).is_positive_rational()
    assert not GaussRat(-1).is_positive_rational()
    assert not GaussRat(1, 1).is_positive_rational()
    assert not GaussRat(0).is_positive_rational()
