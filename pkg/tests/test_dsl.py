from fractions import Fraction

import pytest

from foliationlab.gaussrat import GaussRat
from foliationlab.dsl import (
    NonPolynomial,
    ParseError,
    curve_to_text,
    divisor_to_text,
    parse_curve,
    parse_divisor,
    parse_polynomial,
    parse_vector_field,
)
from foliationlab.corpus import seidenberg_corpus


def test_field_examples():
    v = parse_vector_field("v = (x^2 + y) d/dx + (x*y) d/dy")
    assert v.components[0].coeff((2, 0)) == GaussRat(1)
    assert v.components[0].coeff((0, 1)) == GaussRat(1)
    assert v.components[1].coeff((1, 1)) == GaussRat(1)

    v = parse_vector_field("v = (i*x) d/dx - y d/dy")
    assert v.components[0].coeff((1, 0)) == GaussRat(0, 1)
    assert v.components[1].coeff((0, 1)) == GaussRat(-1)

    with pytest.raises(NonPolynomial):
        parse_vector_field("v = exp(x) d/dx")


def test_field_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_vector_field("v = (x + ) d/dx")
    assert "column" in str(exc.value)
    with pytest.raises(ParseError):
        parse_vector_field("v = x d/dx + z d/dy")  # z undeclared
    with pytest.raises(ParseError):
        parse_vector_field("x + y")  # no markers


def test_rational_and_complex_coefficients():
    v = parse_vector_field("v = 1/2*x d/dx + (2 - 3*i)*y d/dy")
    assert v.components[0].coeff((1, 0)) == GaussRat(Fraction(1, 2))
    assert v.components[1].coeff((0, 1)) == GaussRat(2, -3)
    with pytest.raises(NonPolynomial):
        parse_vector_field("v = (1/x) d/dx + y d/dy")


def test_curve_examples():
    c = parse_curve("f(t) = (exp(t), exp(2*t))")
    assert c.dim() == 2 and not c.is_algebraic()
    c = parse_curve("f(t) = (t, t^2) zeros: both at 0")
    assert c.declared_zeros["f1"] == [(GaussRat(0), 1)]
    assert c.declared_zeros["f2"] == [(GaussRat(0), 2)]
    with pytest.raises(ParseError):
        parse_curve("f(t) = (1/t, t)")
    c = parse_curve("f(t) = (t - 1/2) zeros: f1 at 1/2 order 1")
    assert c.declared_zeros["f1"][0][0] == GaussRat(Fraction(1, 2))


def test_divisor_parsing():
    d = parse_divisor("D = {x}", ("x", "y"))
    assert d.axes == frozenset({0})
    d = parse_divisor("{1, y}", ("x", "y"))
    assert d.axes == frozenset({0, 1})
    with pytest.raises(ParseError):
        parse_divisor("D = {q}", ("x", "y"))
    assert divisor_to_text(d, ("x", "y")) == "D = {x, y}"


def test_round_trip_on_corpus_sample():
    corpus = seidenberg_corpus(max_random=40)
    for v in corpus[::7]:
        assert parse_vector_field(v.to_text()) == v


def test_curve_round_trip():
    c = parse_curve("f(t) = (t + 1, exp(2*t))")
    text = curve_to_text(c)
    c2 = parse_curve(text)
    assert curve_to_text(c2) == text


def test_polynomial_entry_point():
    p = parse_polynomial("(x + y)^2 - x^2 - 2*x*y", ("x", "y"))
    assert p.to_string() == "y^2"
