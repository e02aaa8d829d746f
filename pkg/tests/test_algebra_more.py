"""Series, exact linear algebra, univariate roots, monomial ideals."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliationlab.gaussrat import GaussRat
from foliationlab.mvpoly import MVPoly
from foliationlab.series import TruncatedSeries, poly_eval_series
from foliationlab import linalg, unipoly
from foliationlab.monomial import (
    MonomialIdeal,
    multiplier_ideal_trivial_monomial,
    newton_interior_margin,
    simplex_min,
)


def test_series_arithmetic_and_truncation():
    t = TruncatedSeries.t(5)
    s = (1 + t) * (1 - t)
    assert s[0] == GaussRat(1) and s[2] == GaussRat(-1)
    short = TruncatedSeries([1, 1], 2)
    assert (s * short).order == 2


def test_series_division():
    t = TruncatedSeries.t(6)
    num = t * t * (1 + t)
    den = t
    q = num.divide(den)
    assert q.valuation() == 1 and q[1] == GaussRat(1) and q[2] == GaussRat(1)
    with pytest.raises(ValueError):
        den.divide(num)


def test_poly_eval_series():
    vs = ("x", "y")
    p = MVPoly.var(vs, "x") * MVPoly.var(vs, "y") + MVPoly.const(vs, 3)
    t = TruncatedSeries.t(4)
    out = poly_eval_series(p, [t, t * t])
    assert out[0] == GaussRat(3) and out[3] == GaussRat(1)


def test_solve_and_kernel():
    m = linalg.mat([[1, 2], [2, 4]])
    assert linalg.solve(m, [GaussRat(1), GaussRat(2)]) is not None
    assert linalg.solve(m, [GaussRat(1), GaussRat(3)]) is None
    assert len(linalg.kernel_basis(m)) == 1
    assert linalg.rank(m) == 1
    assert linalg.det(m).is_zero()
    inv = linalg.inverse(linalg.mat([[1, 1], [0, 1]]))
    assert inv == linalg.mat([[1, -1], [0, 1]])


def _matrix_strategy():
    coeff = st.builds(GaussRat, st.integers(-3, 3), st.integers(-1, 1))
    return st.lists(st.lists(coeff, min_size=3, max_size=3), min_size=3, max_size=3).map(
        lambda rows: tuple(tuple(r) for r in rows)
    )


@given(_matrix_strategy())
@settings(max_examples=30, deadline=None)
def test_eigenvalues_reproduce_char_poly(m):
    cp = linalg.char_poly(m)
    ev = linalg.eigenvalues_exact(m)
    if isinstance(ev, linalg.Indeterminate):
        return
    prod = [GaussRat(1)]
    for lam in ev:
        prod = unipoly.poly_mul(prod, [-lam, GaussRat(1)])
    assert prod == unipoly.trim(cp)


def test_eigenvalue_examples():
    assert sorted(str(e) for e in linalg.eigenvalues_exact(linalg.mat([[1, 0], [0, -1]]))) == ["-1", "1"]
    assert [str(e) for e in linalg.eigenvalues_exact(linalg.mat([[0, 1], [0, 0]]))] == ["0", "0"]
    ev = linalg.eigenvalues_exact(linalg.mat([[0, -1], [1, 0]]))
    assert {str(e) for e in ev} == {"i", "-i"}
    ind = linalg.eigenvalues_exact(linalg.mat([[0, 2], [1, 0]]))  # +-sqrt(2)
    assert isinstance(ind, linalg.Indeterminate)
    assert len(ind.approx) == 2


def test_root_multiplicity_and_real_roots():
    # (t-1)^2 (t+2)
    p = unipoly.poly_mul([GaussRat(-1), GaussRat(1)], [GaussRat(-1), GaussRat(1)])
    p = unipoly.poly_mul(p, [GaussRat(2), GaussRat(1)])
    assert unipoly.root_multiplicity(p, GaussRat(1)) == 2
    res = unipoly.gaussian_rational_roots(p)
    assert res.split_completely()
    assert sorted(str(r) for r in res.roots) == ["-2", "1", "1"]
    assert unipoly.real_rational_roots(p) == [Fraction(-2), Fraction(1)]
    assert unipoly.has_positive_rational_root(p)


def test_gaussian_integer_root():
    # roots 1+i and 2
    p = unipoly.poly_mul([GaussRat(-1, -1), GaussRat(1)], [GaussRat(-2), GaussRat(1)])
    p = unipoly.poly_mul(p, [GaussRat(-3), GaussRat(0), GaussRat(0), GaussRat(1)])  # t^3-3 residual
    res = unipoly.gaussian_rational_roots(p)
    assert not res.split_completely()
    assert {str(r) for r in res.roots} == {"1+i", "2"}
    assert unipoly.degree(res.residual) == 3


def test_simplex_basic():
    # max delta s.t. delta <= 1 - t, t = 1  => delta = 0 style sanity
    val, x = simplex_min(
        [[Fraction(1), Fraction(1)]], [Fraction(1)], [Fraction(-1), Fraction(0)]
    )
    assert val == Fraction(-1)


def test_newton_margin_values():
    assert newton_interior_margin([(1, 0), (0, 1)], [Fraction(1), Fraction(1)]) == Fraction(1, 2)
    assert newton_interior_margin([(2, 0), (1, 1), (0, 2)], [Fraction(1), Fraction(1)]) == Fraction(0)
    assert newton_interior_margin([(2, 0), (0, 1)], [Fraction(1), Fraction(1)]) > 0


def test_multiplier_ideal_examples():
    assert multiplier_ideal_trivial_monomial(MonomialIdeal(2, [(1, 0), (0, 1)])) is True
    assert multiplier_ideal_trivial_monomial(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])) is False
    assert multiplier_ideal_trivial_monomial(MonomialIdeal(2, [(2, 0), (0, 1)])) is True
    with pytest.raises(ValueError):
        MonomialIdeal(2, [])
        multiplier_ideal_trivial_monomial(MonomialIdeal(2, []))


def test_minimalization_and_ops():
    ideal = MonomialIdeal(2, [(1, 0), (2, 0), (1, 1)])
    assert ideal.generators == frozenset({(1, 0)})
    ideal = MonomialIdeal(2, [(2, 1), (1, 2)])
    assert ideal.common_factor() == (1, 1)
    q = ideal.quotient_by((1, 1))
    assert q.generators == frozenset({(1, 0), (0, 1)})
    assert q.cosupport_is_origin()
    assert not MonomialIdeal(3, [(1, 0, 0), (0, 1, 0)]).cosupport_is_origin()
