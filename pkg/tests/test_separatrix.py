import math
from fractions import Fraction

import pytest

from foliationlab.gaussrat import GaussRat, I
from foliationlab.mvpoly import MVPoly
from foliationlab.series import TruncatedSeries
from foliationlab.foliation import LogDivisor, VectorFieldGerm
from foliationlab.separatrix import (
    CurveInDivisor,
    FormalCurve,
    NotACorner,
    Resonance,
    ZeroEigenvalueDirection,
    corner_has_no_transverse_separatrix,
    direction_of_eigenvalue,
    formal_separatrix,
    separatrix_lift_check,
)
from foliationlab.series import poly_eval_series

VARS = ("x", "y")
X = MVPoly.var(VARS, "x")
Y = MVPoly.var(VARS, "y")


def germ(*comps):
    return VectorFieldGerm(VARS, comps)


def _axis_curve(order, axis=0):
    comps = [TruncatedSeries.zero(order), TruncatedSeries.zero(order)]
    comps[axis] = TruncatedSeries.t(order)
    return FormalCurve(VARS, tuple(comps), 0, GaussRat(1), order, math.inf)


def test_diagonal_axis_curve():
    v = germ(X, -1 * Y)
    d = direction_of_eigenvalue(v, GaussRat(1))
    fc = formal_separatrix(v, d, 6)
    assert fc.components[0].coeffs[1] == GaussRat(1)
    assert all(c.is_zero() for c in fc.components[1].coeffs)
    assert fc.residual_order is math.inf


def test_invariant_parabola():
    v = germ(X, -1 * Y + X * X)
    d = direction_of_eigenvalue(v, GaussRat(1))
    fc = formal_separatrix(v, d, 4)
    assert fc.components[1].coeffs[2] == GaussRat(Fraction(1, 3))
    assert fc.residual_order >= 4


def test_resonance_detected():
    v = germ(X, 2 * Y + X * X)
    d = direction_of_eigenvalue(v, GaussRat(1))
    r = formal_separatrix(v, d, 4)
    assert isinstance(r, Resonance) and r.order == 2


def test_zero_direction_rejected():
    v = germ(X * X, -1 * Y)
    with pytest.raises(ZeroEigenvalueDirection):
        formal_separatrix(v, direction_of_eigenvalue(v, GaussRat(0)), 4)


def test_residual_certification():
    """Substituting the curve into the tangency equations vanishes to >= N."""
    v = germ(X, -1 * Y + X * X)
    d = direction_of_eigenvalue(v, GaussRat(1))
    for order in (4, 6, 8):
        fc = formal_separatrix(v, d, order)
        a1 = poly_eval_series(v.components[0], list(fc.components))
        a2 = poly_eval_series(v.components[1], list(fc.components))
        wedge = fc.components[0].derivative() * a2.truncate(order - 1) - fc.components[1].derivative() * a1.truncate(order - 1)
        val = wedge.valuation()
        assert val is math.inf or val >= order


def test_corner_confirmed_for_required_ratios():
    ratios = [GaussRat(-1), GaussRat(-2), GaussRat(Fraction(-1, 2)), I]
    for lam in ratios:
        v = germ(X, lam * Y)
        rep = corner_has_no_transverse_separatrix(v, LogDivisor({0, 1}), 8)
        assert rep.outcome == "confirmed"
        assert rep.ratio_witnesses


def test_corner_gate():
    v = germ(2 * X, 3 * Y)  # ratio 3/2 in Q+: not a corner
    with pytest.raises(NotACorner):
        corner_has_no_transverse_separatrix(v, LogDivisor({0, 1}), 6)


def test_lift_type_a():
    v = germ(X * X, -1 * Y)
    curve = _axis_curve(6, axis=0)
    res = separatrix_lift_check(v, LogDivisor({0}), curve, 6)
    assert res.outcome == "meets_simple_point"
    assert res.chart == 0
    assert res.status.kind == "simple_point_A"
    assert res.unique_simple


def test_lift_saddle_transverse():
    v = germ(X, -1 * Y)
    curve = _axis_curve(6, axis=1)
    res = separatrix_lift_check(v, LogDivisor({1}), curve, 6)
    assert res.outcome == "meets_simple_point"
    assert res.chart == 1


def test_lift_curve_in_divisor():
    v = germ(X, -1 * Y)
    curve = _axis_curve(6, axis=0)
    with pytest.raises(CurveInDivisor):
        separatrix_lift_check(v, LogDivisor({1}), curve, 6)


def test_nonresonant_solvability():
    """Whenever k*1 - lambda_i never vanishes for 2 <= k <= N, the solver
    succeeds (matches the Q+ exclusions)."""
    for lam in (GaussRat(-1), GaussRat(-3), GaussRat(Fraction(-5, 2)), I, GaussRat(0, -2)):
        v = germ(X + Y * Y, lam * Y + X * Y)
        d = direction_of_eigenvalue(v, GaussRat(1))
        fc = formal_separatrix(v, d, 8)
        assert isinstance(fc, FormalCurve)
        assert fc.residual_order >= 8


def test_jordan_block_dim3():
    vs3 = ("x", "y", "z")
    x3, y3, z3 = (MVPoly.var(vs3, n) for n in vs3)
    v = VectorFieldGerm(vs3, (x3, -1 * y3 + z3, -1 * z3))
    fc = formal_separatrix(v, direction_of_eigenvalue(v, GaussRat(1)), 6)
    assert isinstance(fc, FormalCurve)
    assert fc.components[0].coeffs[1] == GaussRat(1)
