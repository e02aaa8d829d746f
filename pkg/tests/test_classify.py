import random

import pytest

from foliationlab.gaussrat import GaussRat, I
from foliationlab.mvpoly import MVPoly
from foliationlab.foliation import LogDivisor, VectorFieldGerm
from foliationlab import classify, linalg
from foliationlab.classify import (
    DimensionMismatch,
    NonSingularPoint,
    algebraic_multiplicity,
    bounded_ais_probe,
    classify_reduced,
    classify_simple,
    is_dicritical,
    ratio_in_Q_plus,
    singularity_report,
    surface_seidenberg_type,
)
from foliationlab.dsl import parse_vector_field

VARS = ("x", "y")
X = MVPoly.var(VARS, "x")
Y = MVPoly.var(VARS, "y")


def germ(*comps):
    return VectorFieldGerm(VARS, comps)


def test_ratio_in_q_plus():
    assert ratio_in_Q_plus(GaussRat(1), GaussRat(2)) is True
    assert ratio_in_Q_plus(GaussRat(1), GaussRat(-1)) is False
    assert ratio_in_Q_plus(I, 2 * I) is True
    assert ratio_in_Q_plus(GaussRat(0), GaussRat(1)) is None
    assert ratio_in_Q_plus(GaussRat(1), GaussRat(0)) is False


def test_multiplicity():
    assert algebraic_multiplicity(germ(X, Y)) == 1
    assert algebraic_multiplicity(germ(Y, X * X)) == 1
    assert algebraic_multiplicity(germ(X * X, Y**3)) == 2
    with pytest.raises(NonSingularPoint):
        algebraic_multiplicity(parse_vector_field("v = d/dx + y d/dy"))


def test_reduced():
    assert classify_reduced(germ(X, -1 * Y))[0]
    ok, why = classify_reduced(germ(Y, X * X))
    assert not ok and "nilpotent" in why
    ok, why = classify_reduced(germ(X * X, Y * Y))
    assert not ok and "multiplicity" in why


def test_surface_types():
    assert surface_seidenberg_type(germ(X, -1 * Y)).kind == "non_degenerate"
    t = surface_seidenberg_type(germ(X, Y**3))
    assert t.kind == "degenerate" and t.k == 3
    assert surface_seidenberg_type(germ(Y, X * X)).kind == "unclassified"
    # saddle-node with the nonzero eigenvalue on the second axis
    t = surface_seidenberg_type(germ(X * X, Y))
    assert t.kind == "degenerate" and t.k == 2
    with pytest.raises(DimensionMismatch):
        vs3 = ("x", "y", "z")
        surface_seidenberg_type(VectorFieldGerm(vs3, [MVPoly.var(vs3, n) for n in vs3]))


def test_classify_simple_examples():
    assert classify_simple(germ(X, -1 * Y), LogDivisor({0})).kind == "simple_point_B"
    assert classify_simple(germ(X * X, -1 * Y), LogDivisor({0})).kind == "simple_point_A"
    assert classify_simple(germ(X, 2 * Y), LogDivisor({0, 1})).kind == "not_simple"
    assert classify_simple(germ(X, I * Y), LogDivisor({0, 1})).kind == "simple_corner"
    with pytest.raises(classify.NoDivisorThroughPoint):
        classify_simple(germ(X, Y), LogDivisor.empty())


def test_simple_type_b_with_irrational_others():
    # eigenvalues 1 and +-sqrt(2): not in Q(i), but no positive-rational
    # ratio with 1, so type (B) still certified exactly
    vs3 = ("x", "y", "z")
    x3, y3, z3 = (MVPoly.var(vs3, n) for n in vs3)
    v = VectorFieldGerm(vs3, (x3, 2 * z3, y3))
    assert isinstance(linalg.eigenvalues_exact(v.linear_part()), linalg.Indeterminate)
    status = classify_simple(v, LogDivisor({0}))
    assert status.kind == "simple_point_B"
    # eigenvalues 1 and roots of s^2 = 2 scaled: ratio sqrt(2) not rational
    w = VectorFieldGerm(vs3, (x3, y3 + z3, 2 * y3 + z3))  # block eigenvalues 1 +- sqrt 2... trace 2
    status = classify_simple(w, LogDivisor({0}))
    assert status.kind in ("simple_point_B", "not_simple")


def test_dicriticality_fixtures():
    assert is_dicritical(germ(X, Y)) is True
    assert is_dicritical(germ(X, -1 * Y)) is False
    assert is_dicritical(germ(X, -2 * Y)) is False
    assert is_dicritical(germ(Y, -1 * X)) is False
    assert is_dicritical(germ(Y, X)) is False


def test_conjugation_invariance():
    rng = random.Random(3)
    germs = [germ(X, -1 * Y), germ(Y, X * X), germ(X * X, Y), germ(X, 2 * Y)]
    mats = [
        linalg.mat([[1, 1], [0, 1]]),
        linalg.mat([[2, 1], [1, 1]]),
        linalg.mat([[1, -2], [1, 3]]),
    ]
    for v in germs:
        rep = singularity_report(v, with_dicritical=True)
        for p in mats:
            w = v.conjugate_by(p)
            rep2 = singularity_report(w, with_dicritical=True)
            assert rep.multiplicity == rep2.multiplicity
            assert rep.reduced == rep2.reduced
            assert rep.dicritical == rep2.dicritical


def test_probe_examples():
    assert bounded_ais_probe(germ(X, -1 * Y), 3).status == "all_levels_finite"
    res = bounded_ais_probe(germ(Y, MVPoly.zero(VARS)), 2)
    assert res.status == "non_isolated_found" and res.level == 0
    assert bounded_ais_probe(germ(Y, X * X), 1).status == "all_levels_finite"


def test_report_serialization():
    rep = singularity_report(germ(Y, X * X))
    doc = rep.to_jsonable()
    assert doc["multiplicity"] == 1
    assert doc["reduced"] is False
    assert doc["surface_type"]["kind"] == "unclassified"
    # non-invariant divisor degrades to a note, not an error
    rep = singularity_report(germ(Y, X * X), LogDivisor({1}))
    assert rep.simple_status is None and rep.notes
