import pytest

from foliationlab.gaussrat import GaussRat
from foliationlab.mvpoly import MVPoly
from foliationlab.foliation import LogDivisor, VectorFieldGerm
from foliationlab.monomial import MonomialIdeal, multiplier_ideal_trivial_monomial
from foliationlab.resolution import (
    NonIsolatedSingularLocus,
    discrepancy_log_resolution,
    multiplier_ideal_trivial_by_discrepancy,
    resolve_simple,
    seidenberg_reduce,
    weakly_reduced_check,
)
from foliationlab.dsl import parse_vector_field

VARS = ("x", "y")
X = MVPoly.var(VARS, "x")
Y = MVPoly.var(VARS, "y")


def germ(*comps):
    return VectorFieldGerm(VARS, comps)


def test_seidenberg_sadle_trivial():
    t = seidenberg_reduce(germ(X, -1 * Y))
    assert t.status == "complete" and t.blowup_count() == 0
    assert len(t.terminals) == 1
    assert t.terminals[0].surface_type.kind == "non_degenerate"


def test_seidenberg_radial_one_blowup():
    t = seidenberg_reduce(germ(X, Y))
    assert t.status == "complete"
    assert t.blowup_count() == 1
    assert len(t.terminals) == 0  # dicritical blow-up leaves no singularities


def test_seidenberg_nilpotent_tower():
    t = seidenberg_reduce(germ(Y, X * X), max_depth=8)
    assert t.status == "complete"
    assert t.blowup_count() >= 2
    assert t.terminals and all(term.reduced for term in t.terminals)
    for term in t.terminals:
        assert term.surface_type.kind in ("non_degenerate", "degenerate")


def test_seidenberg_rejects_non_isolated():
    with pytest.raises(NonIsolatedSingularLocus):
        seidenberg_reduce(germ(Y, MVPoly.zero(VARS)))


def test_seidenberg_golden_cluster():
    # singular directions on E at the double roots of (w^2 - w - 1)^2:
    # reduced saddle-node clusters, terminal without exact coordinates
    v = parse_vector_field("v = -y^3 d/dx + (x^3 + 2*x^2*y - x*y^2 - 2*y^3) d/dy")
    t = seidenberg_reduce(v, max_depth=8)
    assert t.status == "complete"
    clusters = [term for term in t.terminals if term.cluster_poly]
    assert clusters
    assert all(term.reduced for term in t.terminals)


def test_depth_exceeded_is_a_result():
    t = seidenberg_reduce(germ(Y, X * X), max_depth=1)
    assert t.status == "depth_exceeded"
    assert t.pending


def test_nondegenerate_blowup_dichotomy():
    # blow-up of a nondegenerate diagonalizable point: two nondegenerate points
    from foliationlab import blowup, classify
    from foliationlab.foliation import translate_to_point

    for lam2 in (GaussRat(-1), GaussRat(-2), GaussRat(2), GaussRat(0, 1)):
        v = germ(X, lam2 * Y)
        found = []
        for chart in blowup.blowup_charts(2):
            sat = blowup.transform_vector_field(v, chart)
            locus = blowup.singular_points_on_E(sat, parent=v)
            for pt in locus.points:
                child = translate_to_point(sat.saturated_field, pt)
                found.append(classify.surface_seidenberg_type(child).kind)
        assert found == ["non_degenerate", "non_degenerate"]


def test_degenerate_type_blowup_dichotomy():
    # model z1 d1 + z2^k d2: one nondegenerate and one type-k point
    from foliationlab import blowup, classify
    from foliationlab.foliation import translate_to_point

    for k in (2, 3, 4):
        v = germ(X, Y**k)
        kinds = []
        for chart in blowup.blowup_charts(2):
            sat = blowup.transform_vector_field(v, chart)
            locus = blowup.singular_points_on_E(sat, parent=v)
            for pt in locus.points:
                child = translate_to_point(sat.saturated_field, pt)
                st = classify.surface_seidenberg_type(child)
                kinds.append((st.kind, st.k))
        assert ("non_degenerate", None) in kinds
        assert ("degenerate", k) in kinds


def test_weakly_reduced_fixtures():
    cert = weakly_reduced_check(germ(X, -1 * Y))
    assert cert.verdict == "certified"
    assert [(d.discrepancy, d.ideal_order) for d in cert.discrepancies] == [(1, 1)]
    assert all(s.s == 0 for s in cert.saturations)
    assert cert.howald_agrees is True

    cert = weakly_reduced_check(germ(X, Y))
    assert cert.verdict == "refuted" and cert.failed_clause == 1
    assert any(s.s == 1 for s in cert.saturations)

    cert = weakly_reduced_check(germ(X * X, Y))
    assert cert.verdict == "certified"
    assert sorted((d.discrepancy, d.ideal_order) for d in cert.discrepancies) == [(1, 1), (2, 2)]

    cert = weakly_reduced_check(germ(Y + X * X, X))  # non-monomial coefficient ideal
    assert cert.verdict == "unknown"


def test_weakly_reduced_axis_component():
    # J_F = (x*y) is already principal with original-axis components, so
    # clause 2 refutes with no blow-up at all
    cert = weakly_reduced_check(germ(X * Y, X * Y))
    assert cert.verdict == "refuted" and cert.failed_clause == 2
    assert cert.howald_agrees is False
    assert not cert.saturations


def test_discrepancy_single_blowup_dim_n():
    for n in (2, 3, 4):
        names = ("x", "y", "z", "w")[:n]
        gens = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        disc, sats, axis_orders, status, witness = discrepancy_log_resolution(
            MonomialIdeal(n, gens), None)
        assert status == "ok"
        assert disc[0].discrepancy == n - 1
        assert disc[0].ideal_order == 1


def test_oracle_agreement_sample():
    cases = [
        [(1, 0), (0, 1)],
        [(2, 0), (1, 1), (0, 2)],
        [(2, 0), (0, 1)],
        [(1, 1)],
        [(3, 0), (0, 2)],
        [(4, 0), (2, 1), (0, 3)],
        [(2, 1), (1, 2)],
    ]
    for gens in cases:
        ideal = MonomialIdeal(2, gens)
        assert multiplier_ideal_trivial_by_discrepancy(ideal) == multiplier_ideal_trivial_monomial(ideal)


def test_resolve_simple_fixtures():
    t = resolve_simple(germ(X * X, -1 * Y), LogDivisor({0}))
    assert t.status == "complete" and t.blowup_count() == 0
    assert t.terminals[0].simple_status.kind == "simple_point_A"
    assert t.terminals[0].dicritical is False

    # 1:2 resonance resolves: the radial child blows down to nothing and a
    # simple corner remains
    t = resolve_simple(germ(X, 2 * Y), LogDivisor({0, 1}), max_depth=8)
    assert t.status == "complete"
    kinds = sorted(term.simple_status.kind for term in t.terminals)
    assert kinds == ["simple_corner"]
    assert all(term.dicritical is False for term in t.terminals)


def test_resolve_simple_jordan_dim3():
    vs3 = ("x", "y", "z")
    x3, y3, z3 = (MVPoly.var(vs3, n) for n in vs3)
    v = VectorFieldGerm(vs3, (x3, -1 * y3 + z3, -1 * z3))
    t = resolve_simple(v, LogDivisor({0}), max_depth=4)
    assert t.status == "complete"
    assert all(term.simple_status.is_simple() for term in t.terminals)
    assert all(term.dicritical is False for term in t.terminals)


def test_tower_serialization():
    t = seidenberg_reduce(germ(Y, X * X), max_depth=8)
    doc = t.to_jsonable()
    assert doc["status"] == "complete"
    assert doc["blowups"] == len(doc["events"])
    assert all(path.startswith("b") for path in doc["nodes"])
