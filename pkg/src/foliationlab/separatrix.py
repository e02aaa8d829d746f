"""Formal separatrices at simple singularities.

The solver works in the graph gauge: after an exact linear change of
coordinates putting the chosen eigendirection on the first axis and
rescaling the field so that its eigenvalue is 1, the curve is sought as

    f(t) = (t, f_2(t), ..., f_n(t)),   f_i = O(t^2),

and the tangency equations f_i' * v_1(f) = v_i(f) are solved order by
order.  The order-k coefficients satisfy a linear system with matrix
k*I - L restricted off the eigendirection, so resonances k*lambda = mu
show up exactly as singular systems; an inconsistent one stops the solver
with the obstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .gaussrat import GaussRat
from .mvpoly import MVPoly
from .series import TruncatedSeries
from .foliation import (
    FoliationError,
    LogDivisor,
    VectorFieldGerm,
    divisor_at_point,
    translate_to_point,
)
from . import blowup, classify, linalg, unipoly


class ZeroEigenvalueDirection(FoliationError):
    pass


class IndeterminateEigenvalues(FoliationError):
    pass


class NotACorner(FoliationError):
    pass


class CurveInDivisor(FoliationError):
    pass


UPoly = list[GaussRat]


def _poly_eval_at_curve(p: MVPoly, comps: Sequence[UPoly]) -> UPoly:
    """Exact evaluation of a polynomial at polynomial curve components."""
    cache: list[dict[int, UPoly]] = [{0: [GaussRat(1)]} for _ in comps]

    def power(i: int, k: int) -> UPoly:
        c = cache[i]
        if k not in c:
            half = power(i, k // 2)
            out = unipoly.poly_mul(half, half)
            if k & 1:
                out = unipoly.poly_mul(out, comps[i])
            c[k] = out
        return c[k]

    total: UPoly = []
    for e, coeff in p.terms.items():
        term: UPoly = [coeff]
        for i, k in enumerate(e):
            if k:
                term = unipoly.poly_mul(term, power(i, k))
        n = max(len(total), len(term))
        total = unipoly.trim([
            (total[j] if j < len(total) else GaussRat(0)) + (term[j] if j < len(term) else GaussRat(0))
            for j in range(n)
        ])
    return total


def _poly_coeff(p: UPoly, k: int) -> GaussRat:
    return p[k] if k < len(p) else GaussRat(0)


def _poly_derivative_list(p: UPoly) -> UPoly:
    return unipoly.poly_derivative(p)


@dataclass(frozen=True)
class FormalCurve:
    variables: tuple[str, ...]
    components: tuple[TruncatedSeries, ...]
    tangent_direction: int
    eigenvalue: GaussRat
    truncation_order: int
    residual_order: int | float  # math.inf when the residual vanishes exactly

    def component_valuations(self) -> tuple[int | float, ...]:
        return tuple(c.valuation() for c in self.components)

    def to_jsonable(self):
        return {
            "variables": list(self.variables),
            "components": [[str(c) for c in comp.coeffs] for comp in self.components],
            "tangent_direction": self.tangent_direction,
            "eigenvalue": str(self.eigenvalue),
            "truncation_order": self.truncation_order,
            "residual_order": None if self.residual_order is math.inf else int(self.residual_order),
        }


@dataclass(frozen=True)
class Resonance:
    order: int
    obstruction: tuple[str, ...]

    def to_jsonable(self):
        return {"resonance_order": self.order, "obstruction": list(self.obstruction)}


def _completion_basis(e: Sequence[GaussRat], n: int) -> linalg.Matrix:
    """Invertible matrix whose first column is e, completed greedily by
    standard basis vectors."""
    cols: list[tuple[GaussRat, ...]] = [tuple(e)]
    for i in range(n):
        cand = tuple(GaussRat(1 if k == i else 0) for k in range(n))
        trial = cols + [cand]
        m = tuple(zip(*trial))
        if linalg.rank(tuple(tuple(r) for r in m)) == len(trial):
            cols.append(cand)
        if len(cols) == n:
            break
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def direction_of_eigenvalue(v: VectorFieldGerm, lam: GaussRat) -> int:
    """Index, in the canonically sorted exact spectrum, of an eigenvalue."""
    ev = linalg.eigenvalues_exact(v.linear_part())
    if isinstance(ev, linalg.Indeterminate):
        raise IndeterminateEigenvalues("linear part has eigenvalues outside Q(i)")
    lam = GaussRat.coerce(lam)
    for i, e in enumerate(ev):
        if e == lam:
            return i
    raise ValueError("%s is not an eigenvalue" % lam)


def formal_separatrix(v: VectorFieldGerm, direction: int, order: int):
    """Solve for an invariant curve tangent to the given eigendirection.

    `direction` indexes the canonically sorted exact eigenvalue list; the
    eigenvalue there must be nonzero.  Returns a FormalCurve (components
    certified to `order`) or a Resonance value."""
    if order < 2:
        raise ValueError("truncation order must be >= 2")
    n = v.dim()
    lp = v.linear_part()
    ev = linalg.eigenvalues_exact(lp)
    if isinstance(ev, linalg.Indeterminate):
        raise IndeterminateEigenvalues("linear part has eigenvalues outside Q(i)")
    if not 0 <= direction < len(ev):
        raise ValueError("direction index out of range")
    lam = ev[direction]
    if lam.is_zero():
        raise ZeroEigenvalueDirection("chosen eigendirection has eigenvalue 0")
    e = linalg.eigenvector(lp, lam)
    if e is None:
        raise FoliationError("no eigenvector found (cannot happen for an exact eigenvalue)")
    m = _completion_basis(e, n)
    w = v.conjugate_by(m).scale(GaussRat(1) / lam)
    # graph gauge: components as exact polynomials in t
    comps: list[UPoly] = [[GaussRat(0), GaussRat(1)]] + [[GaussRat(0)] for _ in range(n - 1)]
    lres = w.linear_part()
    notes = []
    for k in range(2, order + 1):
        residual = [
            unipoly.poly_sub(
                unipoly.poly_mul(_poly_derivative_list(comps[i]), _poly_eval_at_curve(w.components[0], comps)),
                _poly_eval_at_curve(w.components[i], comps),
            )
            for i in range(1, n)
        ]
        known = [_poly_coeff(r, k) for r in residual]
        rows = tuple(
            tuple((GaussRat(k) if i == j else GaussRat(0)) - lres[i + 1][j + 1] for j in range(n - 1))
            for i in range(n - 1)
        )
        rhs = tuple(-g for g in known)
        sol = linalg.solve(rows, rhs)
        if sol is None:
            return Resonance(order=k, obstruction=tuple(str(g) for g in known))
        if linalg.det(rows).is_zero():
            notes.append("order %d system singular but consistent; free coefficients set to 0" % k)
        for i in range(1, n):
            row = comps[i]
            while len(row) <= k:
                row.append(GaussRat(0))
            row[k] = row[k] + sol[i - 1]
    residual = [
        unipoly.poly_sub(
            unipoly.poly_mul(_poly_derivative_list(comps[i]), _poly_eval_at_curve(w.components[0], comps)),
            _poly_eval_at_curve(w.components[i], comps),
        )
        for i in range(1, n)
    ]
    res_order: int | float = math.inf
    for r in residual:
        r = unipoly.trim(r)
        if r:
            val = next(k for k, c in enumerate(r) if not c.is_zero())
            res_order = min(res_order, val)
    # back to the original coordinates: f = M . f_graph
    orig: list[UPoly] = []
    for i in range(n):
        acc: UPoly = []
        for j in range(n):
            if not m[i][j].is_zero():
                term = [c * m[i][j] for c in comps[j]]
                ln = max(len(acc), len(term))
                acc = [
                    (_poly_coeff(acc, t)) + (_poly_coeff(term, t)) for t in range(ln)
                ]
        orig.append(unipoly.trim(acc))
    series = tuple(TruncatedSeries([_poly_coeff(c, k) for k in range(order + 1)], order) for c in orig)
    return FormalCurve(
        variables=v.variables,
        components=series,
        tangent_direction=direction,
        eigenvalue=lam,
        truncation_order=order,
        residual_order=res_order,
    )


@dataclass
class CornerSeparatrixReport:
    outcome: str  # "confirmed" | "counterexample_candidate"
    ratio_witnesses: list[str]
    attempts: list[dict]
    notes: list[str] = field(default_factory=list)

    def to_jsonable(self):
        return {
            "outcome": self.outcome,
            "ratio_witnesses": self.ratio_witnesses,
            "attempts": self.attempts,
            "notes": self.notes,
        }


def corner_has_no_transverse_separatrix(v: VectorFieldGerm, divisor: LogDivisor, order: int) -> CornerSeparatrixReport:
    """Confirm, by exact arithmetic, that a simple corner admits no
    separatrix transverse to the divisor.

    A transverse separatrix would force positive integer vanishing orders
    with nu_p / nu_q equal to the eigenvalue ratio of two divisor axes,
    impossible when that ratio is not a positive rational.  Eigendirection
    attempts with all divisor components nonzero act as a self-test: any
    survivor is reported as a counterexample candidate."""
    status = classify.classify_simple(v, divisor)
    if status.kind != "simple_corner":
        raise NotACorner("classify_simple returned %s" % status.kind)
    axes = sorted(divisor.axes)
    lam0 = {}
    for j in axes:
        lam0[j] = v.components[j].divide_by_var_power(j, 1).constant_term()
    witnesses = []
    for p in axes:
        if lam0[p].is_zero():
            continue
        for q in axes:
            if q != p and classify.ratio_in_Q_plus(lam0[p], lam0[q]) is False:
                witnesses.append(
                    "axes (%d, %d): nu_%d/nu_%d would equal %s, not a positive rational"
                    % (p + 1, q + 1, q + 1, p + 1, str(lam0[q] / lam0[p])))
    attempts = []
    notes = []
    lp = v.linear_part()
    ev = linalg.eigenvalues_exact(lp)
    outcome = "confirmed"
    if isinstance(ev, linalg.Indeterminate):
        notes.append("eigenvalues outside Q(i): eigendirection attempts skipped")
        ev = []
    seen = set()
    for idx, lam in enumerate(ev):
        key = (lam.re, lam.im)
        if key in seen:
            continue
        seen.add(key)
        vec = linalg.eigenvector(lp, lam)
        if vec is None:
            continue
        if any(vec[j].is_zero() for j in axes):
            continue
        if lam.is_zero():
            notes.append("transverse eigendirection has eigenvalue 0: solver inapplicable")
            continue
        result = formal_separatrix(v, idx, order)
        if isinstance(result, Resonance):
            attempts.append({"direction": idx, "result": "resonance", "order": result.order})
            continue
        vals = result.component_valuations()
        if all(vals[j] is not math.inf for j in axes):
            attempts.append({"direction": idx, "result": "transverse curve survived to order %d" % order})
            outcome = "counterexample_candidate"
        else:
            attempts.append({"direction": idx, "result": "curve fell into the divisor"})
    return CornerSeparatrixReport(outcome, witnesses, attempts, notes)


@dataclass
class LiftCheckResult:
    outcome: str  # "meets_simple_point" | "mismatch"
    chart: int | None
    point: tuple[str, ...] | None
    status: classify.SimpleStatus | None
    unique_simple: bool
    lifted_components: list[list[str]] | None
    notes: list[str] = field(default_factory=list)

    def to_jsonable(self):
        return {
            "outcome": self.outcome,
            "chart": None if self.chart is None else self.chart + 1,
            "point": list(self.point) if self.point else None,
            "simple_status": self.status.to_jsonable() if self.status else None,
            "unique_simple": self.unique_simple,
            "lifted_components": self.lifted_components,
            "notes": self.notes,
        }


def separatrix_lift_check(v: VectorFieldGerm, divisor: LogDivisor, curve: FormalCurve, order: int) -> LiftCheckResult:
    """Lift a separatrix through one blow-up and verify it lands on the
    unique simple point of the transformed foliation on E."""
    status = classify.classify_simple(v, divisor)
    if status.kind not in ("simple_point_A", "simple_point_B"):
        raise FoliationError("lift check expects a simple point, got %s" % status.kind)
    vals = curve.component_valuations()
    for j in sorted(divisor.axes):
        if vals[j] is math.inf:
            raise CurveInDivisor("curve component %d vanishes to working order: curve lies in D" % (j + 1))
    finite = [(val, i) for i, val in enumerate(vals) if val is not math.inf]
    if not finite:
        raise FoliationError("curve is identically zero to working order")
    vmin, c = min(finite)
    chart = blowup.BlowupChart(v.dim(), c)
    denom = curve.components[c]
    lifted: list[TruncatedSeries] = []
    point = []
    for i, comp in enumerate(curve.components):
        if i == c:
            lifted.append(comp)
            point.append(GaussRat(0))
        else:
            q = comp.divide(denom)
            lifted.append(q)
            point.append(q.coeffs[0])
    sat = blowup.transform_vector_field(v, chart, divisor)
    germ_at = translate_to_point(sat.saturated_field, point)
    div_at = divisor_at_point(sat.divisor, point)
    try:
        st = classify.classify_simple(germ_at, div_at)
    except FoliationError as exc:
        return LiftCheckResult("mismatch", c, tuple(str(p) for p in point), None, False,
                               [[str(cc) for cc in s.coeffs] for s in lifted],
                               ["classification failed at the lift point: %s" % exc])
    notes = []
    simple_count = 0
    point_is_simple_point = st.kind in ("simple_point_A", "simple_point_B")
    for ch in blowup.blowup_charts(v.dim()):
        sat_ch = blowup.transform_vector_field(v, ch, divisor)
        locus = blowup.singular_points_on_E(sat_ch, parent=v, dedupe=True)
        if not locus.complete:
            notes.append("enumeration incomplete in chart %d" % (ch.index + 1))
        for pt in locus.points:
            g = translate_to_point(sat_ch.saturated_field, pt)
            d = divisor_at_point(sat_ch.divisor, pt)
            try:
                s2 = classify.classify_simple(g, d)
            except FoliationError:
                continue
            if s2.kind in ("simple_point_A", "simple_point_B"):
                simple_count += 1
    unique = simple_count == 1
    ok = point_is_simple_point and unique and st.kind == status.kind
    if point_is_simple_point and st.kind != status.kind:
        notes.append("lift point is simple but of type %s (root was %s)" % (st.kind, status.kind))
    return LiftCheckResult(
        "meets_simple_point" if ok else "mismatch",
        c, tuple(str(p) for p in point), st, unique,
        [[str(cc) for cc in s.coeffs] for s in lifted], notes)
