"""Point blow-ups: charts, transforms, saturation, divisor tracking.

Chart j of the blow-up at the origin keeps the ambient variable names and
reinterprets position j as the exceptional coordinate u, every other
position i as the direction coordinate w_i:

    z_j = u,    z_i = u * w_i   (i != j).

Pulling a vector field back produces components with a common power u^s;
the saturation exponent s is the twist recording whether the tangent
bundle of the induced foliation equals the pullback bundle (s = 0) or
fails by s * E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .gaussrat import GaussRat
from .mvpoly import MVPoly
from .foliation import (
    LogDivisor,
    VectorFieldGerm,
    divisor_invariance_check,
    exceptional_tag,
)
from . import linalg, unipoly


class InternalError(Exception):
    """A certified-impossible condition fired; indicates a bug, not bad input."""


class BlowupChart:
    """Chart `index` of the point blow-up in dimension n."""

    __slots__ = ("n", "index")

    def __init__(self, n: int, index: int):
        if n < 2:
            raise ValueError("blow-up needs ambient dimension >= 2")
        if not 0 <= index < n:
            raise ValueError("chart index out of range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "index", index)

    def __setattr__(self, name, value):
        raise AttributeError("BlowupChart is immutable")

    def exponent_images(self) -> list[tuple[int, ...]]:
        """Exponent image of each ambient variable under the substitution."""
        j, n = self.index, self.n
        images = []
        for i in range(n):
            e = [0] * n
            e[j] += 1
            if i != j:
                e[i] += 1
            images.append(tuple(e))
        return images

    def substitute(self, p: MVPoly) -> MVPoly:
        return p.subs_exponents(self.exponent_images())

    def point_to_ambient(self, point: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
        j = self.index
        u = GaussRat.coerce(point[j])
        return tuple(u if i == j else u * GaussRat.coerce(point[i]) for i in range(self.n))

    def ambient_to_chart(self, z: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
        j = self.index
        zj = GaussRat.coerce(z[j])
        if zj.is_zero():
            raise ValueError("point not in chart %d" % j)
        return tuple(zj if i == j else GaussRat.coerce(z[i]) / zj for i in range(self.n))

    def __eq__(self, other):
        return isinstance(other, BlowupChart) and (self.n, self.index) == (other.n, other.index)

    def __repr__(self):
        return "BlowupChart(n=%d, index=%d)" % (self.n, self.index)


def blowup_charts(n: int) -> list[BlowupChart]:
    return [BlowupChart(n, j) for j in range(n)]


@dataclass(frozen=True)
class SaturatedTransform:
    chart: BlowupChart
    raw_field: VectorFieldGerm
    saturation_exponent: int
    saturated_field: VectorFieldGerm
    divisor: LogDivisor
    exceptional_invariant: bool
    parent_multiplicity: int | float

    def to_jsonable(self):
        return {
            "chart": self.chart.index + 1,
            "saturation_exponent": self.saturation_exponent,
            "saturated_field": self.saturated_field.to_text(),
            "divisor": self.divisor.to_jsonable(),
            "exceptional_invariant": self.exceptional_invariant,
        }


def transform_vector_field(
    v: VectorFieldGerm,
    chart: BlowupChart,
    divisor: LogDivisor | None = None,
    level: int = 1,
) -> SaturatedTransform:
    """Pushforward of v to one blow-up chart, saturated.

    The pole-cleared components are P_j = u * (a_j o sigma) and
    P_i = a_i o sigma - w_i * (a_j o sigma); for a singular center these are
    all divisible by u and raw = P / u is the actual pushforward.  The
    saturated field divides out the remaining common power u^s."""
    j = chart.index
    n = chart.n
    if v.dim() != n:
        raise ValueError("chart dimension mismatch")
    aj = chart.substitute(v.components[j])
    cleared: list[MVPoly] = []
    for i in range(n):
        if i == j:
            p = aj * MVPoly.var(v.variables, v.variables[j])
        else:
            ai = chart.substitute(v.components[i])
            p = ai - MVPoly.var(v.variables, v.variables[i]) * aj
        cleared.append(p)
    vals = [p.min_exponent_in(j) for p in cleared]
    c = min(vals)
    if c is math.inf:
        raise ValueError("cannot blow up the zero field")
    c = int(c)
    drop = min(1, c)
    raw = VectorFieldGerm(v.variables, [p.divide_by_var_power(j, drop) for p in cleared], v.label)
    s = c - drop
    saturated = VectorFieldGerm(
        v.variables, [p.divide_by_var_power(j, s) for p in raw.components], v.label
    )
    e_invariant = divisor_invariance_check(saturated, [j])
    axes = {}
    if divisor is not None:
        for a in divisor.axes:
            if a != j:
                axes[a] = divisor.history[a]
    if e_invariant:
        axes[j] = exceptional_tag(level)
    mult = min(comp.vanishing_order() for comp in v.components)
    return SaturatedTransform(
        chart=chart,
        raw_field=raw,
        saturation_exponent=s,
        saturated_field=saturated,
        divisor=LogDivisor(axes.keys(), axes),
        exceptional_invariant=e_invariant,
        parent_multiplicity=mult,
    )


@dataclass(frozen=True)
class OneFormPullback:
    """pi* of sum b_i dz_i in the log basis (dlog u, dw_i), after dividing
    the certified common factor u out of every coefficient."""

    chart: BlowupChart
    dlog_coeff: MVPoly
    dw_coeffs: dict[int, MVPoly]
    certified: bool


def pullback_one_form(b: Sequence[MVPoly], chart: BlowupChart) -> OneFormPullback:
    """Express pi*(sum b_i dz_i) in the basis (dlog u, dw_i) and certify
    divisibility of every coefficient by u (Siu containment).  Divisibility
    failure would contradict the lemma and raises InternalError."""
    j, n = chart.index, chart.n
    if len(b) != n:
        raise ValueError("need %d coefficients" % n)
    variables = b[0].variables
    subs = [chart.substitute(p) for p in b]
    u = MVPoly.var(variables, variables[j])
    c_log = subs[j] * u
    for i in range(n):
        if i != j:
            c_log = c_log + subs[i] * u * MVPoly.var(variables, variables[i])
    dw = {i: subs[i] * u for i in range(n) if i != j}
    for name, coeff in [("dlog", c_log)] + [("dw%d" % i, q) for i, q in dw.items()]:
        if not coeff.divisible_by_var(j):
            raise InternalError("Siu divisibility failed for %s" % name)
    q_log = c_log.divide_by_var_power(j, 1)
    q_dw = {i: p.divide_by_var_power(j, 1) for i, p in dw.items()}
    ok = (q_log * u == c_log) and all(q_dw[i] * u == dw[i] for i in q_dw)
    if not ok:
        raise InternalError("Siu certificate re-multiplication failed")
    return OneFormPullback(chart=chart, dlog_coeff=q_log, dw_coeffs=q_dw, certified=True)


def pullback_polynomial(p: MVPoly, chart_path: Sequence[int]) -> MVPoly:
    n = p.nvars()
    out = p
    for j in chart_path:
        out = BlowupChart(n, j).substitute(out)
    return out


def exceptional_multiplicity(p: MVPoly, chart_path: Sequence[int]) -> int:
    """Vanishing order of the full pullback of p along the exceptional
    divisor of the last blow-up in the chart path."""
    if p.is_zero():
        raise ValueError("zero polynomial has no exceptional multiplicity")
    if not chart_path:
        raise ValueError("empty chart path")
    out = pullback_polynomial(p, chart_path)
    return int(out.min_exponent_in(chart_path[-1]))


# -- diophantine effectivity count ---------------------------------------------


def ceil_nth_root(k: int, n: int) -> int:
    """Smallest m with m^n >= k (exact integer arithmetic)."""
    if k <= 1:
        return k
    m = max(1, round(k ** (1.0 / n)) - 2)
    while m**n < k:
        m += 1
    return m


@dataclass(frozen=True)
class SectionExists:
    count: int
    degree: int
    dimension_count: int
    constraints: int


@dataclass(frozen=True)
class NoSection:
    degree: int
    dimension_count: int
    constraints: int


def effectivity_count(n: int, k: int, alpha: int):
    """Riemann-Roch style count behind the effectivity of
    ceil(k^(1/n)) * alpha * H - k * E_k on the k-step tower over P^n.

    Sections of degree d = ceil(k^(1/n)) * alpha forms vanishing on the
    monomial ideal (z_1^k, z_2, .., z_n) exist as soon as the number of
    degree-<=d monomials exceeds the number killed by the ideal (the pure
    powers z_1^a with a < k, a <= d)."""
    if n < 1 or k < 1 or alpha < 1:
        raise ValueError("n, k, alpha must be positive")
    d = ceil_nth_root(k, n) * alpha
    total = math.comb(d + n, n)
    constraints = min(k, d + 1)
    if total > constraints:
        return SectionExists(count=total - constraints, degree=d, dimension_count=total, constraints=constraints)
    return NoSection(degree=d, dimension_count=total, constraints=constraints)


# -- singular locus on the exceptional divisor -----------------------------------


@dataclass(frozen=True)
class SingularCluster:
    """Conjugate singular points on E at the roots of an irreducible-over-
    our-search residual polynomial in the direction coordinate (dim 2)."""

    min_poly: tuple[GaussRat, ...]
    exhaustive_search: bool

    def degree(self) -> int:
        return len(self.min_poly) - 1


@dataclass
class ELocus:
    """Singular points of a saturated transform on E = {u = 0} in one chart.

    `points` are chart coordinates (exceptional coordinate included, = 0).
    `complete` records whether points + clusters provably exhaust the locus
    in the deduplicated chart slice."""

    points: list[tuple[GaussRat, ...]]
    clusters: list[SingularCluster] = field(default_factory=list)
    complete: bool = True
    non_isolated: bool = False
    notes: list[str] = field(default_factory=list)


def _restrict_to_E_univariate(sat: SaturatedTransform) -> list[list[GaussRat]]:
    """Dim-2 only: components of the saturated field restricted to u = 0, as
    univariate coefficient lists in the direction coordinate."""
    j = sat.chart.index
    w = 1 - j
    out = []
    for comp in sat.saturated_field.components:
        r = comp.set_vars_to_zero([j])
        coeffs = [GaussRat(0)] * (r.degree_in(w) + 1)
        for e, c in r.terms.items():
            coeffs[e[w]] = c
        out.append(unipoly.trim(coeffs))
    return out


def _point_from_direction(e: Sequence[GaussRat], chart_j: int, n: int) -> tuple[GaussRat, ...] | None:
    if GaussRat.coerce(e[chart_j]).is_zero():
        return None
    scale = GaussRat(1) / GaussRat.coerce(e[chart_j])
    return tuple(GaussRat(0) if i == chart_j else GaussRat.coerce(e[i]) * scale for i in range(n))


def _eigendirection_locus(parent_linear: linalg.Matrix, sat: SaturatedTransform, dedupe: bool) -> ELocus:
    """Multiplicity-one, s = 0 case: Sing on E is exactly the set of
    eigendirections of the parent linear part."""
    j, n = sat.chart.index, sat.chart.n
    ev = linalg.eigenvalues_exact(parent_linear)
    if isinstance(ev, linalg.Indeterminate):
        return ELocus(points=[], complete=False,
                      notes=["eigenvalues outside Q(i); direction enumeration incomplete"])
    points = []
    seen = set()
    for lam in ev:
        key = (lam.re, lam.im)
        if key in seen:
            continue
        seen.add(key)
        shifted = linalg.mat_sub(parent_linear, linalg.mat_scale(linalg.identity(n), lam))
        basis = linalg.kernel_basis(shifted)
        if len(basis) >= 2:
            return ELocus(points=[], complete=False, non_isolated=True,
                          notes=["eigenspace of dimension >= 2: positive-dimensional eigendirection set"])
        e = basis[0]
        first = next(i for i in range(n) if not e[i].is_zero())
        if dedupe and first != j:
            continue
        pt = _point_from_direction(e, j, n)
        if pt is not None:
            points.append(pt)
    return ELocus(points=points, complete=True)


def singular_points_on_E(
    sat: SaturatedTransform,
    parent: VectorFieldGerm | None = None,
    dedupe: bool = True,
) -> ELocus:
    """Enumerate Sing(saturated field) on E in this chart.

    Deduplication keeps only points whose direction coordinates vanish at
    every position before the chart index, so a point on E is reported by
    exactly one chart.  Exact and complete in dimension 2 (irrational
    locations are returned as conjugate clusters); in higher dimension the
    enumeration is exact for multiplicity-one non-dicritical centers via
    eigendirections, and degrades to a documented incomplete probe
    otherwise."""
    j, n = sat.chart.index, sat.chart.n
    f = sat.saturated_field
    if n == 2:
        a, b = _restrict_to_E_univariate(sat)
        if not a and not b:
            return ELocus(points=[], non_isolated=True, complete=True,
                          notes=["both components vanish on E after saturation (impossible)"])
        g = unipoly.poly_gcd(a, b) if (a and b) else unipoly.poly_monic(a or b)
        if unipoly.degree(g) <= 0:
            return ELocus(points=[], complete=True)
        res = unipoly.gaussian_rational_roots(g)
        points = []
        for w0 in res.roots:
            if dedupe and j > 0 and not w0.is_zero():
                continue
            pt = [GaussRat(0), GaussRat(0)]
            pt[1 - j] = w0
            points.append(tuple(pt))
        clusters = []
        if not res.split_completely():
            residual = unipoly.poly_monic(res.residual)
            keep_cluster = not (dedupe and j > 0)
            if keep_cluster:
                clusters.append(SingularCluster(tuple(residual), res.exhaustive))
        # drop duplicate points, keep deterministic order
        uniq = []
        for p in sorted(points, key=lambda q: (str(q[0]), str(q[1]))):
            if p not in uniq:
                uniq.append(p)
        return ELocus(points=uniq, clusters=clusters, complete=True)

    if parent is not None and sat.parent_multiplicity == 1 and sat.saturation_exponent == 0:
        return _eigendirection_locus(parent.linear_part(), sat, dedupe)

    # restricted system on E, with dedupe constraints
    zero_idx = [j] + ([i for i in range(n) if i < j] if dedupe else [])
    restricted = [comp.set_vars_to_zero(zero_idx) for comp in f.components]
    if all(r.total_degree() <= 1 for r in restricted):
        keep = [i for i in range(n) if i not in zero_idx]
        rows, rhs = [], []
        for r in restricted:
            rows.append([r.coeff(tuple(1 if t == i else 0 for t in range(n))) for i in keep])
            rhs.append(-r.constant_term())
        sol = linalg.solve(tuple(tuple(row) for row in rows), rhs)
        if sol is None:
            return ELocus(points=[], complete=True)
        kern = linalg.kernel_basis(tuple(tuple(row) for row in rows))
        if kern:
            return ELocus(points=[], complete=False, non_isolated=True,
                          notes=["linear restricted system has positive-dimensional solution set"])
        pt = [GaussRat(0)] * n
        for pos, i in enumerate(keep):
            pt[i] = sol[pos]
        if all(c.evaluate(pt).is_zero() for c in f.components):
            return ELocus(points=[tuple(pt)], complete=True)
        return ELocus(points=[], complete=True)

    origin = tuple(GaussRat(0) for _ in range(n))
    pts = [origin] if all(c.evaluate(origin).is_zero() for c in f.components) else []
    return ELocus(points=pts, complete=False,
                  notes=["dim >= 3 nonlinear restricted system: origin probe only"])
