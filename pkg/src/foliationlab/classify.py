"""Singularity taxonomy at a germ.

Covers algebraic multiplicity, the reduced test, the Seidenberg surface
dichotomy (nondegenerate / degenerate of type k), simple points and
corners relative to a log divisor, dicriticality, and a bounded probe of
the absolutely-isolated condition.

Eigenvalue-ratio exclusions are decided exactly even when eigenvalues do
not live in Q(i): the multiplicity of the known eigenvalue comes from
deflation of the characteristic polynomial, and a positive-rational-ratio
eigenvalue exists iff the rescaled characteristic polynomial has a
positive rational root, which the rational root theorem certifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gaussrat import GaussRat
from .foliation import (
    DivisorNotInvariant,
    FoliationError,
    LogDivisor,
    VectorFieldGerm,
    divisor_invariance_check,
    is_singular_at_origin,
    translate_to_point,
)
from . import blowup, linalg, polygcd, unipoly


class NonSingularPoint(FoliationError):
    pass


class DimensionMismatch(FoliationError):
    pass


class NoDivisorThroughPoint(FoliationError):
    pass


def ratio_in_Q_plus(lam: GaussRat, mu: GaussRat) -> bool | None:
    """Is mu/lam a strictly positive rational?  None when lam = 0."""
    lam = GaussRat.coerce(lam)
    mu = GaussRat.coerce(mu)
    if lam.is_zero():
        return None
    return (mu / lam).is_positive_rational()


@dataclass(frozen=True)
class SurfaceType:
    kind: str  # "non_degenerate" | "degenerate" | "not_applicable" | "unclassified"
    k: int | None = None
    note: str = ""

    def to_jsonable(self):
        out = {"kind": self.kind}
        if self.k is not None:
            out["k"] = self.k
        if self.note:
            out["note"] = self.note
        return out


NON_DEGENERATE = SurfaceType("non_degenerate")
SURFACE_NOT_APPLICABLE = SurfaceType("not_applicable")


def degenerate_type(k: int) -> SurfaceType:
    return SurfaceType("degenerate", k=k)


def unclassified(note: str = "") -> SurfaceType:
    return SurfaceType("unclassified", note=note)


@dataclass(frozen=True)
class SimpleStatus:
    kind: str  # "simple_point_A" | "simple_point_B" | "simple_corner" | "not_simple" | "indeterminate"
    detail: str = ""

    def is_simple(self) -> bool:
        return self.kind in ("simple_point_A", "simple_point_B", "simple_corner")

    def to_jsonable(self):
        out = {"kind": self.kind}
        if self.detail:
            out["detail"] = self.detail
        return out


SIMPLE_A = SimpleStatus("simple_point_A")
SIMPLE_B = SimpleStatus("simple_point_B")


def simple_corner(detail: str = "") -> SimpleStatus:
    return SimpleStatus("simple_corner", detail)


def not_simple(detail: str = "") -> SimpleStatus:
    return SimpleStatus("not_simple", detail)


def indeterminate_simple(detail: str) -> SimpleStatus:
    return SimpleStatus("indeterminate", detail)


@dataclass
class SingularityReport:
    multiplicity: int | float
    linear_part: linalg.Matrix
    eigenvalues: list[GaussRat] | linalg.Indeterminate
    reduced: bool
    surface_type: SurfaceType
    simple_status: SimpleStatus | None
    dicritical: bool | None
    notes: list[str] = field(default_factory=list)

    def to_jsonable(self):
        if isinstance(self.eigenvalues, linalg.Indeterminate):
            ev = {
                "indeterminate": True,
                "char_poly": [str(c) for c in self.eigenvalues.char_poly],
                "approx": [[z.real, z.imag] for z in self.eigenvalues.approx],
            }
        else:
            ev = {"indeterminate": False, "values": [str(e) for e in self.eigenvalues]}
        return {
            "multiplicity": None if self.multiplicity is math.inf else int(self.multiplicity),
            "linear_part": [[str(c) for c in row] for row in self.linear_part],
            "eigenvalues": ev,
            "reduced": self.reduced,
            "surface_type": self.surface_type.to_jsonable(),
            "simple_status": None if self.simple_status is None else self.simple_status.to_jsonable(),
            "dicritical": self.dicritical,
            "notes": list(self.notes),
        }


def algebraic_multiplicity(v: VectorFieldGerm) -> int:
    """min over components of the vanishing order at the origin."""
    if not is_singular_at_origin(v):
        raise NonSingularPoint("germ is not singular at the origin")
    m = min(c.vanishing_order() for c in v.components)
    if m is math.inf:
        raise FoliationError("zero vector field has no multiplicity")
    return int(m)


def classify_reduced(v: VectorFieldGerm) -> tuple[bool, str]:
    """Reduced iff multiplicity 1 and the linear part is not nilpotent.

    A nonzero eigenvalue exists exactly when the characteristic polynomial
    differs from t^n, so this is decidable without factoring."""
    m = algebraic_multiplicity(v)
    if m != 1:
        return False, "multiplicity %d > 1" % m
    cp = linalg.char_poly(v.linear_part())
    if linalg.is_nilpotent_char_poly(cp):
        return False, "nilpotent linear part (characteristic polynomial t^n)"
    return True, ""


def surface_seidenberg_type(v: VectorFieldGerm) -> SurfaceType:
    """Dimension-2 dichotomy: nondegenerate (invertible linear part) or
    degenerate of type k, tested through the exact monomial surrogate of
    the metric comparison after diagonalizing the nonzero eigendirection."""
    if v.dim() != 2:
        raise DimensionMismatch("surface types need dimension 2")
    if not is_singular_at_origin(v):
        raise NonSingularPoint("germ is not singular at the origin")
    lp = v.linear_part()
    if not linalg.det(lp).is_zero():
        return NON_DEGENERATE
    tr = lp[0][0] + lp[1][1]
    if tr.is_zero():
        return unclassified("linear part nilpotent or zero: not in the reduced list")
    lam = tr  # eigenvalues are (tr, 0) when the determinant vanishes
    v_lam = linalg.eigenvector(lp, lam)
    v_ker = linalg.eigenvector(lp, GaussRat(0))
    if v_lam is None or v_ker is None:
        return unclassified("eigenvector computation failed")
    basis = ((v_lam[0], v_ker[0]), (v_lam[1], v_ker[1]))
    w = v.conjugate_by(basis)
    a2_on_axis = w.components[1].set_vars_to_zero([0])
    k = a2_on_axis.min_exponent_in(1)
    if k is math.inf:
        return unclassified("second component vanishes on the kernel axis: type k unbounded")
    k = int(k)
    if k < 2:
        return unclassified("kernel-axis order %d < 2 after normalization" % k)
    for comp in w.components:
        for e in comp.terms:
            if e[0] >= 1 or e[1] >= k:
                continue
            return unclassified("monomial z1^%d z2^%d escapes (z1, z2^%d): surrogate criterion fails" % (e[0], e[1], k))
    return SurfaceType("degenerate", k=k, note="surrogate criterion (exact ideal comparison)")


def _has_other_eigenvalue_with_positive_ratio(cp: list[GaussRat], lam: GaussRat) -> bool:
    """True iff the characteristic polynomial, with one copy of lam removed,
    has a root of the form q*lam with q a positive rational."""
    deflated = unipoly.deflate(cp, lam)
    # roots mu = q*lam of deflated <-> positive rational roots s of deflated(lam*s)
    rescaled = [c * lam**k for k, c in enumerate(deflated)]
    return unipoly.has_positive_rational_root(rescaled)


def _log_coefficients(v: VectorFieldGerm, divisor: LogDivisor) -> dict[int, GaussRat]:
    """Constants a_j(0) of the factored components z_j a_j along divisor axes."""
    out = {}
    for j in sorted(divisor.axes):
        aj = v.components[j].divide_by_var_power(j, 1)
        out[j] = aj.constant_term()
    return out


def classify_simple(v: VectorFieldGerm, divisor: LogDivisor) -> SimpleStatus:
    """Simple point / simple corner test relative to the log divisor."""
    if not is_singular_at_origin(v):
        raise NonSingularPoint("germ is not singular at the origin")
    e = divisor.axis_count()
    if e == 0:
        raise NoDivisorThroughPoint("no divisor axis through the origin")
    if not divisor_invariance_check(v, divisor):
        raise DivisorNotInvariant("divisor axes %s not invariant" % sorted(divisor.axes))
    n = v.dim()
    lam0 = _log_coefficients(v, divisor)
    if e >= 2:
        axes = sorted(divisor.axes)
        for p in axes:
            if lam0[p].is_zero():
                continue
            for q in axes:
                if q == p:
                    continue
                if ratio_in_Q_plus(lam0[p], lam0[q]) is False:
                    return simple_corner("axes (%d, %d): ratio %s not in Q+" % (p + 1, q + 1, lam0[q] / lam0[p]))
        return not_simple("every axis pair has a positive rational eigenvalue ratio (or zero pivot)")
    (j0,) = divisor.axes
    lam = lam0[j0]
    lp = v.linear_part()
    if lam.is_zero():
        others = [i for i in range(n) if i != j0]
        axis_invariant = all(v.components[i].set_vars_to_zero(others).is_zero() for i in others)
        rows = []
        for i in others:
            restricted = v.components[i].set_vars_to_zero([j0])
            rows.append(tuple(restricted.coeff(tuple(1 if t == o else 0 for t in range(n))) for o in others))
        rank_full = linalg.rank(tuple(rows)) == n - 1
        if axis_invariant and rank_full:
            return SIMPLE_A
        if rank_full and not axis_invariant:
            return not_simple("transverse axis not invariant in the given coordinates "
                              "(a formal change of coordinates is not attempted)")
        return not_simple("restricted linear part has rank < n-1")
    cp = linalg.char_poly(lp)
    if unipoly.root_multiplicity(cp, lam) != 1:
        return not_simple("eigenvalue %s has multiplicity > 1" % lam)
    if _has_other_eigenvalue_with_positive_ratio(cp, lam):
        return not_simple("another eigenvalue is a positive rational multiple of %s" % lam)
    return SIMPLE_B


def is_dicritical(v: VectorFieldGerm, assume_isolated: bool = False) -> bool:
    """One blow-up; dicritical iff the exceptional divisor fails invariance
    in some chart."""
    if not is_singular_at_origin(v):
        raise NonSingularPoint("germ is not singular at the origin")
    if v.dim() == 2 and not assume_isolated:
        if not polygcd.isolated_at_origin_dim2(v.components):
            raise FoliationError("singular locus is not isolated at the origin")
    for chart in blowup.blowup_charts(v.dim()):
        sat = blowup.transform_vector_field(v, chart)
        if not sat.exceptional_invariant:
            return True
    return False


def singularity_report(
    v: VectorFieldGerm,
    divisor: LogDivisor | None = None,
    with_dicritical: bool = True,
) -> SingularityReport:
    notes: list[str] = []
    mult = algebraic_multiplicity(v)
    lp = v.linear_part()
    ev = linalg.eigenvalues_exact(lp)
    reduced, why = classify_reduced(v)
    if why:
        notes.append(why)
    if v.dim() == 2:
        st = surface_seidenberg_type(v)
        if st.note:
            notes.append(st.note)
    else:
        st = SURFACE_NOT_APPLICABLE
    simple = None
    if divisor is not None:
        try:
            simple = classify_simple(v, divisor)
        except NoDivisorThroughPoint:
            simple = None
            notes.append("no divisor axis through the point")
        except DivisorNotInvariant as exc:
            simple = None
            notes.append(str(exc))
    dic = None
    if with_dicritical:
        try:
            dic = is_dicritical(v, assume_isolated=v.dim() > 2)
        except FoliationError as exc:
            notes.append("dicriticality unavailable: %s" % exc)
    return SingularityReport(
        multiplicity=mult,
        linear_part=lp,
        eigenvalues=ev,
        reduced=reduced,
        surface_type=st,
        simple_status=simple,
        dicritical=dic,
        notes=notes,
    )


# -- bounded absolutely-isolated probe -------------------------------------------


@dataclass
class ProbeResult:
    status: str  # "all_levels_finite" | "non_isolated_found" | "depth_exceeded" | "unknown"
    level: int | None = None
    nodes_explored: int = 0
    notes: list[str] = field(default_factory=list)


def bounded_ais_probe(v: VectorFieldGerm, depth: int, node_budget: int = 2000) -> ProbeResult:
    """Explore the full blow-up tree at singular points to `depth`,
    verifying finiteness of the singular locus at every node.

    Exact in dimension 2.  In dimension >= 3 enumeration is complete only
    for multiplicity-one centers (eigendirections); anything else downgrades
    the verdict to `unknown`."""
    n = v.dim()
    notes: list[str] = []
    if not is_singular_at_origin(v):
        return ProbeResult("all_levels_finite", level=0, notes=["germ not singular at origin"])
    if n == 2:
        if not polygcd.isolated_at_origin_dim2(v.components):
            return ProbeResult("non_isolated_found", level=0)
    else:
        if any(c.is_zero() for c in v.components):
            return ProbeResult("non_isolated_found", level=0,
                               notes=["a component vanishes identically"])
    queue: list[tuple[VectorFieldGerm, int]] = [(v, 0)]
    explored = 0
    blocked = False
    unknown = False
    while queue:
        germ, level = queue.pop(0)
        explored += 1
        if explored > node_budget:
            return ProbeResult("depth_exceeded", level=level, nodes_explored=explored,
                               notes=notes + ["node budget exhausted"])
        if level >= depth:
            continue
        for chart in blowup.blowup_charts(n):
            sat = blowup.transform_vector_field(germ, chart)
            locus = blowup.singular_points_on_E(sat, parent=germ, dedupe=True)
            if locus.non_isolated:
                return ProbeResult("non_isolated_found", level=level + 1, nodes_explored=explored,
                                   notes=notes + locus.notes)
            if not locus.complete:
                unknown = True
                notes.extend(locus.notes)
            if locus.clusters and level + 1 < depth:
                blocked = True
                notes.append(
                    "level %d: conjugate singular cluster (degree %d) not expandable in Q(i)"
                    % (level + 1, locus.clusters[0].degree())
                )
            for pt in locus.points:
                child = translate_to_point(sat.saturated_field, pt)
                if is_singular_at_origin(child):
                    queue.append((child, level + 1))
    if unknown:
        return ProbeResult("unknown", level=None, nodes_explored=explored, notes=notes)
    if blocked:
        return ProbeResult("depth_exceeded", level=None, nodes_explored=explored, notes=notes)
    return ProbeResult("all_levels_finite", level=depth, nodes_explored=explored, notes=notes)
