"""Blow-up towers: Seidenberg reduction, simple-singularity resolution,
and the weakly-reduced certificate.

Towers are deterministic: singular points are processed breadth-first in
lexicographic chart-path order, blow-up events are numbered in processing
order, and chart nodes are addressed as "b<event>.c<chart>" path segments.

Singular points at locations outside Q(i) (conjugate clusters over an
irreducible residual polynomial) are decided without coordinates: a
cluster point is reduced iff trace or determinant of the Jacobian is
nonzero there, which is a gcd computation against the cluster polynomial.
Reduced clusters are terminal; a non-reduced cluster blocks the tower,
honestly, since its points cannot serve as exact blow-up centers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .gaussrat import GaussRat
from .mvpoly import MVPoly
from .foliation import (
    DivisorNotInvariant,
    FoliationError,
    LogDivisor,
    VectorFieldGerm,
    divisor_at_point,
    divisor_invariance_check,
    is_singular_at_origin,
    translate_to_point,
)
from .monomial import MonomialIdeal, multiplier_ideal_trivial_monomial
from . import blowup, classify, polygcd, unipoly


class NonIsolatedSingularLocus(FoliationError):
    pass


DEFAULT_DEPTH = 16


# ---------------------------------------------------------------------------
# tower data


@dataclass
class TerminalSingularity:
    node_path: str
    location: tuple[str, ...] | None
    cluster_poly: tuple[str, ...] | None
    cluster_size: int
    reduced: bool
    surface_type: classify.SurfaceType | None
    simple_status: classify.SimpleStatus | None
    dicritical: bool | None
    report: classify.SingularityReport | None

    def to_jsonable(self):
        return {
            "node": self.node_path,
            "location": list(self.location) if self.location else None,
            "cluster_poly": list(self.cluster_poly) if self.cluster_poly else None,
            "cluster_size": self.cluster_size,
            "reduced": self.reduced,
            "surface_type": self.surface_type.to_jsonable() if self.surface_type else None,
            "simple_status": self.simple_status.to_jsonable() if self.simple_status else None,
            "dicritical": self.dicritical,
            "report": self.report.to_jsonable() if self.report else None,
        }


@dataclass
class TowerEvent:
    index: int
    parent_path: str
    center: tuple[str, ...]
    level: int
    s_by_chart: dict[int, int]

    def to_jsonable(self):
        return {
            "index": self.index,
            "parent": self.parent_path,
            "center": list(self.center),
            "level": self.level,
            "saturation_exponents": {str(c + 1): s for c, s in sorted(self.s_by_chart.items())},
        }


@dataclass
class TowerNode:
    path: str
    level: int
    transform: blowup.SaturatedTransform

    def to_jsonable(self):
        out = self.transform.to_jsonable()
        out["level"] = self.level
        return out


@dataclass
class DiscrepancyEntry:
    divisor_id: int
    discrepancy: int
    ideal_order: int | None
    created_at_event: int

    def to_jsonable(self):
        return {
            "divisor": self.divisor_id,
            "discrepancy": self.discrepancy,
            "ideal_order": self.ideal_order,
            "event": self.created_at_event,
        }


@dataclass
class ResolutionTower:
    root: VectorFieldGerm
    root_divisor: LogDivisor | None
    goal: str
    status: str  # "complete" | "depth_exceeded" | "blocked"
    reason: str
    nodes: dict[str, TowerNode]
    events: list[TowerEvent]
    terminals: list[TerminalSingularity]
    pending: list[dict]
    discrepancies: list[DiscrepancyEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def blowup_count(self) -> int:
        return len(self.events)

    def max_level(self) -> int:
        return max((e.level + 1 for e in self.events), default=0)

    def to_jsonable(self):
        return {
            "goal": self.goal,
            "status": self.status,
            "reason": self.reason,
            "root": self.root.to_text(),
            "root_divisor": self.root_divisor.to_jsonable() if self.root_divisor else None,
            "blowups": len(self.events),
            "events": [e.to_jsonable() for e in self.events],
            "nodes": {p: n.to_jsonable() for p, n in sorted(self.nodes.items())},
            "terminal_singularities": [t.to_jsonable() for t in self.terminals],
            "pending": self.pending,
            "discrepancies": [d.to_jsonable() for d in self.discrepancies],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# helpers


def _fmt_point(pt: Sequence[GaussRat]) -> tuple[str, ...]:
    return tuple(str(c) for c in pt)


def _univar_on_E(p: MVPoly, u_idx: int, w_idx: int) -> list[GaussRat]:
    r = p.set_vars_to_zero([u_idx])
    coeffs = [GaussRat(0)] * (r.degree_in(w_idx) + 1)
    for e, c in r.terms.items():
        coeffs[e[w_idx]] = c
    return unipoly.trim(coeffs)


@dataclass
class ClusterVerdict:
    poly: list[GaussRat]          # squarefree part carrying the points
    size: int
    all_reduced: bool
    nondegenerate_part: list[GaussRat]
    saddle_node_part: list[GaussRat]
    nonreduced_part: list[GaussRat]
    dicritical_part: list[GaussRat]


def _cluster_verdict(sat: blowup.SaturatedTransform, cluster: blowup.SingularCluster) -> ClusterVerdict:
    """Reducedness of every conjugate point via gcd certificates.

    At a singular point (u=0, w=w0) of the saturated field the Jacobian
    trace and determinant are polynomials in w0; a point is reduced iff one
    of them is nonzero, so the non-reduced points are the common roots with
    the cluster polynomial."""
    j = sat.chart.index
    w = 1 - j
    a, b = sat.saturated_field.components[j], sat.saturated_field.components[w]
    au = _univar_on_E(a.derivative(j), j, w)
    aw = _univar_on_E(a.derivative(w), j, w)
    bu = _univar_on_E(b.derivative(j), j, w)
    bw = _univar_on_E(b.derivative(w), j, w)
    # trace = au + bw, det = au*bw - aw*bu (as polynomials in the direction coordinate)
    n = max(len(au), len(bw))
    tr = unipoly.trim([(au[k] if k < len(au) else GaussRat(0)) + (bw[k] if k < len(bw) else GaussRat(0)) for k in range(n)])
    det = unipoly.poly_sub(unipoly.poly_mul(au, bw), unipoly.poly_mul(aw, bu))
    h = list(cluster.min_poly)
    dh = unipoly.poly_derivative(h)
    sq = unipoly.poly_gcd(h, dh)
    if unipoly.degree(sq) > 0:
        h_sf, rem = unipoly.poly_divmod(h, sq)
        assert not rem
    else:
        h_sf = unipoly.poly_monic(h)
    g1 = unipoly.poly_gcd(h_sf, tr) if tr else list(h_sf)
    nonred = unipoly.poly_gcd(g1, det) if det else list(g1)
    if unipoly.degree(nonred) > 0:
        return ClusterVerdict(h_sf, unipoly.degree(h_sf), False, [], [], nonred, [])
    sn = unipoly.poly_gcd(h_sf, det) if det else list(h_sf)
    if unipoly.degree(sn) > 0:
        nd, rem = unipoly.poly_divmod(h_sf, sn)
        assert not rem
    else:
        nd, sn = list(h_sf), []
    # dicritical cluster points have scalar Jacobian: aw = bu = 0 and au = bw
    diff = unipoly.poly_sub(au, bw)
    dic = list(nd)
    for q in (aw, bu, diff):
        if unipoly.degree(dic) <= 0:
            break
        dic = unipoly.poly_gcd(dic, q) if q else dic
    if unipoly.degree(dic) <= 0:
        dic = []
    return ClusterVerdict(h_sf, unipoly.degree(h_sf), True, nd, sn, [], dic)


def _fmt_poly(p: Sequence[GaussRat]) -> tuple[str, ...]:
    return tuple(str(c) for c in p)


# ---------------------------------------------------------------------------
# generic tower driver


@dataclass
class _WorkItem:
    path: str
    germ: VectorFieldGerm
    divisor: LogDivisor
    level: int
    location: tuple[str, ...]


def _run_tower(
    v: VectorFieldGerm,
    divisor: LogDivisor | None,
    max_depth: int,
    goal: str,
    is_terminal,
    terminal_record,
    node_budget: int = 4000,
) -> ResolutionTower:
    """Shared driver: blow up every non-terminal singular point, breadth
    first, until terminal everywhere or the depth cap is hit.

    `is_terminal(item) -> (bool, payload)`; `terminal_record(item, payload)`
    builds the TerminalSingularity for terminal items."""
    n = v.dim()
    div0 = divisor if divisor is not None else LogDivisor.empty()
    tower = ResolutionTower(
        root=v, root_divisor=divisor, goal=goal, status="complete", reason="",
        nodes={}, events=[], terminals=[], pending=[],
    )
    if not is_singular_at_origin(v):
        tower.notes.append("root germ is not singular at the origin; nothing to resolve")
        return tower
    queue: list[_WorkItem] = [_WorkItem("", v, div0, 0, _fmt_point([GaussRat(0)] * n))]
    depth_exceeded = False
    blocked_reason = ""
    explored = 0
    while queue:
        item = queue.pop(0)
        explored += 1
        if explored > node_budget:
            tower.status = "blocked"
            tower.reason = "node budget exhausted (%d)" % node_budget
            tower.pending.extend({"node": it.path, "location": list(it.location)} for it in queue)
            return tower
        terminal, payload = is_terminal(item)
        if terminal:
            tower.terminals.append(terminal_record(item, payload))
            continue
        if item.level >= max_depth:
            depth_exceeded = True
            tower.pending.append({"node": item.path, "location": list(item.location),
                                  "why_not_terminal": payload})
            continue
        ev_index = len(tower.events) + 1
        level = item.level
        s_by_chart: dict[int, int] = {}
        event = TowerEvent(ev_index, item.path, item.location, level, s_by_chart)
        tower.events.append(event)
        for chart in blowup.blowup_charts(n):
            sat = blowup.transform_vector_field(item.germ, chart, item.divisor, level=ev_index)
            s_by_chart[chart.index] = sat.saturation_exponent
            child_path = (item.path + "/" if item.path else "") + "b%d.c%d" % (ev_index, chart.index + 1)
            tower.nodes[child_path] = TowerNode(child_path, level + 1, sat)
            locus = blowup.singular_points_on_E(sat, parent=item.germ, dedupe=True)
            if locus.non_isolated:
                tower.status = "blocked"
                tower.reason = "non-isolated singular locus on E at %s" % child_path
                return tower
            if not locus.complete:
                blocked_reason = blocked_reason or (
                    "singular-point enumeration incomplete at %s: %s"
                    % (child_path, "; ".join(locus.notes) or "unknown")
                )
            for pt in sorted(locus.points, key=lambda q: tuple(str(c) for c in q)):
                child = translate_to_point(sat.saturated_field, pt)
                queue.append(_WorkItem(child_path, child, divisor_at_point(sat.divisor, pt),
                                       level + 1, _fmt_point(pt)))
            for cl in locus.clusters:
                verdict = _cluster_verdict(sat, cl)
                if verdict.dicritical_part:
                    tower.status = "blocked"
                    tower.reason = (
                        "reduced but dicritical singular points at non-Q(i) locations on %s" % child_path)
                    return tower
                if goal == "seidenberg" and verdict.all_reduced:
                    if verdict.nondegenerate_part and unipoly.degree(verdict.nondegenerate_part) > 0:
                        tower.terminals.append(TerminalSingularity(
                            node_path=child_path, location=None,
                            cluster_poly=_fmt_poly(verdict.nondegenerate_part),
                            cluster_size=unipoly.degree(verdict.nondegenerate_part),
                            reduced=True, surface_type=classify.NON_DEGENERATE,
                            simple_status=None, dicritical=None, report=None))
                    if verdict.saddle_node_part and unipoly.degree(verdict.saddle_node_part) > 0:
                        tower.terminals.append(TerminalSingularity(
                            node_path=child_path, location=None,
                            cluster_poly=_fmt_poly(verdict.saddle_node_part),
                            cluster_size=unipoly.degree(verdict.saddle_node_part),
                            reduced=True,
                            surface_type=classify.unclassified(
                                "saddle-node cluster at non-Q(i) points: type-k normalization unavailable"),
                            simple_status=None, dicritical=None, report=None))
                else:
                    tower.status = "blocked"
                    which = "non-reduced" if not verdict.all_reduced else goal
                    tower.reason = (
                        "%s singular points at non-Q(i) locations on %s (minimal polynomial degree %d)"
                        % (which, child_path, verdict.size))
                    return tower
    if blocked_reason:
        tower.status = "blocked"
        tower.reason = blocked_reason
        return tower
    if depth_exceeded:
        tower.status = "depth_exceeded"
        tower.reason = "depth cap %d reached before resolution finished" % max_depth
    return tower


# ---------------------------------------------------------------------------
# Seidenberg reduction (dimension 2)


def seidenberg_reduce(v: VectorFieldGerm, max_depth: int = DEFAULT_DEPTH) -> ResolutionTower:
    """Blow up until every terminal singularity is reduced and
    non-dicritical (surface case).

    Dicritical points are blown up even when reduced in the weak sense
    (e.g. the radial germ): the post-reduction state must satisfy
    pullback-tangent-bundle invariance for any further blow-up, which a
    dicritical point violates."""
    if v.dim() != 2:
        raise classify.DimensionMismatch("Seidenberg reduction is the dim-2 driver")
    if is_singular_at_origin(v) and not polygcd.isolated_at_origin_dim2(v.components):
        raise NonIsolatedSingularLocus("root singular locus is a curve")

    def is_terminal(item: _WorkItem):
        reduced, why = classify.classify_reduced(item.germ)
        if not reduced:
            return False, why
        dic = classify.is_dicritical(item.germ, assume_isolated=True)
        if dic:
            return False, "reduced but dicritical"
        return True, dic

    def record(item: _WorkItem, dic):
        rep = classify.singularity_report(item.germ, divisor=None, with_dicritical=False)
        rep.dicritical = dic
        return TerminalSingularity(
            node_path=item.path, location=item.location, cluster_poly=None, cluster_size=1,
            reduced=True, surface_type=rep.surface_type, simple_status=None,
            dicritical=dic, report=rep)

    return _run_tower(v, None, max_depth, "seidenberg", is_terminal, record)


# ---------------------------------------------------------------------------
# simple-singularity resolution (any dimension)


def resolve_simple(v: VectorFieldGerm, divisor: LogDivisor, max_depth: int = DEFAULT_DEPTH) -> ResolutionTower:
    """Blow up until every singularity is a simple point or corner and
    non-dicritical, per the log-triple conventions."""
    if divisor.axes and not divisor_invariance_check(v, divisor):
        raise DivisorNotInvariant("root divisor is not invariant")
    if v.dim() == 2 and is_singular_at_origin(v) and not polygcd.isolated_at_origin_dim2(v.components):
        raise NonIsolatedSingularLocus("root singular locus is a curve")
    probe = classify.bounded_ais_probe(v, min(max_depth, 3))
    if probe.status == "non_isolated_found":
        raise NonIsolatedSingularLocus("bounded A.I.S. probe found a non-isolated locus at level %s" % probe.level)

    def is_terminal(item: _WorkItem):
        if item.divisor.axis_count() == 0:
            return False, "no divisor axis through the point"
        try:
            status = classify.classify_simple(item.germ, item.divisor)
        except DivisorNotInvariant as exc:
            return False, str(exc)
        if not status.is_simple():
            return False, status.detail or status.kind
        dic = classify.is_dicritical(item.germ, assume_isolated=True)
        if dic:
            return False, "simple-looking but dicritical"
        return True, (status, dic)

    def record(item: _WorkItem, payload):
        status, dic = payload
        rep = classify.singularity_report(item.germ, divisor=item.divisor, with_dicritical=False)
        rep.dicritical = dic
        return TerminalSingularity(
            node_path=item.path, location=item.location, cluster_poly=None, cluster_size=1,
            reduced=rep.reduced, surface_type=rep.surface_type if v.dim() == 2 else None,
            simple_status=status, dicritical=dic, report=rep)

    tower = _run_tower(v, divisor, max_depth, "simple", is_terminal, record)
    if probe.status != "all_levels_finite":
        tower.notes.append("A.I.S. probe: %s" % probe.status)
    return tower


# ---------------------------------------------------------------------------
# weakly-reduced certificate


@dataclass
class SaturationRecord:
    event: int
    chart: int
    s: int

    def to_jsonable(self):
        return {"event": self.event, "chart": self.chart + 1, "s": self.s}


@dataclass
class WeaklyReducedCertificate:
    verdict: str  # "certified" | "refuted" | "unknown"
    failed_clause: int | None
    witness: str
    discrepancies: list[DiscrepancyEntry]
    saturations: list[SaturationRecord]
    howald_agrees: bool | None
    notes: list[str] = field(default_factory=list)

    def to_jsonable(self):
        return {
            "verdict": self.verdict,
            "failed_clause": self.failed_clause,
            "witness": self.witness,
            "discrepancies": [d.to_jsonable() for d in self.discrepancies],
            "saturation_exponents": [s.to_jsonable() for s in self.saturations],
            "howald_agrees": self.howald_agrees,
            "notes": list(self.notes),
        }


@dataclass
class _IdealNode:
    path: str
    gens: list[tuple[int, ...]]
    provenance: list[tuple[str, int]]  # per position: ("orig", axis) or ("exc", divisor id)
    germ: VectorFieldGerm | None
    level: int


def discrepancy_log_resolution(ideal: MonomialIdeal, germ: VectorFieldGerm | None,
                               max_depth: int = DEFAULT_DEPTH):
    """Principalize a monomial ideal by point blow-ups at chart origins,
    recording per-divisor discrepancies a_i and ideal orders d_i, plus the
    saturation exponent of the dragged-along field at every event/chart.

    Returns (discrepancies, saturations, leaf_original_axis_orders, status,
    witness) where status is "ok" | "unknown" | "nonsingular_center"."""
    n = ideal.ambient_dim
    disc: dict[int, DiscrepancyEntry] = {}
    sats: list[SaturationRecord] = []
    original_axis_orders: list[tuple[str, int, int]] = []
    queue = [_IdealNode("", sorted(ideal.generators), [("orig", i) for i in range(n)],
                        germ, 0)]
    events = 0
    status, witness = "ok", ""
    while queue:
        node = queue.pop(0)
        cur = MonomialIdeal(n, node.gens)
        content = cur.common_factor()
        quotient = cur.quotient_by(content)
        for pos in range(n):
            kind, ref = node.provenance[pos]
            if content[pos] > 0 and kind == "orig":
                original_axis_orders.append((node.path, ref, content[pos]))
        if quotient.is_trivial():
            continue
        if not quotient.cosupport_is_origin():
            return list(disc.values()), sats, original_axis_orders, "unknown", (
                "quotient ideal at %s is not cosupported at the chart origin; "
                "point blow-ups cannot principalize it" % (node.path or "root"))
        if node.level >= max_depth:
            return list(disc.values()), sats, original_axis_orders, "unknown", (
                "depth cap %d reached during principalization" % max_depth)
        events += 1
        ev = events
        d_new = min(sum(g) for g in node.gens)
        a_new = (n - 1) + sum(disc[ref].discrepancy for kind, ref in node.provenance if kind == "exc")
        new_id = ev
        disc[new_id] = DiscrepancyEntry(new_id, a_new, d_new, ev)
        germ_here = node.germ
        if germ_here is not None and not is_singular_at_origin(germ_here):
            status, witness = "nonsingular_center", (
                "log resolution blows up a point where the transformed field is nonsingular "
                "(node %s): the tangent bundle cannot match the pullback there" % (node.path or "root"))
            germ_singular = False
        else:
            germ_singular = germ_here is not None
        for chart in blowup.blowup_charts(n):
            images = chart.exponent_images()
            new_gens = []
            for g in node.gens:
                e = [0] * n
                for i, gi in enumerate(g):
                    if gi:
                        for t in range(n):
                            e[t] += gi * images[i][t]
                new_gens.append(tuple(e))
            child_prov = list(node.provenance)
            child_prov[chart.index] = ("exc", new_id)
            child_path = (node.path + "/" if node.path else "") + "b%d.c%d" % (ev, chart.index + 1)
            child_germ = None
            if germ_singular:
                sat = blowup.transform_vector_field(germ_here, chart, level=ev)
                sats.append(SaturationRecord(ev, chart.index, sat.saturation_exponent))
                child_germ = sat.saturated_field
            queue.append(_IdealNode(child_path, new_gens, child_prov, child_germ, node.level + 1))
    return list(disc.values()), sats, original_axis_orders, status, witness


def weakly_reduced_check(v: VectorFieldGerm, max_depth: int = DEFAULT_DEPTH) -> WeaklyReducedCertificate:
    """Certify or refute the weakly-reduced condition for a germ with
    monomial coefficient ideal.

    Clause 1 requires saturation exponent 0 at every blow-up of the log
    resolution of J_F; clause 2 requires discrepancy >= ideal order for
    every exceptional divisor (and no original-axis component in the
    principalized pullback).  The Newton-polyhedron oracle must agree with
    clause 2 and is reported alongside."""
    ideal = MonomialIdeal.from_polys(list(v.components))
    if ideal is None:
        return WeaklyReducedCertificate(
            "unknown", None, "coefficient ideal is not monomial; log resolution not attempted",
            [], [], None)
    notes: list[str] = []
    if ideal.is_trivial():
        howard = multiplier_ideal_trivial_monomial(ideal)
        return WeaklyReducedCertificate(
            "certified", None, "coefficient ideal is trivial; identity log resolution",
            [], [], howard, ["germ has a unit component; J_F = (1)"])
    disc, sats, axis_orders, status, witness = discrepancy_log_resolution(ideal, v, max_depth)
    howald = multiplier_ideal_trivial_monomial(ideal)
    if status == "unknown":
        return WeaklyReducedCertificate("unknown", None, witness, disc, sats, howald, notes)
    if status == "nonsingular_center":
        return WeaklyReducedCertificate("refuted", 1, witness, disc, sats, howald, notes)
    bad_s = [s for s in sats if s.s != 0]
    if bad_s:
        w = bad_s[0]
        return WeaklyReducedCertificate(
            "refuted", 1,
            "saturation exponent s = %d at event %d chart %d: T_F-hat differs from the pullback by %d E"
            % (w.s, w.event, w.chart + 1, w.s),
            disc, sats, howald, notes)
    for path, axis, order in axis_orders:
        return WeaklyReducedCertificate(
            "refuted", 2,
            "principalized pullback contains the strict transform of original axis %d "
            "with multiplicity %d at %s (discrepancy 0 < %d)" % (axis + 1, order, path or "root", order),
            disc, sats, howald, notes)
    for entry in disc:
        if entry.discrepancy < (entry.ideal_order or 0):
            return WeaklyReducedCertificate(
                "refuted", 2,
                "exceptional divisor %d has discrepancy %d < ideal order %d"
                % (entry.divisor_id, entry.discrepancy, entry.ideal_order),
                disc, sats, howald, notes)
    cert = WeaklyReducedCertificate("certified", None, "", disc, sats, howald, notes)
    return cert


def multiplier_ideal_trivial_by_discrepancy(ideal: MonomialIdeal, max_depth: int = 64) -> bool:
    """Independent route to multiplier-ideal triviality: principalize and
    test K - D effectivity on the ledger.  Used as the cross-check against
    the Newton-polyhedron oracle."""
    if ideal.is_trivial():
        return True
    disc, _sats, axis_orders, status, witness = discrepancy_log_resolution(ideal, None, max_depth)
    if status != "ok":
        raise FoliationError("log resolution failed: %s" % witness)
    if axis_orders:
        return False
    return all(e.discrepancy >= (e.ideal_order or 0) for e in disc)
