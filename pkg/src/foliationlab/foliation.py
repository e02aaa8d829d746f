"""Local generators of foliations by curves and log-divisor bookkeeping.

A germ is a polynomial vector field centered at the origin; singular
points elsewhere are handled by translating first.  A log divisor is a
set of invariant coordinate hyperplanes {z_j = 0}, tagged with their
provenance (original axis or exceptional divisor of some blow-up level).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .gaussrat import GaussRat
from .mvpoly import MVPoly, linear_part_matrix
from . import linalg

ORIGINAL = "original"


def exceptional_tag(level: int) -> str:
    return "exceptional:%d" % level


class FoliationError(Exception):
    pass


class DivisorNotInvariant(FoliationError):
    pass


class VectorFieldGerm:
    """v = sum_i a_i d/dz_i with polynomial components over Q(i)."""

    __slots__ = ("variables", "components", "label")

    def __init__(self, variables: Sequence[str], components: Sequence[MVPoly], label: str = "root"):
        variables = tuple(variables)
        components = tuple(components)
        if len(components) != len(variables):
            raise ValueError("need one component per variable")
        for c in components:
            if c.variables != variables:
                raise ValueError("component in the wrong ring")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("VectorFieldGerm is immutable")

    @classmethod
    def from_strings(cls, variables: Sequence[str], component_strs: Sequence[str], label: str = "root"):
        from .dsl import parse_polynomial

        comps = [parse_polynomial(s, variables) for s in component_strs]
        return cls(variables, comps, label)

    def dim(self) -> int:
        return len(self.variables)

    def with_label(self, label: str) -> "VectorFieldGerm":
        return VectorFieldGerm(self.variables, self.components, label)

    def scale(self, c: GaussRat) -> "VectorFieldGerm":
        return VectorFieldGerm(self.variables, [p * c for p in self.components], self.label)

    def linear_part(self) -> linalg.Matrix:
        return linear_part_matrix(self.components)

    def conjugate_by(self, m: linalg.Matrix) -> "VectorFieldGerm":
        """Exact linear change of coordinates z = M w: the transformed field
        has components M^{-1} (a o M)."""
        minv = linalg.inverse(m)
        if minv is None:
            raise ValueError("change of coordinates must be invertible")
        n = self.dim()
        images = []
        for i in range(n):
            img = MVPoly.zero(self.variables)
            for j, name in enumerate(self.variables):
                if not m[i][j].is_zero():
                    img = img + MVPoly.var(self.variables, name) * m[i][j]
            images.append(img)
        composed = [c.subs(images) for c in self.components]
        new_comps = []
        for i in range(n):
            acc = MVPoly.zero(self.variables)
            for j in range(n):
                if not minv[i][j].is_zero():
                    acc = acc + composed[j] * minv[i][j]
            new_comps.append(acc)
        return VectorFieldGerm(self.variables, new_comps, self.label)

    def evaluate(self, point: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def to_text(self) -> str:
        """Canonical DSL form, parse(to_text(v)) == v."""
        parts = []
        for comp, name in zip(self.components, self.variables):
            parts.append("(%s) d/d%s" % (comp.to_string(), name))
        return "v = " + " + ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, VectorFieldGerm):
            return NotImplemented
        return self.variables == other.variables and self.components == other.components

    def __repr__(self):
        return "VectorFieldGerm(%s)" % self.to_text()


class LogDivisor:
    """Invariant coordinate hyperplanes {z_j = 0} for j in `axes` (0-based),
    with per-axis provenance tags."""

    __slots__ = ("axes", "history")

    def __init__(self, axes, history: Mapping[int, str] | None = None):
        axes = frozenset(int(a) for a in axes)
        hist = dict(history) if history else {}
        for a in axes:
            hist.setdefault(a, ORIGINAL)
        hist = {a: hist[a] for a in axes}
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "history", hist)

    def __setattr__(self, name, value):
        raise AttributeError("LogDivisor is immutable")

    @classmethod
    def empty(cls) -> "LogDivisor":
        return cls(frozenset())

    def axis_count(self) -> int:
        return len(self.axes)

    def __contains__(self, axis: int) -> bool:
        return axis in self.axes

    def __eq__(self, other):
        if not isinstance(other, LogDivisor):
            return NotImplemented
        return self.axes == other.axes and self.history == other.history

    def __repr__(self):
        items = ", ".join("%d:%s" % (a, self.history[a]) for a in sorted(self.axes))
        return "LogDivisor({%s})" % items

    def to_jsonable(self):
        return {"axes": sorted(self.axes), "history": {str(a): self.history[a] for a in sorted(self.axes)}}


class CoeffIdealPresentation:
    """Generator lists for J_F and, when a divisor is given, J_{F,D}.

    plain_generators are the raw components a_i.  log_generators factor the
    divisor coordinate out of each invariant-axis component, so the j-th
    log generator for j in D is components[j] / z_j."""

    __slots__ = ("plain_generators", "log_generators", "divisor")

    def __init__(self, plain, log, divisor):
        object.__setattr__(self, "plain_generators", tuple(plain))
        object.__setattr__(self, "log_generators", tuple(log) if log is not None else None)
        object.__setattr__(self, "divisor", divisor)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffIdealPresentation is immutable")


def divisor_at_point(divisor: LogDivisor, point: Sequence[GaussRat]) -> LogDivisor:
    """Axes of the divisor passing through a point of the same chart."""
    axes = {a: divisor.history[a] for a in divisor.axes
            if GaussRat.coerce(point[a]).is_zero()}
    return LogDivisor(axes.keys(), axes)


def translate_to_point(v: VectorFieldGerm, point: Sequence[GaussRat]) -> VectorFieldGerm:
    """Recenter so that `point` becomes the origin (components composed with
    z -> z + point)."""
    pt = [GaussRat.coerce(p) for p in point]
    if all(p.is_zero() for p in pt):
        return v
    comps = [c.translate(pt) for c in v.components]
    return VectorFieldGerm(v.variables, comps, v.label)


def is_singular_at_origin(v: VectorFieldGerm) -> bool:
    return all(c.constant_term().is_zero() for c in v.components)


def divisor_invariance_check(v: VectorFieldGerm, axes) -> bool:
    """Each hyperplane {z_j = 0}, j in axes, is invariant iff z_j divides
    the j-th component."""
    if isinstance(axes, LogDivisor):
        axes = axes.axes
    return all(v.components[j].divisible_by_var(j) for j in axes)


def coefficient_ideal(v: VectorFieldGerm, divisor: LogDivisor | None = None) -> CoeffIdealPresentation:
    """Generators of J_F (and of J_{F,D} when a divisor is supplied)."""
    plain = list(v.components)
    if divisor is None or not divisor.axes:
        return CoeffIdealPresentation(plain, None if divisor is None else plain, divisor)
    if not divisor_invariance_check(v, divisor):
        raise DivisorNotInvariant("divisor axes %s not invariant" % sorted(divisor.axes))
    log = []
    for j, comp in enumerate(v.components):
        log.append(comp.divide_by_var_power(j, 1) if j in divisor.axes else comp)
    return CoeffIdealPresentation(plain, log, divisor)
