"""Command-line interface: parse the DSL, dispatch, emit JSON/CSV reports.

Exit codes: 0 success (including depth-exceeded results), 1 operational
errors (parse failures, bad preconditions), 2 mathematical refutations and
self-test failures (Refuted, Mismatch, counterexample candidates), 3
internal errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .gaussrat import GaussRat
from .foliation import FoliationError, LogDivisor
from .quadrature import QuadConfig
from . import blowup, classify, dsl, nevanlinna, resolution, separatrix

SCHEMA = "foliation-lab/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUTED = 2
EXIT_INTERNAL = 3


def _emit_json(command: str, result, out) -> None:
    doc = {"schema": SCHEMA, "command": command, "result": result}
    out.write(json.dumps(doc, sort_keys=True, indent=2, allow_nan=False))
    out.write("\n")


def _sanitize(obj):
    """JSON cannot carry inf/nan or numpy scalars; normalize them."""
    import numpy as np

    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isinf(obj) or math.isnan(obj):
            return str(obj)
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _emit_csv(rows, out) -> None:
    import csv as _csv

    w = _csv.writer(out)
    for row in rows:
        w.writerow(row)


def _parse_radii(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise dsl.ParseError("radii must be a:b:steps")
    a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1 or a <= 0 or b < a:
        raise dsl.ParseError("bad radii range %r" % spec)
    if n == 1:
        return [a]
    ratio = (b / a) ** (1.0 / (n - 1))
    return [a * ratio**k for k in range(n)]


def _ideal_gens(spec: str, nvars: int):
    names = ("x", "y", "z", "w")[:nvars]
    gens = []
    for part in spec.split(","):
        part = part.strip().strip("()")
        if part:
            gens.append(dsl.parse_polynomial(part, names))
    if not gens:
        raise dsl.ParseError("empty ideal")
    return gens


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="foliation-lab",
        description="Singularity lab for holomorphic foliations by curves",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    c = sub.add_parser("classify", help="full singularity taxonomy at the origin")
    c.add_argument("input")
    c.add_argument("--divisor", default=None)

    b = sub.add_parser("blowup", help="one point blow-up, all charts")
    b.add_argument("input")
    b.add_argument("--divisor", default=None)
    b.add_argument("--chart", type=int, default=None, help="1-based chart index")

    r = sub.add_parser("resolve", help="blow-up tower (seidenberg or simple)")
    r.add_argument("input")
    r.add_argument("--mode", choices=["seidenberg", "simple"], default="seidenberg")
    r.add_argument("--divisor", default=None)
    r.add_argument("--depth", type=int, default=resolution.DEFAULT_DEPTH)

    w = sub.add_parser("weakly-reduced", help="weakly-reduced certificate")
    w.add_argument("input")
    w.add_argument("--depth", type=int, default=resolution.DEFAULT_DEPTH)

    s = sub.add_parser("separatrix", help="formal separatrix machinery")
    s.add_argument("input")
    s.add_argument("--check", choices=["solve", "corner", "lift"], default="solve")
    s.add_argument("--direction", type=int, default=None, help="eigendirection index (sorted spectrum)")
    s.add_argument("--eigenvalue", default=None, help="choose direction by eigenvalue, e.g. '1' or 'i'")
    s.add_argument("--order", type=int, default=8)
    s.add_argument("--divisor", default=None)

    n = sub.add_parser("nevanlinna", help="Nevanlinna-layer numerics")
    n.add_argument("input", help="curve in the DSL")
    n.add_argument("--check", choices=["T", "jensen", "fmt", "taut", "logderiv"], required=True)
    n.add_argument("--ideal", default=None, help="ideal generators, e.g. 'x, y'")
    n.add_argument("--radii", default="2:16:4")
    n.add_argument("--form", choices=["fs", "euclid"], default="fs")
    n.add_argument("--tol", type=float, default=1e-8)
    n.add_argument("--series", choices=["T", "N", "m", "diff"], default=None,
                   help="emit a single (r, value) series as plot data")

    e = sub.add_parser("effectivity", help="diophantine effectivity count")
    e.add_argument("--dim", type=int, required=True)
    e.add_argument("--power", type=int, required=True)
    e.add_argument("--alpha", type=int, required=True)

    t = sub.add_parser("selftest", help="built-in consistency battery")
    t.add_argument("--seed", type=int, default=7)
    return p


def _divisor_for(args, germ) -> LogDivisor | None:
    if args.divisor is None:
        return None
    return dsl.parse_divisor(args.divisor, germ.variables)


def cmd_classify(args, out) -> int:
    germ = dsl.parse_vector_field(args.input)
    divisor = _divisor_for(args, germ)
    rep = classify.singularity_report(germ, divisor)
    _emit_json("classify", _sanitize(rep.to_jsonable()), out)
    return EXIT_OK


def cmd_blowup(args, out) -> int:
    germ = dsl.parse_vector_field(args.input)
    divisor = _divisor_for(args, germ)
    charts = blowup.blowup_charts(germ.dim())
    if args.chart is not None:
        charts = [blowup.BlowupChart(germ.dim(), args.chart - 1)]
    result = {}
    for chart in charts:
        sat = blowup.transform_vector_field(germ, chart, divisor)
        entry = sat.to_jsonable()
        entry["raw_field"] = sat.raw_field.to_text()
        locus = blowup.singular_points_on_E(sat, parent=germ, dedupe=True)
        entry["singular_points_on_E"] = [[str(c) for c in pt] for pt in locus.points]
        entry["clusters"] = [[str(c) for c in cl.min_poly] for cl in locus.clusters]
        entry["enumeration_complete"] = locus.complete
        result["c%d" % (chart.index + 1)] = entry
    _emit_json("blowup", _sanitize(result), out)
    return EXIT_OK


def cmd_resolve(args, out) -> int:
    germ = dsl.parse_vector_field(args.input)
    if args.mode == "seidenberg":
        tower = resolution.seidenberg_reduce(germ, args.depth)
    else:
        divisor = _divisor_for(args, germ) or LogDivisor.empty()
        tower = resolution.resolve_simple(germ, divisor, args.depth)
    _emit_json("resolve", _sanitize(tower.to_jsonable()), out)
    return EXIT_OK


def cmd_weakly_reduced(args, out) -> int:
    germ = dsl.parse_vector_field(args.input)
    cert = resolution.weakly_reduced_check(germ, args.depth)
    _emit_json("weakly-reduced", _sanitize(cert.to_jsonable()), out)
    return EXIT_REFUTED if cert.verdict == "refuted" else EXIT_OK


def cmd_separatrix(args, out) -> int:
    germ = dsl.parse_vector_field(args.input)
    divisor = _divisor_for(args, germ)
    if args.check == "corner":
        if divisor is None:
            raise FoliationError("corner check needs --divisor")
        rep = separatrix.corner_has_no_transverse_separatrix(germ, divisor, args.order)
        _emit_json("separatrix", _sanitize(rep.to_jsonable()), out)
        return EXIT_REFUTED if rep.outcome == "counterexample_candidate" else EXIT_OK
    direction = args.direction
    if direction is None and args.eigenvalue is not None:
        lam = dsl.parse_polynomial(args.eigenvalue, ()).constant_term()
        direction = separatrix.direction_of_eigenvalue(germ, lam)
    if direction is None:
        raise FoliationError("separatrix solve needs --direction or --eigenvalue")
    result = separatrix.formal_separatrix(germ, direction, args.order)
    if isinstance(result, separatrix.Resonance):
        _emit_json("separatrix", _sanitize(result.to_jsonable()), out)
        return EXIT_OK
    if args.check == "lift":
        if divisor is None:
            raise FoliationError("lift check needs --divisor")
        lift = separatrix.separatrix_lift_check(germ, divisor, result, args.order)
        _emit_json("separatrix", _sanitize(lift.to_jsonable()), out)
        return EXIT_REFUTED if lift.outcome == "mismatch" else EXIT_OK
    _emit_json("separatrix", _sanitize(result.to_jsonable()), out)
    return EXIT_OK


def cmd_nevanlinna(args, out) -> int:
    curve = dsl.parse_curve(args.input)
    cfg = QuadConfig(tol=args.tol)
    radii = _parse_radii(args.radii)
    check = args.check
    if check == "T":
        prof = nevanlinna.characteristic_T(curve, args.form, radii, cfg)
        if args.format == "csv":
            _emit_csv(prof.csv_rows(), out)
        else:
            _emit_json("nevanlinna", _sanitize({"check": "T", "profile": prof.to_jsonable()}), out)
        return EXIT_OK
    if check == "jensen":
        zeros = curve.zeros_for("f1")
        reports = [nevanlinna.jensen_verify(curve.components[0], zeros, r, cfg) for r in radii]
        worst = max(rep.residual - rep.quadrature_bound for rep in reports)
        _emit_json("nevanlinna", _sanitize({
            "check": "jensen",
            "reports": [rep.to_jsonable() for rep in reports],
            "max_excess_residual": worst,
        }), out)
        return EXIT_OK
    if check == "fmt":
        if args.ideal is None:
            raise FoliationError("fmt check needs --ideal")
        gens = _ideal_gens(args.ideal, curve.dim())
        zeros = curve.zeros_for("ideal")
        rep = nevanlinna.fmt_verify(curve, gens, zeros, radii, cfg)
        if args.format == "csv":
            rows = rep.profile.csv_rows()
            _emit_csv(rows, out)
        elif args.series:
            prof = rep.profile
            series = {"T": prof.T, "N": prof.N, "m": prof.m, "diff": rep.differences}[args.series]
            _emit_csv([["r", args.series]] + [[r, v] for r, v in zip(prof.r_grid, series)], out)
        else:
            _emit_json("nevanlinna", _sanitize(rep.to_jsonable()), out)
        return EXIT_OK if rep.passed else EXIT_REFUTED
    if check == "taut":
        rep = nevanlinna.tautological_pairing(curve, radii, cfg)
        _emit_json("nevanlinna", _sanitize(rep.to_jsonable()), out)
        return EXIT_REFUTED if rep.violation else EXIT_OK
    if check == "logderiv":
        zeros = curve.zeros_for("f1")
        rep = nevanlinna.log_derivative_check(curve.components[0], zeros, radii, cfg)
        _emit_json("nevanlinna", _sanitize(rep.to_jsonable()), out)
        return EXIT_OK if rep.passed else EXIT_REFUTED
    raise FoliationError("unknown check %r" % check)


def cmd_effectivity(args, out) -> int:
    res = blowup.effectivity_count(args.dim, args.power, args.alpha)
    if isinstance(res, blowup.SectionExists):
        doc = {"outcome": "section_exists", "surplus": res.count, "degree": res.degree,
               "dimension_count": res.dimension_count, "constraints": res.constraints}
    else:
        doc = {"outcome": "no_section", "degree": res.degree,
               "dimension_count": res.dimension_count, "constraints": res.constraints}
    _emit_json("effectivity", doc, out)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    import random

    from .corpus import oneform_corpus
    from .exprtree import Poly
    from .mvpoly import MVPoly

    failures = []
    # Siu divisibility battery
    for variables, coeffs in oneform_corpus(100, seed=args.seed):
        n = len(variables)
        for chart in blowup.blowup_charts(n):
            try:
                blowup.pullback_one_form(coeffs, chart)
            except blowup.InternalError as exc:
                failures.append("siu: %s" % exc)
    # Jensen convention pin: P = t - 2 at r = 4
    jr = nevanlinna.jensen_verify(Poly([GaussRat(-2), GaussRat(1)]), [(GaussRat(2), 1)], 4.0)
    if jr.residual > 1e-6:
        failures.append("jensen convention residual %.2e" % jr.residual)
    # chart compatibility at random rational points
    rng = random.Random(args.seed)
    vs = ("x", "y")
    for _ in range(25):
        comps = []
        for _c in range(2):
            terms = {}
            for _t in range(rng.randrange(1, 4)):
                e = (rng.randrange(0, 3), rng.randrange(0, 3))
                if 1 <= sum(e) <= 3:
                    terms[e] = GaussRat(rng.choice([1, -1, 2, -2]))
            comps.append(MVPoly(vs, terms))
        from .foliation import VectorFieldGerm, is_singular_at_origin

        germ = VectorFieldGerm(vs, comps)
        if not is_singular_at_origin(germ) or all(c.is_zero() for c in comps):
            continue
        if not _charts_compatible(germ):
            failures.append("chart compatibility: %s" % germ.to_text())
    doc = {"failures": failures, "passed": not failures}
    _emit_json("selftest", doc, out)
    return EXIT_OK if not failures else EXIT_REFUTED


def _charts_compatible(germ) -> bool:
    """Saturated transforms in both charts push forward to proportional
    ambient vectors at matching rational points."""
    from fractions import Fraction

    sats = [blowup.transform_vector_field(germ, chart) for chart in blowup.blowup_charts(2)]
    samples = [
        (GaussRat(Fraction(1, 3)), GaussRat(2)),
        (GaussRat(Fraction(-1, 2)), GaussRat(Fraction(3, 4))),
        (GaussRat(2), GaussRat(Fraction(-2, 5))),
    ]

    def ambient_vector(sat, point):
        j = sat.chart.index
        vec = sat.saturated_field.evaluate(point)
        u = point[j]
        out = []
        for i in range(2):
            if i == j:
                out.append(vec[j])
            else:
                out.append(vec[i] * u + point[i] * vec[j])
        return out

    for (u, w) in samples:
        if u.is_zero() or w.is_zero():
            continue
        p0 = (u, w)
        z = sats[0].chart.point_to_ambient(p0)
        p1 = sats[1].chart.ambient_to_chart(z)
        v0 = ambient_vector(sats[0], p0)
        v1 = ambient_vector(sats[1], p1)
        cross = v0[0] * v1[1] - v0[1] * v1[0]
        if not cross.is_zero():
            return False
    return True


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    handlers = {
        "classify": cmd_classify,
        "blowup": cmd_blowup,
        "resolve": cmd_resolve,
        "weakly-reduced": cmd_weakly_reduced,
        "separatrix": cmd_separatrix,
        "nevanlinna": cmd_nevanlinna,
        "effectivity": cmd_effectivity,
        "selftest": cmd_selftest,
    }
    try:
        return handlers[args.verb](args, out)
    except (dsl.ParseError, FoliationError, resolution.NonIsolatedSingularLocus, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_ERROR
    except blowup.InternalError as exc:
        sys.stderr.write("internal error: %s\n" % exc)
        return EXIT_INTERNAL
    except Exception as exc:  # serialization and other internal failures
        sys.stderr.write("internal error: %s: %s\n" % (type(exc).__name__, exc))
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
