"""Numeric verification of the Nevanlinna layer at finite radius.

Conventions, pinned by self-tests:

* Jensen identity (exact):  for Phi = log|P|^2 with zeros t_j of order
  nu_j,   2 * sum_{|t_j|<r} nu_j log(r / max(|t_j|, 1))
            = mean_{|t|=r} Phi - mean_{|t|=1} Phi,
  so each zero order carries point mass 2 in the squared-log convention.
* Characteristics are reported in "form units": T for the Fubini-Study
  form on each projective-line factor matches T(r) = log sqrt(1+r^2) -
  log sqrt(2) for f(t) = t.  The order-swapped radial formula
  T(r) = int_0^r q(rho) log(r/max(rho,1)) d rho is used throughout.
* The First Main Theorem comparison smooths the ideal weight with
  delta = 1: psi = (1/2) log(1 + sum |g_i o f|^2).  Then T_psi - N - m is
  an exact constant in r, so a vanishing regression slope against log r is
  the finite-radius FMT statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .gaussrat import GaussRat
from .mvpoly import MVPoly
from .foliation import VectorFieldGerm
from .exprtree import (
    Expr,
    expr_from_mvpoly,
    order_at_point,
    order_at_zero,
)
from .quadrature import QuadConfig, QuadResult, ZeroOnCircle, circle_mean, nudge_radius

Zero = tuple[complex, int]  # (location, multiplicity); locations may be exact GaussRat


class NotALeaf(Exception):
    pass


def _zero_abs(t0) -> float:
    if isinstance(t0, GaussRat):
        return math.sqrt(float(t0.abs2()))
    return abs(complex(t0))


def _softplus(x: np.ndarray) -> np.ndarray:
    """log(1 + e^x), stable for large |x|."""
    out = np.where(x > 36.0, x, np.log1p(np.exp(np.minimum(x, 36.0))))
    return np.where(x < -36.0, np.exp(np.maximum(x, -700.0)), out)


def _logsumexp(rows: list[np.ndarray]) -> np.ndarray:
    m = rows[0]
    for r in rows[1:]:
        m = np.maximum(m, r)
    safe = np.where(np.isneginf(m), 0.0, m)
    s = np.zeros_like(safe)
    for r in rows:
        s = s + np.exp(r - safe)
    with np.errstate(divide="ignore"):
        out = safe + np.log(s)
    return np.where(np.isneginf(m), -np.inf, out)


# ---------------------------------------------------------------------------
# curves


@dataclass
class ParametrizedCurve:
    """Entire curve components as expression trees, with declared zero data.

    declared_zeros maps a target name ("f1", "f2", .., "fprime", "ideal")
    to a list of (location, multiplicity).  Declarations are verified at
    construction: the target must vanish to the declared order within
    tolerance."""

    components: tuple[Expr, ...]
    declared_zeros: dict[str, list[Zero]] = field(default_factory=dict)
    working_radius: float = 256.0
    label: str = "f"

    def __post_init__(self):
        self.components = tuple(self.components)
        self.verify_declared_zeros()

    def dim(self) -> int:
        return len(self.components)

    def is_algebraic(self) -> bool:
        """Polynomial components factor through a rational curve."""
        return all(c.is_polynomial() for c in self.components)

    def derivative_exprs(self) -> tuple[Expr, ...]:
        return tuple(c.diff() for c in self.components)

    def _target_expr(self, name: str) -> Expr | None:
        if name.startswith("f") and name[1:].isdigit():
            idx = int(name[1:]) - 1
            if 0 <= idx < len(self.components):
                return self.components[idx]
        return None

    def verify_declared_zeros(self, tol: float = 1e-7):
        for name, zeros in self.declared_zeros.items():
            expr = self._target_expr(name)
            if expr is None:
                continue  # joint targets ("fprime", "ideal") verified by their consumers
            for (t0, mult) in zeros:
                z = t0.to_complex() if isinstance(t0, GaussRat) else complex(t0)
                got = order_at_point(expr, z, mult + 2, tol)
                if got != mult:
                    raise ValueError(
                        "declared zero of %s at %s has order %s, not %d" % (name, z, got, mult))

    def zeros_for(self, name: str) -> list[Zero]:
        return list(self.declared_zeros.get(name, []))


@dataclass
class NevanlinnaProfile:
    r_grid: list[float]
    T: list[float]
    N: list[float] | None
    m: list[float] | None
    bounds: list[float]
    diverged: list[bool]

    def csv_rows(self) -> list[list]:
        rows = [["r", "T", "N", "m", "error_bound"]]
        for i, r in enumerate(self.r_grid):
            rows.append([
                r, self.T[i],
                self.N[i] if self.N else "",
                self.m[i] if self.m else "",
                self.bounds[i],
            ])
        return rows

    def to_jsonable(self):
        return {
            "r": self.r_grid,
            "T": self.T,
            "N": self.N,
            "m": self.m,
            "error_bounds": self.bounds,
            "diverged": self.diverged,
        }


# ---------------------------------------------------------------------------
# densities (all in form units: FS on P^1 integrates to 1)


def fs_sum_density(components: Sequence[Expr]) -> Callable[[np.ndarray], np.ndarray]:
    comps = list(components)
    derivs = [c.diff() for c in comps]

    def dens(t: np.ndarray) -> np.ndarray:
        total = np.zeros(t.shape, dtype=float)
        for g, gp in zip(comps, derivs):
            la = g.logabs2(t)
            lap = gp.logabs2(t)
            expo = lap - 2.0 * _softplus(la)
            total = total + np.exp(np.maximum(expo, -745.0))
        return total / math.pi

    return dens


def euclidean_density(components: Sequence[Expr], cutoff: float = 1e12) -> Callable[[np.ndarray], np.ndarray]:
    derivs = [c.diff() for c in components]

    def dens(t: np.ndarray) -> np.ndarray:
        total = np.zeros(t.shape, dtype=float)
        for gp in derivs:
            lap = gp.logabs2(t)
            total = total + np.exp(np.minimum(lap, math.log(cutoff)))
        return np.minimum(total, cutoff) / math.pi

    return dens


def direction_map_density(gens_on_curve: Sequence[Expr]) -> Callable[[np.ndarray], np.ndarray]:
    """Fubini-Study pullback density of the projectivized map
    t -> [G_1 : ... : G_k], computed scale-invariantly.  Smooth across
    common zeros of the G_i (the map extends); identically zero for a
    single generator."""
    gs = list(gens_on_curve)
    gps = [g.diff() for g in gs]

    def dens(t: np.ndarray) -> np.ndarray:
        sc = [g.eval_scaled(t) for g in gs]
        scp = [g.eval_scaled(t) for g in gps]
        m = np.full(t.shape, -np.inf)
        for a, _ in sc + scp:
            m = np.maximum(m, a)
        safe = np.where(np.isneginf(m), 0.0, m)
        q = np.zeros(t.shape, dtype=float)
        s1 = np.zeros(t.shape, dtype=float)
        s2 = np.zeros(t.shape, dtype=complex)
        for (a, u), (ap, up) in zip(sc, scp):
            q = q + np.exp(2.0 * (a - safe))
            s1 = s1 + np.exp(2.0 * (ap - safe))
            s2 = s2 + up * np.conj(u) * np.exp(ap + a - 2.0 * safe)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (q * s1 - np.abs(s2) ** 2) / (q * q) / math.pi
        return np.where(q > 0, out, 0.0)

    return dens


# ---------------------------------------------------------------------------
# characteristic on a grid


def characteristic_on_grid(density, r_grid: Sequence[float], cfg: QuadConfig) -> tuple[list[float], list[float], list[bool], int]:
    """T(r) = int_0^r q(rho) log(r/max(rho,1)) d rho for every r at once,
    with q(rho) = rho * mean-circle(density) * 2 pi.  Refines the radial
    grid until the largest radius stabilizes."""
    r_grid = [float(r) for r in r_grid]
    breaks = sorted({0.0, 1.0, *r_grid})
    cache: dict[float, tuple[float, float, bool]] = {}
    evals = 0

    def q_at(rho: float) -> tuple[float, float, bool]:
        nonlocal evals
        if rho not in cache:
            if rho == 0.0:
                cache[rho] = (0.0, 0.0, True)
            else:
                res = circle_mean(density, rho, cfg)
                evals += res.evaluations
                cache[rho] = (2.0 * math.pi * rho * res.value, res.error_bound * rho, res.converged)
        return cache[rho]

    def run_level(mult: int):
        Ts = [0.0 for _ in r_grid]
        ok = True
        for a, b in zip(breaks[:-1], breaks[1:]):
            nseg = max(8, int(mult * 16 * (b - a) / max(1.0, breaks[-1] - 0.0)))
            nseg += nseg % 2
            xs = np.linspace(a, b, nseg + 1)
            qs = []
            for x in xs:
                qv, _qb, qok = q_at(float(x))
                ok = ok and qok
                qs.append(qv)
            qs = np.asarray(qs)
            h = (b - a) / nseg
            for i, r in enumerate(r_grid):
                if b <= r + 1e-15:
                    w = np.log(r / np.maximum(xs, 1.0))
                    w = np.maximum(w, 0.0)
                    seg = h / 3.0 * (qs[0] * w[0] + qs[-1] * w[-1]
                                     + 4.0 * (qs[1:-1:2] * w[1:-1:2]).sum()
                                     + 2.0 * (qs[2:-2:2] * w[2:-2:2]).sum())
                    Ts[i] += float(seg)
        return Ts, bool(ok)

    prev, ok_prev = run_level(1)
    level = 2
    bounds = [math.inf] * len(r_grid)
    cur, ok_cur = prev, ok_prev
    while level <= 16:
        cur, ok_cur = run_level(level)
        bounds = [abs(a - b) for a, b in zip(cur, prev)]
        if max(bounds) <= max(cfg.tol, 1e-9) * max(1.0, max(abs(v) for v in cur)) or evals > cfg.budget:
            break
        prev = cur
        level *= 2
    diverged = [bool(not ok_cur or b > 1e-3 * max(1.0, abs(v))) for b, v in zip(bounds, cur)]
    return cur, bounds, diverged, evals


# ---------------------------------------------------------------------------
# spec operations


def circle_average_log(g: Expr, r: float, cfg: QuadConfig | None = None,
                       declared_zeros: Sequence[Zero] | None = None) -> QuadResult:
    """(1/2 pi) integral of log|g|^2 over the circle |t| = r."""
    cfg = cfg or QuadConfig()
    if declared_zeros:
        for (t0, _mult) in declared_zeros:
            if abs(_zero_abs(t0) - r) <= 1e-9 * max(1.0, r):
                raise ZeroOnCircle("declared zero at modulus %s sits on the circle r = %s" % (_zero_abs(t0), r))
    return circle_mean(lambda t: g.logabs2(t), r, cfg)


def counting_function(zeros: Sequence[Zero], r: float) -> float:
    """N(r) = sum nu_j log(r/|t_j|) over |t_j| < r, with the annulus
    convention nu log r for zeros at the origin."""
    if r < 1.0:
        raise ValueError("counting function needs r >= 1")
    total = 0.0
    for (t0, mult) in zeros:
        a = _zero_abs(t0)
        if a < r:
            total += mult * (math.log(r) if a == 0.0 else math.log(r / a))
    return total


def _annulus_counting(zeros: Sequence[Zero], r: float) -> float:
    """sum nu_j log(r / max(|t_j|, 1)): the exact Jensen mass between the
    unit circle and radius r."""
    total = 0.0
    for (t0, mult) in zeros:
        a = _zero_abs(t0)
        if a < r:
            total += mult * math.log(r / max(a, 1.0))
    return total


@dataclass
class JensenReport:
    r: float
    residual: float
    quadrature_bound: float
    counting_term: float
    average_r: float
    average_1: float
    unit_disk_correction: float

    def to_jsonable(self):
        return self.__dict__.copy()


def jensen_verify(p: Expr, zeros: Sequence[Zero], r: float, cfg: QuadConfig | None = None) -> JensenReport:
    """Residual of the exact Jensen identity for log|P|^2.

    The declared zeros must exhaust the zeros of P in |t| < r."""
    cfg = cfg or QuadConfig()
    moduli = [_zero_abs(z) for z, _ in zeros]
    r_use = nudge_radius(r, moduli)
    one_use = nudge_radius(1.0, moduli)
    avg_r = circle_mean(lambda t: p.logabs2(t), r_use, cfg)
    avg_1 = circle_mean(lambda t: p.logabs2(t), one_use, cfg)
    mass = 2.0 * _annulus_counting(zeros, r_use)
    counting = counting_function(zeros, r_use)
    correction = counting - _annulus_counting(zeros, r_use)
    residual = abs(mass - avg_r.value + avg_1.value)
    return JensenReport(
        r=r_use, residual=residual,
        quadrature_bound=avg_r.error_bound + avg_1.error_bound,
        counting_term=counting, average_r=avg_r.value, average_1=avg_1.value,
        unit_disk_correction=correction,
    )


def characteristic_T(curve: ParametrizedCurve, form: str, r_grid: Sequence[float],
                     cfg: QuadConfig | None = None) -> NevanlinnaProfile:
    """Growth characteristic for the built-in positive forms."""
    cfg = cfg or QuadConfig()
    if form == "fs":
        dens = fs_sum_density(curve.components)
    elif form == "euclid":
        dens = euclidean_density(curve.components)
    else:
        raise ValueError("unknown form %r (use 'fs' or 'euclid')" % form)
    T, bounds, diverged, _ = characteristic_on_grid(dens, r_grid, cfg)
    return NevanlinnaProfile(list(map(float, r_grid)), T, None, None, bounds, diverged)


@dataclass
class FmtReport:
    profile: NevanlinnaProfile
    differences: list[float]
    slope_vs_log_r: float
    oscillation: float
    passed: bool

    def to_jsonable(self):
        return {
            "profile": self.profile.to_jsonable(),
            "differences": self.differences,
            "slope_vs_log_r": self.slope_vs_log_r,
            "oscillation_top_half": self.oscillation,
            "passed": self.passed,
        }


def _fit_slope(xs: list[float], ys: list[float]) -> float:
    a = np.vstack([np.asarray(xs), np.ones(len(xs))]).T
    sol, *_ = np.linalg.lstsq(a, np.asarray(ys), rcond=None)
    return float(sol[0])


def fmt_verify(curve: ParametrizedCurve, ideal_gens: Sequence[MVPoly],
               ideal_zeros: Sequence[Zero], r_grid: Sequence[float],
               cfg: QuadConfig | None = None, slope_tol: float = 0.05) -> FmtReport:
    """First Main Theorem at finite radius: T - N - m must not grow.

    On the compactified model the exceptional characteristic is
    T(r) = sum_i T_FS(G_i) - T_dir([G]), the proximity is
    m(r) = (1/2) mean log( prod_i (1 + |G_i|^2) / sum_i |G_i|^2 ) >= 0,
    and T - N - m is constant in r up to quadrature error.  T comes from
    area quadrature, N from the declared zeros, m from circle averages, so
    the three sides are computed independently."""
    cfg = cfg or QuadConfig()
    gens_on_curve = [expr_from_mvpoly(g, curve.components) for g in ideal_gens]
    moduli = [_zero_abs(z) for z, _ in ideal_zeros]
    grid = [nudge_radius(float(r), moduli) for r in r_grid]
    T_fs, b1, d1, _ = characteristic_on_grid(fs_sum_density(gens_on_curve), grid, cfg)
    if len(gens_on_curve) > 1:
        T_dir, b2, d2, _ = characteristic_on_grid(direction_map_density(gens_on_curve), grid, cfg)
    else:
        T_dir, b2, d2 = [0.0] * len(grid), [0.0] * len(grid), [False] * len(grid)
    T = [a - b for a, b in zip(T_fs, T_dir)]
    bounds = [x + y for x, y in zip(b1, b2)]
    diverged = [x or y for x, y in zip(d1, d2)]
    N = [counting_function(ideal_zeros, r) for r in grid]

    def m_integrand(t: np.ndarray) -> np.ndarray:
        las = [g.logabs2(t) for g in gens_on_curve]
        return 0.5 * (sum(_softplus(la) for la in las) - _logsumexp(las))

    m_vals = []
    for r in grid:
        res = circle_mean(m_integrand, r, cfg)
        m_vals.append(res.value)
    diffs = [T[i] - N[i] - m_vals[i] for i in range(len(grid))]
    logs = [math.log(r) for r in grid]
    slope = _fit_slope(logs, diffs)
    top = diffs[len(diffs) // 2:]
    osc = max(top) - min(top) if top else 0.0
    return FmtReport(
        profile=NevanlinnaProfile(grid, T, N, m_vals, bounds, diverged),
        differences=diffs, slope_vs_log_r=slope, oscillation=osc,
        passed=abs(slope) <= slope_tol,
    )


# ---------------------------------------------------------------------------
# multiplicity bookkeeping (mu = eta + nu)


@dataclass
class BookkeepingResult:
    mu: int | float
    eta: int | float
    nu: int | float
    identity_holds: bool
    eta_plus_nu_nonnegative: bool
    notes: list[str] = field(default_factory=list)

    def to_jsonable(self):
        def enc(v):
            return None if v is math.inf else v
        return {
            "mu": enc(self.mu), "eta": enc(self.eta), "nu": enc(self.nu),
            "identity_mu_eq_eta_plus_nu": self.identity_holds,
            "eta_plus_nu_nonnegative": self.eta_plus_nu_nonnegative,
            "notes": self.notes,
        }


def _expr_order(expr: Expr, t0: complex, max_order: int) -> int | float:
    if t0 == 0:
        return order_at_zero(expr, max_order)
    return order_at_point(expr, t0, max_order)


def multiplicity_bookkeeping(curve: ParametrizedCurve, v: VectorFieldGerm, t0,
                             max_order: int = 16, tol: float = 1e-7) -> BookkeepingResult:
    """Orders at t0 of f' (mu), of the reparametrization factor (eta), and
    of the coefficient ideal along the curve (nu), with the exact identity
    mu = eta + nu checked.

    Orders at t0 = 0 are exact (rational series); elsewhere they fall back
    to numeric derivative probing."""
    if curve.dim() != v.dim():
        raise ValueError("curve and germ dimension mismatch")
    z0 = t0.to_complex() if isinstance(t0, GaussRat) else complex(t0)
    derivs = curve.derivative_exprs()
    on_curve = [expr_from_mvpoly(c, curve.components) for c in v.components]
    # tangency: f_i' a_j(f) = f_j' a_i(f) for all pairs, to working order
    notes = []
    n = curve.dim()
    sample = [0.37 + 0.21j, -0.52 + 0.33j, 0.11 - 0.44j]
    for i in range(n):
        for j in range(i + 1, n):
            for s in sample:
                lhs = derivs[i].eval_complex(s) * on_curve[j].eval_complex(s)
                rhs = derivs[j].eval_complex(s) * on_curve[i].eval_complex(s)
                scale = max(1.0, abs(lhs), abs(rhs))
                if abs(lhs - rhs) > 1e-6 * scale:
                    raise NotALeaf("tangency residual %.2e at t = %s" % (abs(lhs - rhs) / scale, s))
    mu = min(_expr_order(d, z0, max_order) for d in derivs)
    nu = min(_expr_order(g, z0, max_order) for g in on_curve)
    eta: int | float = math.inf
    for i in range(n):
        oi = _expr_order(on_curve[i], z0, max_order)
        if oi is not math.inf:
            di = _expr_order(derivs[i], z0, max_order)
            eta = di - oi
            break
    if eta is math.inf:
        notes.append("all coefficient components vanish along the curve to working order")
    identity = (mu == eta + nu) if eta is not math.inf else False
    nonneg = (eta + nu >= 0) if eta is not math.inf else False
    return BookkeepingResult(mu, eta, nu, identity, nonneg, notes)


# ---------------------------------------------------------------------------
# tautological pairing


@dataclass
class TautologicalReport:
    applicable: bool
    r_grid: list[float]
    values: list[float]
    normalized: list[float]
    trend: float | None
    violation: bool
    note: str = ""

    def to_jsonable(self):
        return self.__dict__.copy()


def tautological_pairing(curve: ParametrizedCurve, r_grid: Sequence[float],
                         cfg: QuadConfig | None = None, tol: float = 1e-3) -> TautologicalReport:
    """Finite-radius pairing against the tautological bundle, normalized by
    the characteristic; reports the trend and flags nonnegativity failures
    beyond the tolerance.  Algebraic curves are NotApplicable."""
    cfg = cfg or QuadConfig()
    if curve.is_algebraic():
        return TautologicalReport(
            False, list(map(float, r_grid)), [], [], None, False,
            "curve is algebraic (polynomial components): transcendence hypothesis violated")
    derivs = curve.derivative_exprs()
    comps = curve.components

    def log_fprime_omega(t: np.ndarray) -> np.ndarray:
        rows = []
        for g, gp in zip(comps, derivs):
            rows.append(gp.logabs2(t) - 2.0 * _softplus(g.logabs2(t)))
        return _logsumexp(rows)

    mu_zeros = curve.zeros_for("fprime")
    moduli = [_zero_abs(z) for z, _ in mu_zeros]
    grid = [nudge_radius(float(r), moduli) for r in r_grid]
    t_prof = characteristic_T(curve, "fs", grid, cfg)
    one_r = nudge_radius(1.0, moduli)
    avg1 = circle_mean(log_fprime_omega, one_r, cfg)
    values, normalized = [], []
    for i, r in enumerate(grid):
        avg_r = circle_mean(log_fprime_omega, r, cfg)
        val = _annulus_counting(mu_zeros, r) - 0.5 * avg_r.value + 0.5 * avg1.value
        values.append(val)
        normalized.append(val / t_prof.T[i] if t_prof.T[i] > 0 else math.inf)
    top = normalized[len(normalized) // 2:]
    trend = min(top) if top else None
    violation = trend is not None and trend < -tol
    return TautologicalReport(True, grid, values, normalized, trend, violation)


# ---------------------------------------------------------------------------
# logarithmic derivative lemma


@dataclass
class LogDerivativeReport:
    r_grid: list[float]
    lhs: list[float]
    fit_coefficients: tuple[float, float, float]
    max_residual_top_half: float
    passed: bool

    def to_jsonable(self):
        return self.__dict__.copy()


def log_derivative_check(g: Expr, zeros: Sequence[Zero], r_grid: Sequence[float],
                         cfg: QuadConfig | None = None, residual_tol: float = 1.0) -> LogDerivativeReport:
    """Circle means of log+ |g'/g| fitted against a log T + b log r + c."""
    cfg = cfg or QuadConfig()
    gp = g.diff()
    moduli = [_zero_abs(z) for z, _ in zeros]
    grid = [nudge_radius(float(r), moduli) for r in r_grid]

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.maximum(0.0, 0.5 * (gp.logabs2(t) - g.logabs2(t)))

    lhs = [circle_mean(integrand, r, cfg).value for r in grid]
    t_prof = characteristic_on_grid(fs_sum_density([g]), grid, cfg)[0]
    rows = np.vstack([
        np.log(np.maximum(t_prof, 1e-12)),
        np.log(grid),
        np.ones(len(grid)),
    ]).T
    sol, *_ = np.linalg.lstsq(rows, np.asarray(lhs), rcond=None)
    fitted = rows @ sol
    residuals = np.abs(np.asarray(lhs) - fitted)
    top = residuals[len(grid) // 2:]
    max_res = float(top.max()) if len(top) else 0.0
    return LogDerivativeReport(
        grid, lhs, (float(sol[0]), float(sol[1]), float(sol[2])), max_res,
        max_res <= residual_tol,
    )
