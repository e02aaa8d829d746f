"""Adaptive quadrature for circle means and radial characteristics.

Circle means use the periodic trapezoid rule with doubling; the
a-posteriori bound is the last refinement delta.  Radial integrals use
composite Simpson on segment grids whose breakpoints include every radius
of interest, again with doubling.  A global evaluation budget can be
capped through the FOLIATION_LAB_BUDGET environment variable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np


def _env_budget() -> int:
    try:
        return int(os.environ.get("FOLIATION_LAB_BUDGET", ""))
    except ValueError:
        return 1 << 24


@dataclass
class QuadConfig:
    tol: float = 1e-8
    min_circle_points: int = 64
    max_circle_points: int = 1 << 16
    radial_min_intervals: int = 64
    radial_max_intervals: int = 1 << 13
    budget: int = 0

    def __post_init__(self):
        if self.budget <= 0:
            self.budget = _env_budget()


@dataclass
class QuadResult:
    value: float
    error_bound: float
    evaluations: int
    converged: bool


class ZeroOnCircle(Exception):
    pass


def nudge_radius(r: float, zero_moduli, tol: float = 1e-9, bump: float = 1e-6) -> float:
    """Deterministically shift a radius off declared zero moduli."""
    moduli = sorted(float(m) for m in zero_moduli)
    out = float(r)
    for _ in range(64):
        if all(abs(out - m) > tol * max(1.0, out) for m in moduli):
            return out
        out *= 1.0 + bump
    return out


def circle_mean(fn, r: float, cfg: QuadConfig) -> QuadResult:
    """Mean over the circle |t| = r of a real-valued integrand.

    `fn(t_array) -> float array`; the trapezoid rule on a periodic domain
    doubles until two refinements agree to tolerance."""
    n = cfg.min_circle_points
    evals = 0
    theta = 2.0 * math.pi * np.arange(n) / n
    vals = fn(r * np.exp(1j * theta))
    evals += n
    mean = float(np.mean(vals))
    bound = math.inf
    while n < cfg.max_circle_points and evals + n <= cfg.budget:
        theta_new = 2.0 * math.pi * (np.arange(n) + 0.5) / n
        vals_new = fn(r * np.exp(1j * theta_new))
        evals += n
        mean_new = 0.5 * (mean + float(np.mean(vals_new)))
        bound = abs(mean_new - mean)
        mean = mean_new
        n *= 2
        if bound <= cfg.tol * max(1.0, abs(mean)):
            return QuadResult(mean, bound, evals, True)
    return QuadResult(mean, bound, evals, bound <= cfg.tol * max(1.0, abs(mean)))


def _simpson(ys: np.ndarray, h: float) -> float:
    return float(h / 3.0 * (ys[0] + ys[-1] + 4.0 * ys[1:-1:2].sum() + 2.0 * ys[2:-2:2].sum()))


def radial_integral(fn, a: float, b: float, cfg: QuadConfig, min_intervals: int | None = None) -> QuadResult:
    """Composite Simpson of fn on [a, b] with doubling refinement."""
    if b <= a:
        return QuadResult(0.0, 0.0, 0, True)
    n = min_intervals or cfg.radial_min_intervals
    evals = 0
    prev = None
    value = 0.0
    bound = math.inf
    while n <= cfg.radial_max_intervals:
        xs = np.linspace(a, b, n + 1)
        ys = fn(xs)
        evals += n + 1
        value = _simpson(ys, (b - a) / n)
        if prev is not None:
            bound = abs(value - prev)
            if bound <= cfg.tol * max(1.0, abs(value)):
                return QuadResult(value, bound, evals, True)
        prev = value
        n *= 2
        if evals > cfg.budget:
            break
    return QuadResult(value, bound, evals, False)
