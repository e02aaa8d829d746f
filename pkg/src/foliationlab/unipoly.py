"""Univariate polynomial utilities over the Gaussian rationals.

Polynomials are ascending coefficient lists.  The root finder extracts
Gaussian rational roots by the rational root theorem transported to Z[i]
(a UFD, so candidate roots are ratios of Gaussian-integer divisors of the
outer coefficients), plus the exact quadratic formula.  Anything that does
not split this way is returned as an unfactored residual; callers treat
residuals conservatively.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

from .gaussrat import GaussRat

Coeffs = list[GaussRat]

DIVISOR_NORM_CAP = 200_000


def trim(p: Coeffs) -> Coeffs:
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def degree(p: Coeffs) -> int:
    p = trim(list(p))
    return len(p) - 1


def poly_eval(p: Sequence[GaussRat], x: GaussRat) -> GaussRat:
    out = GaussRat(0)
    for c in reversed(list(p)):
        out = out * x + c
    return out


def poly_mul(p: Coeffs, q: Coeffs) -> Coeffs:
    if not p or not q:
        return []
    out = [GaussRat(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def poly_sub(p: Coeffs, q: Coeffs) -> Coeffs:
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        a = p[k] if k < len(p) else GaussRat(0)
        b = q[k] if k < len(q) else GaussRat(0)
        out.append(a - b)
    return trim(out)


def poly_divmod(p: Coeffs, q: Coeffs) -> tuple[Coeffs, Coeffs]:
    p, q = trim(list(p)), trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [GaussRat(0)] * max(0, len(p) - len(q) + 1)
    rem = list(p)
    dq, lead = len(q) - 1, q[-1]
    while len(rem) - 1 >= dq and rem:
        k = len(rem) - 1 - dq
        c = rem[-1] / lead
        quot[k] = c
        for j, b in enumerate(q):
            rem[k + j] = rem[k + j] - c * b
        rem = trim(rem)
    return trim(quot), rem


def poly_monic(p: Coeffs) -> Coeffs:
    p = trim(list(p))
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p: Coeffs, q: Coeffs) -> Coeffs:
    """Monic gcd over Q(i)."""
    a, b = trim(list(p)), trim(list(q))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def poly_derivative(p: Coeffs) -> Coeffs:
    return trim([p[k] * k for k in range(1, len(p))])


def deflate(p: Coeffs, root: GaussRat) -> Coeffs:
    """Divide by (x - root) via synthetic division; the root must be exact."""
    p = trim(list(p))
    n = len(p) - 1
    if n < 1:
        raise ValueError("cannot deflate a constant")
    q = [GaussRat(0)] * n
    q[n - 1] = p[n]
    for k in range(n - 1, 0, -1):
        q[k - 1] = p[k] + root * q[k]
    if not (p[0] + root * q[0]).is_zero():
        raise ValueError("deflation at a non-root")
    return trim(q)


# -- Gaussian integer helpers -------------------------------------------------


def _gauss_int_divisors(z: tuple[int, int], cap: int = DIVISOR_NORM_CAP) -> list[tuple[int, int]] | None:
    """All divisors of the Gaussian integer z, or None past the search cap."""
    a, b = z
    n = a * a + b * b
    if n == 0:
        return None
    if n > cap:
        return None
    divs = []
    r = isqrt(n)
    for x in range(-r, r + 1):
        ymax = isqrt(n - x * x)
        for y in range(-ymax, ymax + 1):
            m = x * x + y * y
            if m == 0 or n % m:
                continue
            # (x+iy) | (a+ib)  iff  (a+ib)(x-iy) has both parts divisible by m
            re = a * x + b * y
            im = b * x - a * y
            if re % m == 0 and im % m == 0:
                divs.append((x, y))
    return divs


def _clear_denominators(p: Coeffs) -> list[tuple[int, int]]:
    from math import lcm

    l = 1
    for c in p:
        l = lcm(l, c.re.denominator, c.im.denominator)
    return [(int(c.re * l), int(c.im * l)) for c in p]


def _candidate_roots(p: Coeffs) -> list[GaussRat] | None:
    ints = _clear_denominators(p)
    c0, cn = ints[0], ints[-1]
    d0 = _gauss_int_divisors(c0)
    dn = _gauss_int_divisors(cn)
    if d0 is None or dn is None:
        return None
    cands = []
    seen = set()
    for (a, b) in d0:
        for (c, d) in dn:
            q = GaussRat(a, b) / GaussRat(c, d)
            key = (q.re, q.im)
            if key not in seen:
                seen.add(key)
                cands.append(q)
    return cands


class RootResult:
    """Roots found over Q(i) plus any unfactored residual."""

    __slots__ = ("roots", "residual", "exhaustive")

    def __init__(self, roots: list[GaussRat], residual: Coeffs | None, exhaustive: bool):
        self.roots = roots
        self.residual = residual  # None when the polynomial split completely
        self.exhaustive = exhaustive

    def split_completely(self) -> bool:
        return self.residual is None


def gaussian_rational_roots(p: Coeffs) -> RootResult:
    """Extract Q(i)-roots with multiplicity.

    Splits completely whenever the polynomial factors into linears over
    Q(i) through rational-root candidates and the quadratic formula.  The
    residual, when present, has no Q(i) root that the bounded candidate
    search could certify (`exhaustive` records whether the search covered
    every candidate).
    """
    p = trim(list(p))
    if not p:
        raise ValueError("zero polynomial has every root")
    roots: list[GaussRat] = []
    exhaustive = True
    while not p[0] or p[0].is_zero():
        roots.append(GaussRat(0))
        p = p[1:]
    while True:
        d = len(p) - 1
        if d <= 0:
            return RootResult(roots, None, exhaustive)
        if d == 1:
            roots.append(-p[0] / p[1])
            return RootResult(roots, None, exhaustive)
        if d == 2:
            a, b, c = p[2], p[1], p[0]
            disc = b * b - 4 * a * c
            s = disc.sqrt()
            if s is None:
                return RootResult(roots, p, exhaustive)
            roots.append((-b + s) / (2 * a))
            roots.append((-b - s) / (2 * a))
            return RootResult(roots, None, exhaustive)
        cands = _candidate_roots(p)
        if cands is None:
            return RootResult(roots, p, False)
        found = None
        for cand in cands:
            if poly_eval(p, cand).is_zero():
                found = cand
                break
        if found is None:
            return RootResult(roots, p, exhaustive)
        roots.append(found)
        p = deflate(p, found)


def root_multiplicity(p: Coeffs, root: GaussRat) -> int:
    m = 0
    p = trim(list(p))
    while p and poly_eval(p, root).is_zero():
        p = deflate(p, root)
        m += 1
    return m


# -- real-rational root certificates -------------------------------------------


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def _ftrim(x: list[Fraction]) -> list[Fraction]:
    while x and x[-1] == 0:
        x = x[:-1]
    return x


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    r = _ftrim(list(a))
    while r and len(r) >= len(b):
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        for j, bc in enumerate(b):
            r[k + j] -= c * bc
        r = _ftrim(r)
    return r


def _frac_gcd_poly(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    a, b = _ftrim(list(p)), _ftrim(list(q))
    while b:
        a, b = b, _frac_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def rational_roots_fraction(p: list[Fraction]) -> list[Fraction]:
    """All rational roots of a Q-coefficient polynomial (no multiplicity)."""
    while p and p[-1] == 0:
        p = p[:-1]
    if not p or len(p) == 1:
        return []
    roots = []
    if p[0] == 0:
        roots.append(Fraction(0))
        while p and p[0] == 0:
            p = p[1:]
        if len(p) <= 1:
            return roots
    from math import lcm

    l = 1
    for c in p:
        l = lcm(l, c.denominator)
    ints = [int(c * l) for c in p]
    for num in _int_divisors(ints[0]):
        for den in _int_divisors(ints[-1]):
            for sign in (1, -1):
                cand = Fraction(sign * num, den)
                val = Fraction(0)
                for c in reversed(p):
                    val = val * cand + c
                if val == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def real_rational_roots(p: Coeffs) -> list[Fraction]:
    """Rational (real) roots of a Q(i)-coefficient polynomial.

    A rational q is a root iff it is a common root of the real and
    imaginary coefficient parts, i.e. a rational root of their gcd over Q.
    """
    p = trim(list(p))
    if not p:
        raise ValueError("zero polynomial")
    re = [c.re for c in p]
    im = [c.im for c in p]
    if all(v == 0 for v in im):
        target = re
    elif all(v == 0 for v in re):
        target = im
    else:
        target = _frac_gcd_poly(re, im)
        if len(target) <= 1:
            return []
    return rational_roots_fraction(list(target))


def has_positive_rational_root(p: Coeffs) -> bool:
    return any(r > 0 for r in real_rational_roots(p))
