"""Exact Gaussian rational arithmetic.

Numbers a + b*i with a, b rational, kept exact through every field
operation.  This is the coefficient field for all symbolic work in the
package; floats only appear as numeric shadows via ``to_complex``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Scalar = Union[int, Fraction, "GaussRat"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %s" % type(x).__name__)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class GaussRat:
    """Immutable Gaussian rational a + b*i."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def coerce(x: Scalar) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        return GaussRat(_frac(x))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_positive_rational(self) -> bool:
        """Strictly positive and real (the Q+ membership test)."""
        return not self.im and self.re > 0

    # -- arithmetic ---------------------------------------------------------

    _COERCIBLE = (int, Fraction)

    def __add__(self, other):
        if not isinstance(other, (GaussRat,) + GaussRat._COERCIBLE):
            return NotImplemented
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (GaussRat,) + GaussRat._COERCIBLE):
            return NotImplemented
        return self + (-GaussRat.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (GaussRat,) + GaussRat._COERCIBLE):
            return NotImplemented
        return GaussRat.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (GaussRat,) + GaussRat._COERCIBLE):
            return NotImplemented
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out, base = GaussRat(1), self
        while k:
            if k & 1:
                out = out * base
            base, k = base * base, k >> 1
        return out

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def sqrt(self) -> "GaussRat | None":
        """Exact square root inside Q(i), or None when it does not exist."""
        if self.is_zero():
            return GaussRat(0)
        n = rational_sqrt(self.abs2())
        if n is None:
            return None
        if not self.im:
            if self.re > 0:
                r = rational_sqrt(self.re)
                return GaussRat(r) if r is not None else None
            r = rational_sqrt(-self.re)
            return GaussRat(0, r) if r is not None else None
        x2 = (self.re + n) / 2
        x = rational_sqrt(x2)
        if x is None or x == 0:
            return None
        return GaussRat(x, self.im / (2 * x))

    # -- conversions and protocol ------------------------------------------

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            o = GaussRat.coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return "GaussRat(%s, %s)" % (self.re, self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return "%s*i" % self.im
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        istr = "i" if mag == 1 else "%s*i" % mag
        return "%s%s%s" % (self.re, sign, istr)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
