"""Exact Gaussian rationals.

All coefficients in the library are elements of Q(i): a pair of exact
rationals.  The parts are gmpy2 ``mpq`` values when gmpy2 is installed and
``fractions.Fraction`` otherwise; both compare and hash like Fraction.
Nothing here ever rounds.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

__all__ = ["Scalar", "ZERO", "ONE", "as_scalar", "parse_scalar"]


class Scalar:
    """A Gaussian rational ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            re, im = re.re, re.im + Q(im)
        self.re = Q(re)
        self.im = Q(im)

    # construction helpers -------------------------------------------

    @staticmethod
    def _new(re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(Scalar)
        s.re = re
        s.im = im
        return s

    # arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Scalar._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.im and not other.im:
            return Scalar._new(self.re * other.re, self.im)
        return Scalar._new(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._new(1 / self.re, self.im)
        norm = self.re * self.re + self.im * self.im
        return Scalar._new(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def conjugate(self) -> "Scalar":
        return Scalar._new(self.re, -self.im)

    # comparison -----------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # text -----------------------------------------------------------

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)} i"

    def __repr__(self):
        return f"Scalar('{self}')"


_Q0 = Q(0)
ZERO = Scalar()
ONE = Scalar(1)

_SCALAR_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)"
    r"(?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i)?\s*$"
)
_IMAG_RE = re.compile(r"^\s*(?P<im>[+-]?\d+(?:/\d+)?)\s*i\s*$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"p/q+r/s i"`` or ``"r/s i"``."""
    m = _SCALAR_RE.match(text)
    if m:
        re_part = Fraction(m["re"])
        im_part = Fraction(m["im"]) if m["im"] else Fraction(0)
        if m["sign"] == "-":
            im_part = -im_part
        return Scalar._new(Q(re_part), Q(im_part))
    m = _IMAG_RE.match(text)
    if m:
        return Scalar._new(Q(0), Q(Fraction(m["im"])))
    raise ValueError(f"not a scalar: {text!r}")


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar._new(Q(x), _Q0)
    if isinstance(x, complex):
        return NotImplemented
    return NotImplemented


def as_scalar(x) -> Scalar:
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s
