"""Exact scalars: Gaussian rationals a + b i with a, b rational.

Rationals are plain :class:`fractions.Fraction`.  Everything here is
immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

__all__ = [
    "GaussianRational", "G", "ZERO", "ONE", "I",
    "parse_scalar", "format_scalar",
]

Number = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating point scalars are not accepted")
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"G({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def G(x=0, im=0) -> GaussianRational:
    """Shorthand constructor; strings go through :func:`parse_scalar`."""
    if isinstance(x, str):
        return parse_scalar(x)
    return GaussianRational(x, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


_TERM = re.compile(r"[+-]?[^+-]+")


def _parse_real(tok: str, text: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed scalar {text!r}") from exc


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``a/b``, ``a/b+c/d*i``, ``i``, ``-i``, ``3i``, ``-1/4*i``.

    Whitespace is ignored.
    """
    s = "".join(str(text).split())
    if not s:
        raise ValueError("empty scalar")
    # keep exponent-free grammar: split on +/- not preceded by '/' or '*'
    terms = _TERM.findall(s)
    if "".join(terms) != s:
        raise ValueError(f"malformed scalar {text!r}")
    re_part = Fraction(0)
    im_part = Fraction(0)
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if not body:
            raise ValueError(f"malformed scalar {text!r}")
        if body.endswith("i") or body.startswith("i*"):
            if body == "i":
                val = Fraction(1)
            elif body.startswith("i*"):
                val = _parse_real(body[2:], text)
            else:
                coef = body[:-1]
                if coef.endswith("*"):
                    coef = coef[:-1]
                val = _parse_real(coef, text)
            im_part += sign * val
        else:
            re_part += sign * _parse_real(body, text)
    return GaussianRational(re_part, im_part)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(z) -> str:
    """Inverse of :func:`parse_scalar` (canonical form)."""
    z = GaussianRational.coerce(z)
    if z.im == 0:
        return _frac_str(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = f"{_frac_str(z.im)}*i"
    if z.re == 0:
        return im
    if im.startswith("-"):
        return f"{_frac_str(z.re)}{im}"
    return f"{_frac_str(z.re)}+{im}"

