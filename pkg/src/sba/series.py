"""Truncated power series in the deformation parameter lambda.

A :class:`LambdaSeries` keeps the coefficients of lambda^0 .. lambda^N and
drops everything above N.  Coefficients are Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, List, Sequence

__all__ = ["LambdaSeries", "exp_coeffs", "sinh_over_lambda", "one_minus_exp_over_2lambda"]


class LambdaSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int):
        c = [Fraction(x) for x in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.coeffs: List[Fraction] = c

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "LambdaSeries":
        return cls([c], order)

    @classmethod
    def monomial(cls, c, power: int, order: int) -> "LambdaSeries":
        return cls([0] * power + [c], order)

    def __add__(self, other: "LambdaSeries") -> "LambdaSeries":
        return LambdaSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "LambdaSeries") -> "LambdaSeries":
        return LambdaSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self) -> "LambdaSeries":
        return LambdaSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other) -> "LambdaSeries":
        if not isinstance(other, LambdaSeries):
            return LambdaSeries([a * other for a in self.coeffs], self.order)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return LambdaSeries(out, n)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaSeries) and self.coeffs == other.coeffs

    def first_nonzero(self) -> int:
        """Lowest order with a nonzero coefficient, or -1."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __repr__(self) -> str:
        terms = [f"{c}*l^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


# Expansions of the H-dependent functions: each returns pairs (lambda power,
# H power, coefficient) with lambda power <= order.

def exp_coeffs(scale: Fraction, order: int, extra_h: int = 0):
    """exp(scale * lambda * H) * H^extra_h = sum (scale^n / n!) lambda^n H^(n + extra_h)."""
    return [(n, n + extra_h, Fraction(scale) ** n / factorial(n)) for n in range(order + 1)]


def sinh_over_lambda(order: int):
    """sinh(lambda H) / lambda = sum lambda^(2m) H^(2m+1) / (2m+1)!."""
    return [(2 * m, 2 * m + 1, Fraction(1, factorial(2 * m + 1)))
            for m in range(order // 2 + 1)]


def one_minus_exp_over_2lambda(order: int):
    """(1 - exp(-2 lambda H)) / (2 lambda) = sum_{n>=1} (-1)^(n+1) 2^(n-1) lambda^(n-1) H^n / n!."""
    return [(n - 1, n, Fraction((-1) ** (n + 1) * 2 ** (n - 1), factorial(n)))
            for n in range(1, order + 2)]
