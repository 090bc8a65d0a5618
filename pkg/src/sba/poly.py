"""Sparse multivariate polynomials over Q(i).

Used for parameter families (automorphisms, r-matrix solution spaces,
quadratic residuals).  Not a general CAS: no factoring beyond pulling out
monomial content, no Groebner bases.  Negative exponents are allowed for
variables known to be nonzero (Laurent monomials); dividing by a monomial
is ``p * m**-1``.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

from .scalars import GaussianRational, ONE, ZERO, format_scalar

Monomial = Tuple[Tuple[str, int], ...]

__all__ = ["Poly", "var", "const", "Monomial"]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: Dict[Monomial, GaussianRational] = {}
        for m, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[m] = clean.get(m, ZERO) + c
                if not clean[m]:
                    del clean[m]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def lift(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        c = GaussianRational.coerce(x)
        if c is NotImplemented:
            raise TypeError(f"cannot lift {x!r} to Poly")
        return Poly({(): c})

    # ring operations --------------------------------------------------
    def __add__(self, other):
        try:
            o = Poly.lift(other)
        except TypeError:
            return NotImplemented
        d = dict(self.terms)
        for m, c in o.terms.items():
            d[m] = d.get(m, ZERO) + c
        return Poly(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = Poly.lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        try:
            o = Poly.lift(other)
        except TypeError:
            return NotImplemented
        d: Dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, ZERO) + c1 * c2
        return Poly(d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = GaussianRational.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        inv = c.inverse()
        return Poly({m: v * inv for m, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            # Laurent monomials only: c*m -> c^-1 * m^-1
            if len(self.terms) != 1:
                raise ValueError("negative powers need a monomial")
            (m, c), = self.terms.items()
            base = Poly({tuple((v, -e) for v, e in m): c.inverse()})
            return base ** (-n)
        out = Poly.lift(ONE)
        for _ in range(n):
            out = out * self
        return out

    # queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            o = Poly.lift(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute variables by scalars or polynomials."""
        out = Poly()
        cache: Dict[Tuple[str, int], Poly] = {}
        for m, c in self.terms.items():
            term = Poly({(): c})
            rest = []
            for v, e in m:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = Poly.lift(values[v]) ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly({tuple(rest): ONE})
            out = out + term
        return out

    def reduce_signs(self, names: Iterable[str]) -> "Poly":
        """Use v^2 = 1 for each v in ``names`` (parameters valued in {1, -1})."""
        names = set(names)
        d: Dict[Monomial, GaussianRational] = {}
        for m, c in self.terms.items():
            m2 = tuple((v, e % 2 if v in names else e) for v, e in m)
            m2 = tuple((v, e) for v, e in m2 if e)
            d[m2] = d.get(m2, ZERO) + c
        return Poly(d)

    def evaluate(self, values: Mapping[str, object]) -> GaussianRational:
        return self.subs(values).constant_value()

    def linear_in(self, v: str):
        """Return (a, b) with self = a*v + b if self is affine in v, else None."""
        a, b = {}, {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e == 0:
                b[m] = c
            elif e == 1:
                a[tuple((w, k) for w, k in m if w != v)] = c
            else:
                return None
        return Poly(a), Poly(b)

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            return ()
        it = iter(self.terms)
        common = dict(next(it))
        for m in it:
            md = dict(m)
            for v in list(common):
                common[v] = min(common[v], md.get(v, 0))
                if common[v] == 0:
                    del common[v]
        return tuple(sorted(common.items()))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"

        def key(item):
            m, _ = item
            return (-_mono_degree(m), m)

        parts = []
        for m, c in sorted(self.terms.items(), key=key):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(format_scalar(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                cs = format_scalar(c)
                if "+" in cs or ("-" in cs[1:]):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def var(name: str) -> Poly:
    return Poly({((name, 1),): ONE})


def const(c) -> Poly:
    return Poly.lift(c)


def poly_iter_coeffs(p: Poly) -> Iterable[GaussianRational]:
    return p.terms.values()
