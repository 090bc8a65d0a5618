"""Polynomial superfunctions on the phase superspace R^{4|4}.

Coordinates are q1, q2, p1, p2 (even) and xi1, xi2, pi1, pi2 (odd).  A
:class:`SuperFunction` is a sum of monomials

    coefficient * q1^a q2^b p1^c p2^d * (ordered product of odd coordinates)

with truncated lambda-series coefficients.  The odd factors are kept in
the fixed order xi1 < xi2 < pi1 < pi2; a product that repeats an odd
coordinate vanishes.  Functions of lambda such as sinh(lambda q1 p2) only
ever enter through their series, so everything stays polynomial order by
order.

The graded Poisson bracket uses left derivatives:

    {F, G} = sum_mu (dF/dq^mu dG/dp_mu - dF/dp_mu dG/dq^mu)
             - (-1)^|F| sum_a (dF/dxi^a dG/dpi_a + dF/dpi_a dG/dxi^a)
"""

from __future__ import annotations

import ast
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .hopf import GENERATORS, PROP4, HopfDeformation, UElem, _supercommutator, normal_form
from .report import CheckResult, failed, passed
from .series import LambdaSeries, sinh_over_lambda

__all__ = [
    "BOSONS", "FERMIONS", "SuperFunction", "Realization", "poisson_bracket",
    "UNDEFORMED", "realization", "printed_h_image", "check_printed_h", "check_realization_closure",
    "casimir_realized", "check_involution", "check_canonical_brackets",
    "hamiltonian", "substitute", "polynomial_of", "random_function",
]

BOSONS = ("q1", "q2", "p1", "p2")
FERMIONS = ("xi1", "xi2", "pi1", "pi2")
_B = {n: i for i, n in enumerate(BOSONS)}
_F = {n: i for i, n in enumerate(FERMIONS)}
# conjugate pairs (q^mu, p_mu) and (xi^a, pi_a) by index
_BPAIRS = ((0, 2), (1, 3))
_FPAIRS = ((0, 2), (1, 3))

Key = Tuple[Tuple[int, int, int, int], Tuple[int, ...]]
_ZERO_E = (0, 0, 0, 0)


def _merge(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Sign and sorted product of two ordered odd monomials (None if it vanishes)."""
    if set(a) & set(b):
        return 1, None
    # moving each factor of b left past the larger factors of a
    inv = sum(1 for x in a for y in b if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


@dataclass
class SuperFunction:
    order: int = 0
    terms: Dict[Key, LambdaSeries] = field(default_factory=dict)

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, order: int = 0) -> "SuperFunction":
        return cls(order)

    @classmethod
    def constant(cls, c, order: int = 0) -> "SuperFunction":
        return cls.monomial(c, order=order)

    @classmethod
    def monomial(cls, c=1, exps=_ZERO_E, odd: Sequence[int] = (), order: int = 0,
                 lam: int = 0) -> "SuperFunction":
        out = cls(order)
        odd_sorted = tuple(sorted(odd))
        if len(set(odd_sorted)) != len(odd_sorted):
            return out
        # sign of sorting the odd factors
        inv = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
        c = Fraction(c) * (-1 if inv % 2 else 1)
        if lam <= order:
            out.add_term((tuple(exps), odd_sorted), LambdaSeries.monomial(c, lam, order))
        return out

    @classmethod
    def var(cls, name: str, order: int = 0) -> "SuperFunction":
        if name in _B:
            e = [0, 0, 0, 0]
            e[_B[name]] = 1
            return cls.monomial(1, tuple(e), (), order)
        if name in _F:
            return cls.monomial(1, _ZERO_E, (_F[name],), order)
        raise ValueError(f"unknown coordinate {name!r}")

    @classmethod
    def parse(cls, text: str, order: int = 0) -> "SuperFunction":
        """Parse ``2*q1^2*p2^2 - 2*q1*p2*xi1*pi2``; ``lam`` is the deformation parameter."""
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _walk(tree.body, order)

    def add_term(self, key: Key, s: LambdaSeries) -> None:
        if key in self.terms:
            s = self.terms[key] + s
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def with_order(self, order: int) -> "SuperFunction":
        out = SuperFunction(order)
        for k, s in self.terms.items():
            out.add_term(k, LambdaSeries(s.coeffs, order))
        return out

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other) -> "SuperFunction":
        if isinstance(other, SuperFunction):
            if other.order != self.order:
                raise ValueError(f"series orders differ: {self.order} vs {other.order}")
            return other
        return SuperFunction.constant(other, self.order)

    def __add__(self, other) -> "SuperFunction":
        other = self._lift(other)
        out = SuperFunction(self.order, dict(self.terms))
        for k, s in other.terms.items():
            out.add_term(k, s)
        return out

    __radd__ = __add__

    def __neg__(self) -> "SuperFunction":
        return SuperFunction(self.order, {k: -s for k, s in self.terms.items()})

    def __sub__(self, other) -> "SuperFunction":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "SuperFunction":
        return self._lift(other) - self

    def __mul__(self, other) -> "SuperFunction":
        if not isinstance(other, SuperFunction):
            c = Fraction(other)
            return SuperFunction(self.order, {k: s * c for k, s in self.terms.items()} if c else {})
        other = self._lift(other)
        out = SuperFunction(self.order)
        for (e1, o1), s1 in self.terms.items():
            for (e2, o2), s2 in other.terms.items():
                sign, o = _merge(o1, o2)
                if o is None:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                s = s1 * s2
                out.add_term((e, o), s if sign > 0 else -s)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SuperFunction":
        out = SuperFunction.constant(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    def times_lambda(self, k: int = 1) -> "SuperFunction":
        return self * SuperFunction.monomial(1, order=self.order, lam=k)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperFunction):
            other = SuperFunction.constant(other, self.order)
        return self.order == other.order and self.terms == other.terms

    # -- grading ------------------------------------------------------
    def parity(self) -> Optional[int]:
        """0 or 1 for a homogeneous function, None if mixed (zero counts as even)."""
        ps = {len(o) % 2 for _, o in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def split_parity(self) -> Tuple["SuperFunction", "SuperFunction"]:
        even = SuperFunction(self.order, {k: s for k, s in self.terms.items() if len(k[1]) % 2 == 0})
        odd = SuperFunction(self.order, {k: s for k, s in self.terms.items() if len(k[1]) % 2})
        return even, odd

    # -- derivatives --------------------------------------------------
    def d_even(self, i: int) -> "SuperFunction":
        out = SuperFunction(self.order)
        for (e, o), s in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out.add_term((tuple(e2), o), s * e[i])
        return out

    def d_odd(self, a: int) -> "SuperFunction":
        """Left derivative: bring the factor to the front, then strip it."""
        out = SuperFunction(self.order)
        for (e, o), s in self.terms.items():
            if a in o:
                pos = o.index(a)
                o2 = o[:pos] + o[pos + 1:]
                out.add_term((e, o2), s if pos % 2 == 0 else -s)
        return out

    def d(self, name: str) -> "SuperFunction":
        return self.d_even(_B[name]) if name in _B else self.d_odd(_F[name])

    # -- views --------------------------------------------------------
    def slice(self, n: int) -> "SuperFunction":
        """The lambda^n coefficient, as an order-0 function."""
        out = SuperFunction(0)
        for k, s in self.terms.items():
            if s.coeffs[n]:
                out.add_term(k, LambdaSeries.constant(s.coeffs[n], 0))
        return out

    def first_failure(self):
        """(lambda order, monomial text, coefficient) of the lowest nonzero term."""
        best = None
        for k, s in sorted(self.terms.items()):
            o = s.first_nonzero()
            if o >= 0 and (best is None or o < best[0]):
                best = (o, _mono_text(k), s.coeffs[o])
        return best

    def format(self) -> str:
        if not self.terms:
            return "0"
        if self.order == 0:
            return _format_slice({k: s.coeffs[0] for k, s in self.terms.items()})
        parts = []
        for n in range(self.order + 1):
            sl = {k: s.coeffs[n] for k, s in self.terms.items() if s.coeffs[n]}
            if sl:
                tag = "" if n == 0 else (" lam" if n == 1 else f" lam^{n}")
                parts.append(f"[{_format_slice(sl)}]{tag}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()


def _mono_text(key: Key) -> str:
    e, o = key
    parts = []
    for name, k in zip(BOSONS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    parts += [FERMIONS[a] for a in o]
    return "*".join(parts) or "1"


def _sort_key(key: Key):
    e, o = key
    return (-sum(e) - len(o), tuple(-x for x in e), o)


def _format_slice(coeffs: Dict[Key, Fraction]) -> str:
    out = ""
    for key in sorted(coeffs, key=_sort_key):
        c = coeffs[key]
        mono = _mono_text(key)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def _walk(node, order: int) -> SuperFunction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return SuperFunction.constant(node.value, order)
    if isinstance(node, ast.Name):
        if node.id == "lam":
            return SuperFunction.monomial(1, order=order, lam=1)
        return SuperFunction.var(node.id, order)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _walk(node.operand, order)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _walk(node.left, order)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponent must be a non-negative integer")
            return left ** node.right.value
        right = _walk(node.right, order)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            s = right.terms.get((_ZERO_E, ()))
            if len(right.terms) != 1 or s is None or any(s.coeffs[1:]) or not s.coeffs[0]:
                raise ValueError("division only by a nonzero constant")
            return left * (1 / s.coeffs[0])
    raise ValueError(f"unsupported syntax in superfunction: {ast.dump(node)[:40]}")


# ----------------------------------------------------------------------
# bracket

def poisson_bracket(F: SuperFunction, G: SuperFunction) -> SuperFunction:
    """Graded Poisson bracket; mixed-parity F is split and the parts summed."""
    pf = F.parity()
    if pf is None:
        even, odd = F.split_parity()
        return poisson_bracket(even, G) + poisson_bracket(odd, G)
    out = SuperFunction(F.order)
    for q, p in _BPAIRS:
        out = out + F.d_even(q) * G.d_even(p) - F.d_even(p) * G.d_even(q)
    ferm = SuperFunction(F.order)
    for xi, pi in _FPAIRS:
        ferm = ferm + F.d_odd(xi) * G.d_odd(pi) + F.d_odd(pi) * G.d_odd(xi)
    return out + ferm if pf else out - ferm


def check_canonical_brackets() -> List[CheckResult]:
    """{q^mu, p_nu} = -{p_nu, q^mu} = delta, {xi^a, pi_b} = {pi_b, xi^a} = delta,
    all other pairs of coordinates zero."""
    names = BOSONS + FERMIONS
    expected: Dict[Tuple[str, str], int] = {}
    for mu in "12":
        expected[(f"q{mu}", f"p{mu}")] = 1
        expected[(f"p{mu}", f"q{mu}")] = -1
        expected[(f"xi{mu}", f"pi{mu}")] = 1
        expected[(f"pi{mu}", f"xi{mu}")] = 1
    bad = []
    for a, b in product(names, names):
        got = poisson_bracket(SuperFunction.var(a), SuperFunction.var(b))
        if got != SuperFunction.constant(expected.get((a, b), 0)):
            bad.append((a, b, got.format()))
    name = "canonical graded Poisson brackets"
    anchor = "{q,p} = -{p,q} = 1, {xi,pi} = {pi,xi} = 1, others 0"
    if bad:
        return [failed(name, anchor, bad[0][:2], detail=f"got {bad[0][2]}")]
    return [passed(name, anchor, detail=f"{len(names) ** 2} pairs")]


# ----------------------------------------------------------------------
# realizations

@dataclass
class Realization:
    name: str
    images: Dict[str, SuperFunction]
    deformed: bool = False
    relations: Optional[HopfDeformation] = None

    def __post_init__(self):
        for g, f in self.images.items():
            want = sum(GENERATORS[g][2:]) % 2
            if f.parity() not in (want,) and f:
                raise ValueError(f"image of {g} has parity {f.parity()}, expected {want}")

    @property
    def order(self) -> int:
        return next(iter(self.images.values())).order

    def __getitem__(self, g: str) -> SuperFunction:
        return self.images[g]

    def format(self) -> str:
        return "\n".join(f"S({g}) = {self.images[g].format()}" for g in GENERATORS)


def _v(name: str, order: int) -> SuperFunction:
    return SuperFunction.var(name, order)


def _undeformed(order: int = 0) -> Realization:
    q1, q2, p2, xi1, pi1, pi2 = (_v(n, order) for n in ("q1", "q2", "p2", "xi1", "pi1", "pi2"))
    half = Fraction(1, 2)
    return Realization("undeformed", {
        "Z": -q1 * p2 - xi1 * pi2,
        "H": -q1 * p2 + xi1 * pi2,
        "Q+": q1 * pi2,
        "Q-": -xi1 * p2 + half * (q1 * pi1 + q2 * pi2),
    })


def _series_in(u: SuperFunction, terms: Iterable[Tuple[int, int, Fraction]]) -> SuperFunction:
    """sum c lambda^lp u^up over (lp, up, c) with lp <= order."""
    out = SuperFunction(u.order)
    powers = {0: SuperFunction.constant(1, u.order)}
    for lp, up, c in terms:
        if lp > u.order:
            continue
        if up not in powers:
            top = max(powers)
            acc = powers[top]
            for k in range(top + 1, up + 1):
                acc = acc * u
                powers[k] = acc
        out = out + (powers[up] * c).times_lambda(lp)
    return out


def _sinh_terms(order: int):
    # sinh(lambda u)/(lambda u) = sum lambda^(2m) u^(2m) / (2m+1)!
    return [(lp, hp - 1, c) for lp, hp, c in sinh_over_lambda(order)]


def _cosh_terms(order: int):
    from math import factorial
    return [(2 * m, 2 * m, Fraction(1, factorial(2 * m))) for m in range(order // 2 + 1)]


def _deformed(order: int, printed: bool = False) -> Realization:
    """The deformed realization.

    As printed, the image of H is -(1/lambda) sinh(lambda u) + xi1 pi2 cosh(lambda u)
    with u = q1 p2.  That function is sinh(lambda h)/lambda for the undeformed
    image h = -u + xi1 pi2, and the odd bracket closes onto it:
    {S(Q-), S(Q-)} = sinh(lambda h)/lambda.  So the deformed relations hold
    with H sent to h, and the printed function is the image of
    sinh(lambda H)/lambda.  ``printed=True`` keeps the printed image of H.
    """
    q1, q2, p2, xi1, pi1, pi2 = (_v(n, order) for n in ("q1", "q2", "p2", "xi1", "pi1", "pi2"))
    half = Fraction(1, 2)
    u = q1 * p2
    shc = _series_in(u, _sinh_terms(order))       # sinh(lambda u)/(lambda u)
    ch = _series_in(u, _cosh_terms(order))        # cosh(lambda u)
    h_printed = -u * shc + xi1 * pi2 * ch
    images = {
        "Z": -q1 * p2 - xi1 * pi2,
        "H": h_printed if printed else -q1 * p2 + xi1 * pi2,
        "Q+": q1 * pi2,
        # -(xi1/(lambda q1)) sinh(lambda u) + (q1 pi1 + q2 pi2)/2
        "Q-": -xi1 * p2 * shc + half * (q1 * pi1 + q2 * pi2),
    }
    name = "deformed (as printed)" if printed else "deformed"
    return Realization(name, images, deformed=True, relations=PROP4)


def printed_h_image(order: int) -> SuperFunction:
    """-(1/lambda) sinh(lambda q1 p2) + xi1 pi2 cosh(lambda q1 p2), to the given order."""
    return _deformed(order, printed=True)["H"]


UNDEFORMED = _undeformed()


def realization(deformed: bool = False, order: int = 6, printed: bool = False) -> Realization:
    return _deformed(order, printed) if deformed else _undeformed()


def check_printed_h(order: int = 6) -> List[CheckResult]:
    """The printed image of H equals the image of sinh(lambda H)/lambda."""
    R = realization(True, order)
    sinh_h = _series_in(R["H"], sinh_over_lambda(order))
    diff = printed_h_image(order) - sinh_h
    name = "printed S(H) = sinh(lambda h)/lambda, h = -q1 p2 + xi1 pi2"
    anchor = f"to lambda^{order}"
    if diff:
        return [failed(name, anchor, diff.first_failure(), detail=diff.format())]
    return [passed(name, anchor)]


# ----------------------------------------------------------------------
# substitution of enveloping-algebra elements

def substitute(x: UElem, R: Realization) -> SuperFunction:
    """Replace Z, H, Q+, Q- by their images in a rank-1 normal-ordered element."""
    order = min(x.order, R.order) if R.deformed else x.order
    imgs = {g: f.with_order(order) for g, f in R.images.items()}
    out = SuperFunction(order)
    cache: Dict[Tuple[str, int], SuperFunction] = {}

    def pw(g: str, k: int) -> SuperFunction:
        if (g, k) not in cache:
            cache[(g, k)] = imgs[g] ** k
        return cache[(g, k)]

    for (m,), s in x.terms.items():
        f = pw("Z", m[0]) * pw("H", m[1]) * pw("Q+", m[2]) * pw("Q-", m[3])
        coeff = SuperFunction(order, {(_ZERO_E, ()): LambdaSeries(s.coeffs, order)})
        out = out + coeff * f
    return out


def _target(R: Realization, a: str, b: str, order: int) -> SuperFunction:
    """Image of the supercommutator [a, b} of the relations the realization targets."""
    if R.relations is None:
        # undeformed real form: [Z, Q-] = Q+, {Q-, Q-} = H, the rest zero
        table = {("Z", "Q-"): R["Q+"], ("Q-", "Z"): -R["Q+"], ("Q-", "Q-"): R["H"]}
        return table.get((a, b), SuperFunction(R.order))
    d = R.relations
    x, y = normal_form([a], d, order), normal_form([b], d, order)
    pa, pb = sum(GENERATORS[a][2:]) % 2, sum(GENERATORS[b][2:]) % 2
    return substitute(_supercommutator(d, x, y, pa, pb), R)


def check_realization_closure(R: Realization, order: Optional[int] = None) -> List[CheckResult]:
    """{S(X), S(Y)} equals the image of the algebra bracket for every generator pair.

    Undeformed: the real-form (C3+A) relations, exactly.  Deformed: the
    relations of the deformation attached to ``R``, order by order in lambda.
    """
    order = R.order if order is None else order
    out = []
    for a, b in product(GENERATORS, GENERATORS):
        lhs = poisson_bracket(R[a].with_order(order), R[b].with_order(order))
        rhs = _target(R, a, b, order).with_order(order)
        diff = lhs - rhs
        name = f"{R.name} realization: {{S({a}), S({b})}}"
        anchor = "closes the quantum relations" if R.deformed else "closes (C3+A)"
        if diff:
            out.append(failed(name, anchor, diff.first_failure(), detail=f"residual {diff.format()}"))
        else:
            out.append(passed(name, anchor, detail=f"= {rhs.format()}"
                              + (f" (to lambda^{order})" if R.deformed else "")))
    return out


# ----------------------------------------------------------------------
# Casimir and Hamiltonians

def polynomial_of(F: SuperFunction, coeffs: Sequence) -> SuperFunction:
    """sum_k coeffs[k] F^k, the polynomial class used for the free function of S(H)."""
    out = SuperFunction(F.order)
    acc = SuperFunction.constant(1, F.order)
    for c in coeffs:
        if c:
            out = out + acc * Fraction(c)
        acc = acc * F
    return out


def casimir_realized(R: Realization, terms: Optional[list] = None,
                     order: Optional[int] = None) -> SuperFunction:
    """Substitute the realization into a Casimir given as (lambda power, coefficient, mono).

    Default: 2(Z H - Q+ Q-) for the undeformed realization and
    2(Z sinh(lambda H)/lambda - Q+ Q-) for the deformed one.
    """
    if order is None:
        order = R.order
    if terms is None:
        terms = PROP4.casimir(order) if R.deformed else [(0, 2, (1, 1, 0, 0)), (0, -2, (0, 0, 1, 1))]
    out = SuperFunction(order)
    imgs = {g: f.with_order(order) for g, f in R.images.items()}
    for lp, c, m in terms:
        if lp > order:
            continue
        f = imgs["Z"] ** m[0] * imgs["H"] ** m[1] * imgs["Q+"] ** m[2] * imgs["Q-"] ** m[3]
        out = out + (f * Fraction(c)).times_lambda(lp)
    return out


def hamiltonian(R: Realization, free: Sequence = (0, 0, 1), order: Optional[int] = None) -> SuperFunction:
    """S(C) + F(S(H)) with F the polynomial sum_k free[k] u^k (default u^2)."""
    order = R.order if order is None else order
    return casimir_realized(R, order=order) + polynomial_of(R["H"].with_order(order), free)


def check_involution(H: SuperFunction, conserved: Dict[str, SuperFunction],
                     label: str = "H") -> List[CheckResult]:
    """{H, c} = 0 for every listed c (per lambda order up to the series order)."""
    out = []
    for name, c in conserved.items():
        br = poisson_bracket(H, c.with_order(H.order))
        check = f"{{{label}, {name}}} = 0"
        anchor = "in involution"
        if br:
            out.append(failed(check, anchor, br.first_failure(), detail=br.format()))
        else:
            out.append(passed(check, anchor))
    return out


def random_function(rng: random.Random, parity: int, order: int = 0, terms: int = 3,
                    degree: int = 2) -> SuperFunction:
    """A random homogeneous polynomial superfunction with small integer coefficients."""
    out = SuperFunction(order)
    for _ in range(terms):
        exps = tuple(rng.randint(0, degree) for _ in range(4))
        k = rng.choice([n for n in range(5) if n % 2 == parity])
        odd = tuple(sorted(rng.sample(range(4), k)))
        lam = rng.randint(0, order)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out = out + SuperFunction.monomial(c, exps, odd, order, lam)
    return out
