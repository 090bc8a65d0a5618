"""Equivalence of dual structures under a parametric automorphism family.

Two duals d1, d2 on the same base are equivalent when some automorphism A
carries one to the other, d2 = transform_dual(A, d1).  The search writes
that condition as polynomial equations in the family letters and
eliminates exactly over real values of the letters (the automorphism group
of a real superalgebra).  Letters flagged nonzero may be divided by, so
Laurent monomials in them appear during elimination.

Outcomes: ``found`` (with a verified witness matrix), ``inequivalent``
(an automorphism-invariant fingerprint differs, or every branch of the
elimination is inconsistent) or ``inconclusive`` (a branch needs an
irrational root or a relation the eliminator cannot untangle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .automorphism import AutomorphismFamily, transform_dual
from .bialgebra import DualStructure
from .graded import Grading
from .linalg import inverse, rank
from .poly import Poly
from .scalars import GaussianRational, ONE, ZERO

__all__ = ["fingerprint", "EquivalenceResult", "equivalence_search",
           "FOUND", "INEQUIVALENT", "INCONCLUSIVE"]

FOUND, INEQUIVALENT, INCONCLUSIVE = "found", "inequivalent", "inconclusive"


# ----------------------------------------------------------------------
# invariants

def fingerprint(d: DualStructure) -> Tuple:
    """Isomorphism invariants of the dual superalgebra.

    Each entry is unchanged by any parity-preserving change of basis, so a
    fortiori by the automorphism transport:

    * superdimension of the derived algebra [g~, g~];
    * ranks of the bracket restricted to the even-even, even-odd and
      odd-odd sectors (the sectors are preserved, ranks are basis free);
    * superdimension of the centre;
    * superdimension of [g~, [g~, g~]].
    """
    g = d.grading
    n = g.dim
    alg = d.alg

    def vec(i, j):
        v = [ZERO] * n
        for k, c in alg.bracket(i, j).items():
            v[k - 1] = c
        return v

    sectors = {0: [], 1: [], 2: []}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            sectors[g(i) + g(j)].append(vec(i, j))
    derived = [v for vs in sectors.values() for v in vs]
    der = _sdim(derived, g)
    ranks = tuple(rank(sectors[s]) if sectors[s] else 0 for s in (0, 1, 2))
    centre = []
    for p in (0, 1):
        idx = [k for k in range(1, n + 1) if g(k) == p]
        rows = [[vec(i, j)[m] for i in idx] for j in range(1, n + 1) for m in range(n)]
        centre.append(len(idx) - rank(rows))
    # [g, [g, g]]: bracket every basis element with a homogeneous basis of the derived span
    second = []
    for v in derived:
        for j in range(1, n + 1):
            w = [ZERO] * n
            for i, c in enumerate(v, start=1):
                if c:
                    for k, x in alg.bracket(i, j).items():
                        w[k - 1] = w[k - 1] + c * x
            second.append(w)
    return (der, ranks, tuple(centre), _sdim(second, g))


def _sdim(vectors: List[List[GaussianRational]], g: Grading) -> Tuple[int, int]:
    even = [[v[k] if not g.grades[k] else ZERO for k in range(g.dim)] for v in vectors]
    odd = [[v[k] if g.grades[k] else ZERO for k in range(g.dim)] for v in vectors]
    return (rank(even) if even else 0, rank(odd) if odd else 0)


# ----------------------------------------------------------------------
# exact elimination over the reals

def _split(p: Poly) -> List[Poly]:
    """Real and imaginary parts of a polynomial in real variables."""
    re = Poly({m: GaussianRational(c.re) for m, c in p.terms.items()})
    im = Poly({m: GaussianRational(c.im) for m, c in p.terms.items()})
    return [q for q in (re, im) if q]


def _strip_units(p: Poly, units: set) -> Poly:
    """Divide out the largest monomial in the nonzero letters."""
    content = [(v, e) for v, e in _min_exponents(p) if v in units]
    if not content:
        return p
    return p * Poly({tuple((v, -e) for v, e in content): ONE})


def _min_exponents(p: Poly):
    """Per-letter minimum exponent over all terms (may be negative)."""
    letters = p.variables()
    out = []
    for v in sorted(letters):
        out.append((v, min(dict(m).get(v, 0) for m in p.terms)))
    return [(v, e) for v, e in out if e]


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """Rational roots of sum coeffs[k] x^k (integer coefficients after scaling)."""
    from math import gcd
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) <= 1:
        return []
    lead, const = ints[-1], ints[0]

    def divisors(x):
        x = abs(x)
        return [k for k in range(1, x + 1) if x % k == 0]

    roots = set()
    for p in divisors(const):
        for q in divisors(lead):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r ** k for k, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


def _sturm_count(coeffs: List[Fraction]) -> int:
    """Number of distinct real roots of a nonzero real polynomial."""
    def trim(p):
        while p and p[-1] == 0:
            p = p[:-1]
        return p

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for k, c in enumerate(b):
                a[k + shift] -= f * c
            a = trim(a[:-1])
        return a

    p0 = trim(list(coeffs))
    if len(p0) <= 1:
        return 0
    p1 = trim([k * c for k, c in enumerate(p0)][1:])
    seq = [p0, p1]
    while len(seq[-1]) > 1:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(vals):
        vals = [v for v in vals if v != 0]
        return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))

    at_pos = [p[-1] for p in seq]
    at_neg = [p[-1] * (-1) ** (len(p) - 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd of two coefficient lists (constant term first)."""
    def trim(p):
        p = list(p)
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while len(b) > 1 or (b and b[0] != 0):
        if len(b) == 1:
            return [Fraction(1)]
        r = list(a)
        while len(r) >= len(b) and any(r):
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for k, c in enumerate(b):
                r[k + shift] -= f * c
            r = trim(r[:-1]) if len(r) > 1 else [Fraction(0)]
        a, b = b, trim(r)
        if len(b) == 1 and b[0] == 0:
            break
    lead = a[-1]
    return [c / lead for c in a]


class _Undecided(Exception):
    pass


def _solve(eqs: List[Poly], units: set, letters: List[str], depth: int = 0):
    """Yield complete substitutions {letter: Poly} solving ``eqs`` over the reals.

    Raises _Undecided when a branch cannot be settled exactly.
    """
    if depth > 40:
        raise _Undecided("elimination depth exceeded")
    work = []
    for p in eqs:
        for q in _split(p):
            q = _strip_units(q, units)
            if q.is_constant():
                return            # nonzero constant: inconsistent
            if q not in work:
                work.append(q)
    if not work:
        yield {}
        return
    # 1. a single term: some possibly-zero letter must vanish
    for q in work:
        if len(q.terms) == 1:
            (m, _), = q.terms.items()
            zeroable = [v for v, e in m if v not in units and e > 0]
            for v in zeroable:
                sub = {v: Poly()}
                for rest in _solve([p.subs(sub) for p in work], units, letters, depth + 1):
                    yield dict(rest, **sub)
            return
    # 2. affine in a letter with a unit-monomial coefficient
    for q in work:
        for v in sorted(q.variables(), key=lambda x: (x in units, letters.index(x))):
            lin = q.linear_in(v)
            if lin is None:
                continue
            coeff, rest = lin
            if len(coeff.terms) != 1:
                continue
            (m, _), = coeff.terms.items()
            if any(w not in units for w, _ in m):
                continue
            if v in units and not rest:
                continue
            value = -rest * coeff ** -1
            sub = {v: value}
            extra = [value] if v in units else []     # a unit letter must stay nonzero
            for sol in _solve([p.subs(sub) for p in work], units, letters, depth + 1):
                final = value.subs(sol)
                if extra and final.is_constant() and not final.constant_value():
                    continue
                out = {k: e.subs(sub) for k, e in sol.items()}
                out[v] = final
                yield out
            return
    # 3. equations in one letter: gcd of all of them, then real rational roots
    univariate: Dict[str, List[Fraction]] = {}
    for q in work:
        vs = q.variables()
        if len(vs) != 1:
            continue
        v, = vs
        low = min(dict(m).get(v, 0) for m in q.terms)
        deg = max(dict(m).get(v, 0) for m in q.terms) - low
        coeffs = [Fraction(0)] * (deg + 1)
        for m, c in q.terms.items():
            coeffs[dict(m).get(v, 0) - low] = c.re
        univariate[v] = _poly_gcd(univariate[v], coeffs) if v in univariate else coeffs
    for v, coeffs in univariate.items():
        if len(coeffs) == 1:
            return                # coprime conditions on one letter: inconsistent
    for v, coeffs in univariate.items():
        rational = _rational_roots(coeffs)
        if _sturm_count(coeffs) > len(rational):
            raise _Undecided(f"irrational real root for {v}")
        for r in rational:
            if not r and v in units:
                continue
            sub = {v: Poly.lift(GaussianRational(r))}
            for sol in _solve([p.subs(sub) for p in work], units, letters, depth + 1):
                yield dict(sol, **sub)
        return
    # 4. a two-term relation m1 = gamma m2 with a power of a unit monomial
    for q in work:
        if len(q.terms) != 2 or not q.variables() <= units:
            continue
        (m1, c1), (m2, c2) = q.terms.items()
        ratio = dict(m1)
        for w, e in m2:
            ratio[w] = ratio.get(w, 0) - e
        expo = [(w, e) for w, e in ratio.items() if e]
        from math import gcd
        k = 0
        for _, e in expo:
            k = gcd(k, abs(e))
        if k <= 1:
            continue
        gamma = (-c2 / c1).re          # (prod w^(e/k))^k = gamma
        coeffs = [Fraction(-gamma)] + [Fraction(0)] * (k - 1) + [Fraction(1)]
        roots = [r for r in _rational_roots(coeffs) if r]
        if _sturm_count(coeffs) > len(roots):
            raise _Undecided("irrational root of a monomial relation")
        base = Poly({tuple(sorted((w, e // k) for w, e in expo)): ONE})
        for r in roots:
            for sol in _solve([p for p in work if p != q] + [base - GaussianRational(r)],
                              units, letters, depth + 1):
                yield sol
        return
    raise _Undecided("residual system: " + "; ".join(f"{p} = 0" for p in work))


@dataclass
class EquivalenceResult:
    outcome: str
    witness: Optional[List[List[GaussianRational]]] = None
    values: Optional[Dict[str, GaussianRational]] = None
    detail: str = ""


def _transport_equations(family: AutomorphismFamily, d1: DualStructure, d2: DualStructure) -> List[Poly]:
    """Polynomial form of d2 = transform_dual(N^{-1}, d1) for N in the family.

    With X~' = N^T X~ the condition reads
    sum_ab N_a^i N_b^j ft1^{ab}_c = sum_k ft2^{ij}_k N_c^k.
    """
    N = family.matrix
    n = d1.grading.dim
    eqs = []
    for i, j, c in product(range(n), repeat=3):
        if i > j:
            continue
        v = Poly()
        for a, b in product(range(n), repeat=2):
            f = d1.ft(a + 1, b + 1, c + 1)
            if f and N[a][i] and N[b][j]:
                v = v + N[a][i] * N[b][j] * f
        for k in range(n):
            f = d2.ft(i + 1, j + 1, k + 1)
            if f and N[c][k]:
                v = v - N[c][k] * f
        if v:
            eqs.append(v)
    return eqs


def equivalence_search(d1: DualStructure, d2: DualStructure,
                       family: AutomorphismFamily) -> EquivalenceResult:
    """Decide whether some real member of ``family`` carries d1 to d2."""
    n = d1.grading.dim
    if d1.tensor().entries == d2.tensor().entries:
        ident = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        return EquivalenceResult(FOUND, ident, None, "identical structures")
    f1, f2 = fingerprint(d1), fingerprint(d2)
    if f1 != f2:
        return EquivalenceResult(INEQUIVALENT, detail=f"fingerprints differ: {f1} vs {f2}")
    if not family.exact:
        return EquivalenceResult(INCONCLUSIVE, detail="automorphism family has unresolved relations")
    units = set(family.nonzero)
    letters = list(family.free)
    eqs = _transport_equations(family, d1, d2)
    unverified = 0
    try:
        for sol in _solve(eqs, units, letters):
            values = {}
            for v in letters:
                e = sol.get(v, Poly.lift(GaussianRational(1)) if v in units else Poly())
                e = e.subs({w: (1 if w in units else 0) for w in e.variables()})
                values[v] = e.constant_value()
            try:
                N = family.member(values)
            except ValueError:
                unverified += 1
                continue
            A = inverse(N)
            moved = transform_dual(A, d1)
            if moved.tensor().entries == d2.tensor().entries:
                return EquivalenceResult(FOUND, A, values, "witness verified by transport")
            unverified += 1
    except _Undecided as exc:
        return EquivalenceResult(INCONCLUSIVE, detail=str(exc))
    if unverified:
        # a solution branch exists but the default choice of its free letters failed
        return EquivalenceResult(INCONCLUSIVE, detail=f"{unverified} unverified solution branch(es)")
    return EquivalenceResult(INEQUIVALENT, detail="transport equations have no real solution")
