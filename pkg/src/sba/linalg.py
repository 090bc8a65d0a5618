"""Exact Gaussian elimination over Q(i).

Matrices are lists of rows of :class:`GaussianRational`.  Linear systems
come in as sparse equations ``{unknown: coefficient}`` plus a constant, so
the solvers in bialgebra/rmatrix can hand over their equations directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

from .scalars import GaussianRational, ONE, ZERO

Matrix = List[List[GaussianRational]]

__all__ = [
    "Matrix", "zeros", "identity", "matmul", "transpose", "mat_equal",
    "rref", "rank", "nullspace", "inverse", "LinearSystem", "AffineSolution",
]


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        for t in range(k):
            x = row[t]
            if not x:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    out[i][j] = out[i][j] + x * bt[j]
    return out


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_equal(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(a: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[GaussianRational.coerce(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column."""
    if not a:
        return []
    red, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(a) -> Matrix:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


@dataclass
class AffineSolution:
    """x = particular + sum_k t_k * directions[k] over the listed unknowns."""

    unknowns: List[Hashable]
    particular: Dict[Hashable, GaussianRational]
    directions: List[Dict[Hashable, GaussianRational]]

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def point(self, params: Sequence) -> Dict[Hashable, GaussianRational]:
        if len(params) != len(self.directions):
            raise ValueError("wrong number of parameters")
        out = dict(self.particular)
        for t, d in zip(params, self.directions):
            t = GaussianRational.coerce(t)
            for u, c in d.items():
                out[u] = out.get(u, ZERO) + t * c
        return {u: out.get(u, ZERO) for u in self.unknowns}

    def contains(self, x: Mapping[Hashable, object]) -> bool:
        """Exact affine-membership test."""
        diff = [GaussianRational.coerce(x.get(u, ZERO)) - self.particular.get(u, ZERO)
                for u in self.unknowns]
        if not self.directions:
            return not any(diff)
        cols = [[d.get(u, ZERO) for u in self.unknowns] for d in self.directions]
        base = rank(cols)
        return rank(cols + [diff]) == base


@dataclass
class LinearSystem:
    """Sparse linear equations sum_u c_u x_u = rhs."""

    unknowns: List[Hashable]
    equations: List[Tuple[Dict[Hashable, GaussianRational], GaussianRational]] = field(
        default_factory=list)

    def add(self, coeffs: Mapping[Hashable, object], rhs=ZERO) -> None:
        clean = {}
        for u, c in coeffs.items():
            c = GaussianRational.coerce(c)
            if c:
                clean[u] = clean.get(u, ZERO) + c
        rhs = GaussianRational.coerce(rhs)
        if clean or rhs:
            self.equations.append((clean, rhs))

    def solve(self) -> AffineSolution | None:
        """Exact solution space; None when inconsistent."""
        idx = {u: k for k, u in enumerate(self.unknowns)}
        n = len(self.unknowns)
        rows = []
        for coeffs, rhs in self.equations:
            row = [ZERO] * (n + 1)
            for u, c in coeffs.items():
                row[idx[u]] = row[idx[u]] + c
            row[n] = rhs
            rows.append(row)
        if not rows:
            dirs = [{u: ONE} for u in self.unknowns]
            return AffineSolution(list(self.unknowns), {}, dirs)
        red, pivots = rref(rows)
        if n in pivots:
            return None
        particular = {}
        for row, pc in zip(red, pivots):
            if row[n]:
                particular[self.unknowns[pc]] = row[n]
        free = [c for c in range(n) if c not in pivots]
        directions = []
        for f in free:
            d = {self.unknowns[f]: ONE}
            for row, pc in zip(red, pivots):
                if row[f]:
                    d[self.unknowns[pc]] = -row[f]
            directions.append(d)
        return AffineSolution(list(self.unknowns), particular, directions)
