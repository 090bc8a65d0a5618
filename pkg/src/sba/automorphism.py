"""Automorphisms of a superalgebra and transport of dual structures.

An automorphism is a parity-preserving (block-diagonal) invertible matrix
A acting as X'_i = A_i^j X_j such that [X'_i, X'_j] = f^k_{ij} X'_k.  The
overall sign (-1)^{|j|} one may attach to the odd rows is the
parity automorphism itself, so it never changes a verdict and is omitted.

Matrices are 0-based lists; entries are GaussianRational (numeric) or Poly
(families).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .bialgebra import DualStructure
from .graded import Grading, supertranspose
from .linalg import Matrix, inverse, matmul, rank, transpose, zeros
from .poly import Poly, var
from .report import CheckResult, failed, passed
from .scalars import GaussianRational, ONE, ZERO
from .superalgebra import SuperAlgebra, adjoint_reps, reflect_triangle

__all__ = [
    "is_automorphism", "automorphism_violations", "automorphism_matrix_violations",
    "AutomorphismFamily", "solve_automorphism_family", "transform_dual",
    "transform_dual_by_substitution", "check_pairing_preserved", "block_diagonal_violation",
]


def block_diagonal_violation(A: Sequence[Sequence], grading: Grading) -> Optional[Tuple[int, int]]:
    """First 1-based (i, j) where A mixes parities, else None."""
    g = grading.grades
    for i, j in product(range(len(A)), repeat=2):
        if g[i] != g[j] and A[i][j]:
            return (i + 1, j + 1)
    return None


def automorphism_violations(A: Sequence[Sequence], alg: SuperAlgebra) -> List[Tuple[int, int, int]]:
    """(i, j, c) where sum_ab A_i^a A_j^b f^c_ab != sum_k f^k_ij A_k^c.

    Works for numeric and Poly entries; with Poly entries the residuals are
    the defining equations of the automorphism group.
    """
    return [key for key, _ in _residuals(A, alg)]


def _residuals(A, alg: SuperAlgebra):
    n = alg.dim
    f = alg.f
    out = []
    for i, j, c in product(range(1, n + 1), repeat=3):
        v = ZERO
        for a, b in product(range(1, n + 1), repeat=2):
            fc = f.get(c, a, b)
            if fc and A[i - 1][a - 1] and A[j - 1][b - 1]:
                v = A[i - 1][a - 1] * A[j - 1][b - 1] * fc + v
        for k in range(1, n + 1):
            fk = f.get(k, i, j)
            if fk and A[k - 1][c - 1]:
                v = v - A[k - 1][c - 1] * fk
        if v:
            out.append(((i, j, c), v))
    return out


def automorphism_matrix_violations(A: Sequence[Sequence], alg: SuperAlgebra) -> List[Tuple[int, int, int]]:
    """Matrix form A Y^c A^st = sum_l Y^l A_l^c, entries (c, i, j).

    For a block-diagonal A the graded sign in front of the left side is
    (-1)^{|i|+|j|+|c|}, which is +1 on every entry the selection rule lets
    through, so it is dropped.
    """
    n = alg.dim
    g = alg.grading
    Y = adjoint_reps(alg)
    Ast = supertranspose(A, g)
    bad = []
    for c in range(n):
        lhs = matmul(matmul(A, Y[c]), Ast)
        for i, j in product(range(n), repeat=2):
            rhs = ZERO
            for l in range(n):
                if A[l][c] and Y[l][i][j]:
                    rhs = rhs + Y[l][i][j] * A[l][c]
            if lhs[i][j] - rhs:
                bad.append((c + 1, i + 1, j + 1))
    return bad


def is_automorphism(A: Sequence[Sequence], alg: SuperAlgebra) -> CheckResult:
    """Direct bracket-preservation test, cross-checked by the matrix form."""
    name = f"automorphism: {alg.name}"
    anchor = "automorphism condition"
    alg.require_bound()
    A = [[GaussianRational.coerce(x) for x in row] for row in A]
    if len(A) != alg.dim or any(len(r) != alg.dim for r in A):
        raise ValueError(f"matrix must be {alg.dim}x{alg.dim}")
    mix = block_diagonal_violation(A, alg.grading)
    if mix:
        return failed(name, anchor, mix, detail="matrix mixes even and odd generators")
    if rank(A) < alg.dim:
        raise ValueError("singular matrix")
    direct = automorphism_violations(A, alg)
    matrix = automorphism_matrix_violations(A, alg)
    if bool(direct) != bool(matrix):
        return failed(name, anchor, (direct or matrix)[0],
                      detail="direct and matrix forms disagree")
    if direct:
        return failed(name, anchor, direct[0], detail=f"{len(direct)} failing (i, j, c) components")
    return passed(name, anchor)


# ----------------------------------------------------------------------
# the automorphism family by elimination

@dataclass
class AutomorphismFamily:
    """A parametric block-diagonal matrix with relations.

    ``matrix`` holds Poly entries in the free letters; ``nonzero`` lists
    letters that must not vanish; ``residual`` holds equations the
    eliminator could not settle (empty when the family is exact).
    """

    algebra: str
    matrix: List[List[Poly]]
    free: List[str]
    nonzero: List[str]
    residual: List[Poly] = field(default_factory=list)
    entry_names: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return not self.residual

    def member(self, values: Dict[str, object]) -> Matrix:
        vals = {k: GaussianRational.coerce(v) for k, v in values.items()}
        for v in self.nonzero:
            if not vals.get(v, ZERO):
                raise ValueError(f"parameter {v} must be nonzero")
        return [[p.subs(vals).constant_value() for p in row] for row in self.matrix]

    def sample(self, rng: random.Random) -> Tuple[Dict[str, GaussianRational], Matrix]:
        from fractions import Fraction
        vals = {}
        for v in self.free:
            while True:
                x = GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                if x or v not in self.nonzero:
                    break
            vals[v] = x
        return vals, self.member(vals)

    def format(self) -> str:
        rows = ["[" + ", ".join(str(p) for p in row) + "]" for row in self.matrix]
        cond = ", ".join(self.nonzero) + " != 0" if self.nonzero else "no conditions"
        text = "A = [" + ",\n     ".join(rows) + "]\n" + f"free: {', '.join(self.free)}; {cond}"
        if self.residual:
            text += "\nunresolved: " + "; ".join(f"{p} = 0" for p in self.residual)
        return text


def _single_var(p: Poly) -> Optional[str]:
    if len(p.terms) == 1:
        (m, _), = p.terms.items()
        if len(m) == 1:
            return m[0][0]
    return None


def solve_automorphism_family(alg: SuperAlgebra) -> AutomorphismFamily:
    """Eliminate the bilinear automorphism equations for the block entries.

    Steps, repeated to a fixed point: an equation that is a single term in a
    single unknown forces that unknown to zero; an equation affine in some
    unknown with a constant coefficient solves for it (the last such unknown
    in entry order is eliminated, so diagonal entries are expressed through
    earlier ones).  What is left is either empty or returned verbatim.
    The surviving unknowns are renamed: diagonal entries first (a, b, ...),
    then off-diagonal ones, each group in row-major order.
    """
    alg.require_bound()
    g = alg.grading
    n = alg.dim
    A: List[List[Poly]] = [[Poly() for _ in range(n)] for _ in range(n)]
    order: List[str] = []
    where: Dict[str, Tuple[int, int]] = {}
    for i, j in product(range(n), repeat=2):
        if g.grades[i] == g.grades[j]:
            name = f"A{i + 1}{j + 1}"
            A[i][j] = var(name)
            order.append(name)
            where[name] = (i, j)
    eqs = [p for _, p in _residuals(A, alg)]
    subst: Dict[str, Poly] = {}

    def apply(p: Poly) -> Poly:
        return p.subs(subst) if subst else p

    changed = True
    while changed:
        changed = False
        eqs = [q for q in (apply(p) for p in eqs) if q]
        for p in eqs:
            v = _single_var(p)
            if v is not None:
                subst = {k: e.subs({v: 0}) for k, e in subst.items()}
                subst[v] = Poly()
                changed = True
                break
        if changed:
            continue
        for p in eqs:
            for v in sorted(p.variables(), key=order.index, reverse=True):
                lin = p.linear_in(v)
                if lin is None or not lin[0].is_constant():
                    continue
                coeff, rest = lin
                value = -rest / coeff.constant_value()
                subst = {k: e.subs({v: value}) for k, e in subst.items()}
                subst[v] = value
                changed = True
                break
            if changed:
                break
    residual = [q for q in (apply(p) for p in eqs) if q]
    M = [[apply(p) for p in row] for row in A]
    survivors = [v for v in order if v not in subst]
    diag = [v for v in survivors if where[v][0] == where[v][1]]
    off = [v for v in survivors if where[v][0] != where[v][1]]
    letters = "abcdefghjkmnpqrstuvwxyz"
    rename = {v: var(letters[k]) for k, v in enumerate(diag + off)}
    M = [[p.subs(rename) for p in row] for row in M]
    residual = [p.subs(rename) for p in residual]
    free = [str(rename[v]) for v in diag + off]
    # nonzero conditions from the block determinants' monomial content
    nonzero = []
    for parity in (0, 1):
        idx = [k for k in range(n) if g.grades[k] == parity]
        det = _det([[M[r][c] for c in idx] for r in idx])
        if not det:
            continue
        # only a monomial determinant turns into per-letter conditions
        if len(det.terms) == 1:
            for v, _ in det.monomial_content():
                if v not in nonzero:
                    nonzero.append(v)
    nonzero.sort(key=free.index)
    names = {str(rename[v]): where[v] for v in diag + off}
    return AutomorphismFamily(alg.name, M, free, nonzero, residual, names)


def _det(m):
    """Determinant by cofactor expansion (blocks are at most a few rows)."""
    k = len(m)
    if k == 0:
        return Poly.lift(ONE)
    if k == 1:
        return Poly.lift(m[0][0])
    out = Poly()
    for c in range(k):
        if not m[0][c]:
            continue
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = Poly.lift(m[0][c]) * _det(minor)
        out = out + term if c % 2 == 0 else out - term
    return out


# ----------------------------------------------------------------------
# transport of dual structures

def transform_dual(A: Sequence[Sequence], d: DualStructure) -> DualStructure:
    """Dual constants in the basis dual to X'_i = A_i^j X_j.

    The dual basis is X~'^j = (A^{-st})^j_m X~^m (this keeps the pairing
    <X'_i, X~'^j> = delta), so with M = A^{-st}

        ft'^{ij}_k = M^i_a M^j_b ft^{ab}_c (M^{-1})^c_k.

    Written with the cocommutator matrices (Y~_k)^{ij} = -ft^{ij}_k this is
    A^{-st} ... A^{-1} sandwiching, i.e. the matrix identity quoted for
    this transport read with A^{-1} in place of A (see
    :func:`transform_dual_by_substitution`, the independent oracle).
    """
    g = d.grading
    n = g.dim
    A = [[GaussianRational.coerce(x) for x in row] for row in A]
    Ainv = inverse(A)
    M = transpose(Ainv)          # block-diagonal: A^{-st} = (A^{-1})^T
    Minv = transpose(A)
    ft = d.tensor()
    out: Dict[Tuple[int, int, int], GaussianRational] = {}
    for (a, b, c), val in ft.items():
        for i in range(n):
            if not M[i][a - 1]:
                continue
            for j in range(n):
                if not M[j][b - 1]:
                    continue
                for k in range(n):
                    w = Minv[c - 1][k]
                    if w:
                        key = (i + 1, j + 1, k + 1)
                        out[key] = out.get(key, ZERO) + M[i][a - 1] * M[j][b - 1] * val * w
    upper = {key: v for key, v in out.items() if v and key[0] <= key[1]}
    full_f = {(k, i, j): v for (i, j, k), v in upper.items()}
    alg = SuperAlgebra(d.name + "'", g, reflect_triangle(g, full_f, "ull"),
                       notes=list(d.notes))
    return DualStructure(d.name + "'", alg, list(d.notes))


def transform_dual_by_substitution(A: Sequence[Sequence], d: DualStructure) -> DualStructure:
    """Oracle: substitute X~'^j = (A^{-st})^j_m X~^m into the dual brackets
    and re-expand in the primed basis, bracket by bracket."""
    g = d.grading
    n = g.dim
    A = [[GaussianRational.coerce(x) for x in row] for row in A]
    Mt = supertranspose(inverse(A), g)
    back = inverse(Mt)                           # X~^m = back^m_k X~'^k
    upper = {}
    for i in range(n):
        for j in range(i, n):
            vec = [ZERO] * n                     # in the unprimed dual basis
            for a in range(n):
                for b in range(n):
                    coef = Mt[i][a] * Mt[j][b]
                    if not coef:
                        continue
                    for c in range(n):
                        v = d.ft(a + 1, b + 1, c + 1)
                        if v:
                            vec[c] = vec[c] + coef * v
            for k in range(n):
                v = ZERO
                for c in range(n):
                    if vec[c] and back[c][k]:
                        v = v + vec[c] * back[c][k]
                if v:
                    upper[(k + 1, i + 1, j + 1)] = v
    alg = SuperAlgebra(d.name + "'", g, reflect_triangle(g, upper, "ull"), notes=list(d.notes))
    return DualStructure(d.name + "'", alg, list(d.notes))


def check_pairing_preserved(A: Sequence[Sequence], grading: Grading) -> CheckResult:
    """<A X_i, A^{-st} X~^j> = delta_i^j entry by entry."""
    A = [[GaussianRational.coerce(x) for x in row] for row in A]
    M = supertranspose(inverse(A), grading)
    n = grading.dim
    for i, j in product(range(n), repeat=2):
        v = ZERO
        for m in range(n):
            v = v + A[i][m] * M[j][m]
        if v != (ONE if i == j else ZERO):
            return failed("pairing preserved", "canonical pairing invariance", (i + 1, j + 1))
    return passed("pairing preserved", "canonical pairing invariance")
