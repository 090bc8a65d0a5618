"""Z2-graded index bookkeeping.

Basis indices are 1-based everywhere (X_1 .. X_n), matching the usual
notation; matrices stored as Python lists are 0-based and converted at the
boundary.  Coefficients may be :class:`GaussianRational` or :class:`Poly`;
anything supporting +, *, unary minus and truthiness works.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .scalars import GaussianRational, ONE, ZERO, format_scalar

__all__ = [
    "Grading", "GradedTensor", "sign", "supertranspose", "graded_flip",
    "wedge", "wedge3", "graded_mul_tensor_square", "koszul_sign",
    "super_antisymmetrize3", "is_super_antisymmetric3", "factor_wedge3",
    "format_coeff",
]


def sign(e: int) -> int:
    """(-1)^e."""
    return -1 if e % 2 else 1


class Grading:
    """Parities of the basis X_1..X_n (0 bosonic, 1 fermionic)."""

    __slots__ = ("grades",)

    def __init__(self, grades: Iterable[int]):
        g = tuple(int(x) for x in grades)
        if any(x not in (0, 1) for x in g):
            raise ValueError("grades must be 0 or 1")
        object.__setattr__(self, "grades", g)

    def __setattr__(self, name, value):
        raise AttributeError("Grading is immutable")

    @classmethod
    def standard(cls, bosons: int = 2, fermions: int = 2) -> "Grading":
        return cls([0] * bosons + [1] * fermions)

    def __len__(self):
        return len(self.grades)

    @property
    def dim(self) -> int:
        return len(self.grades)

    def __call__(self, i: int) -> int:
        return self.grades[i - 1]

    def indices(self) -> range:
        return range(1, len(self.grades) + 1)

    def superdimension(self) -> Tuple[int, int]:
        return (self.grades.count(0), self.grades.count(1))

    def __eq__(self, other):
        return isinstance(other, Grading) and self.grades == other.grades

    def __hash__(self):
        return hash(self.grades)

    def __add__(self, other: "Grading") -> "Grading":
        return Grading(self.grades + other.grades)

    def __repr__(self):
        return f"Grading({list(self.grades)})"


def format_coeff(c) -> str:
    if isinstance(c, GaussianRational):
        return format_scalar(c)
    return str(c)


class GradedTensor:
    """Sparse tensor with entries keyed by 1-based index tuples.

    ``variance`` is a string over {'u', 'l'} naming upper/lower slots in key
    order, e.g. ``'ull'`` for f^k_{ij} stored at key (k, i, j).
    """

    __slots__ = ("grading", "variance", "entries")

    def __init__(self, grading: Grading, variance: str,
                 entries: Mapping[Tuple[int, ...], object] | None = None):
        object.__setattr__(self, "grading", grading)
        object.__setattr__(self, "variance", variance)
        clean = {}
        for key, c in (entries or {}).items():
            key = tuple(key)
            if len(key) != len(variance):
                raise ValueError(f"index {key} does not match rank {len(variance)}")
            if any(not 1 <= k <= grading.dim for k in key):
                raise ValueError(f"index {key} out of range")
            if isinstance(c, (int, str)) or type(c).__name__ == "Fraction":
                c = GaussianRational.coerce(c)
            if c:
                prev = clean.get(key)
                c = c if prev is None else prev + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedTensor is immutable")

    @property
    def rank(self) -> int:
        return len(self.variance)

    def __getitem__(self, key) -> object:
        if not isinstance(key, tuple):
            key = (key,)
        return self.entries.get(key, ZERO)

    def get(self, *key):
        return self.entries.get(tuple(key), ZERO)

    def items(self) -> Iterator:
        return iter(sorted(self.entries.items()))

    def nonzero(self) -> int:
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def __add__(self, other: "GradedTensor") -> "GradedTensor":
        self._compatible(other)
        d = dict(self.entries)
        for k, c in other.entries.items():
            d[k] = d[k] + c if k in d else c
        return GradedTensor(self.grading, self.variance, d)

    def __neg__(self):
        return GradedTensor(self.grading, self.variance,
                            {k: -c for k, c in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "GradedTensor":
        return GradedTensor(self.grading, self.variance,
                            {k: s * c for k, c in self.entries.items()})

    def map(self, fn: Callable) -> "GradedTensor":
        return GradedTensor(self.grading, self.variance,
                            {k: fn(c) for k, c in self.entries.items()})

    def _compatible(self, other):
        if self.grading != other.grading or self.variance != other.variance:
            raise ValueError("incompatible tensors")

    def __eq__(self, other):
        if not isinstance(other, GradedTensor):
            return NotImplemented
        if self.grading != other.grading or self.variance != other.variance:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(not (self[k] - other[k]) for k in keys)

    __hash__ = None

    def parity_violations(self) -> list:
        """Keys whose index grades do not sum to zero mod 2.

        Every tensor used here (structure constants, dual constants, even
        r-matrices, Schouten values) is even, so this is the selection rule.
        """
        g = self.grading
        return [k for k in self.entries if sum(g(i) for i in k) % 2]

    def format(self, name: str = "t") -> str:
        lines = []
        for key, c in self.items():
            ups = [str(i) for i, v in zip(key, self.variance) if v == "u"]
            los = [str(i) for i, v in zip(key, self.variance) if v == "l"]
            s = name
            if ups:
                s += "^" + (ups[0] if len(ups) == 1 else "{" + " ".join(ups) + "}")
            if los:
                s += "_{" + " ".join(los) + "}"
            lines.append(f"{s} = {format_coeff(c)}")
        return "\n".join(lines) if lines else f"{name} = 0"

    def __repr__(self):
        return f"GradedTensor({self.variance}, {dict(self.items())})"


# ----------------------------------------------------------------------

def supertranspose(m: Sequence[Sequence], grading: Grading):
    """(M^st)_{ij} = (-1)^{|i|(|i|+|j|)} M_{ji} on a 0-based square matrix.

    Even-even and odd-odd blocks transpose plainly; of the two mixed blocks
    only the one with odd row index picks up a sign.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("supertranspose needs a square matrix")
    if n != grading.dim:
        raise ValueError("matrix size does not match grading")
    g = grading.grades
    return [[m[j][i] if not (g[i] * (g[i] + g[j])) % 2 else -m[j][i]
             for j in range(n)] for i in range(n)]


def graded_flip(t: GradedTensor) -> GradedTensor:
    """sigma(X_i (x) X_j) = (-1)^{|i||j|} X_j (x) X_i."""
    g = t.grading
    return GradedTensor(g, t.variance[::-1],
                        {(j, i): (c if not g(i) * g(j) else -c)
                         for (i, j), c in t.entries.items()})


def wedge(i: int, j: int, grading: Grading, coeff=ONE) -> GradedTensor:
    """X_i ^ X_j = X_i (x) X_j - (-1)^{|i||j|} X_j (x) X_i."""
    s = sign(grading(i) * grading(j))
    entries: Dict[Tuple[int, int], object] = {(i, j): coeff}
    key = (j, i)
    entries[key] = entries[key] - s * coeff if key in entries else -s * coeff
    return GradedTensor(grading, "uu", entries)


def _perm_koszul(order: Sequence[int], grades: Sequence[int]) -> int:
    """Sign of permuting slots into ``order``: sgn(sigma) times Koszul sign."""
    s = 1
    order = list(order)
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                # transposition of slots a and b; each inversion counts once
                s *= -1
                if grades[order[a]] and grades[order[b]]:
                    s *= -1
    return s


def super_antisymmetrize3(t: GradedTensor) -> GradedTensor:
    """Sum over slot permutations with sgn * Koszul signs (no 1/3!)."""
    g = t.grading
    out: Dict[Tuple[int, ...], object] = {}
    for key, c in t.entries.items():
        grades = [g(k) for k in key]
        for perm in permutations(range(3)):
            new = tuple(key[p] for p in perm)
            s = _perm_koszul(perm, grades)
            val = c if s > 0 else -c
            out[new] = out[new] + val if new in out else val
    return GradedTensor(g, t.variance, out)


def wedge3(i: int, j: int, k: int, grading: Grading, coeff=ONE) -> GradedTensor:
    """X_i ^ X_j ^ X_k, the super-antisymmetrization of X_i (x) X_j (x) X_k."""
    return super_antisymmetrize3(GradedTensor(grading, "uuu", {(i, j, k): coeff}))


def is_super_antisymmetric3(t: GradedTensor) -> bool:
    g = t.grading
    for (a, b, c), v in t.entries.items():
        swaps = [((b, a, c), sign(1 + g(a) * g(b))),
                 ((a, c, b), sign(1 + g(b) * g(c)))]
        for key, s in swaps:
            w = t[key]
            if (v if s > 0 else -v) - w:
                return False
    # keys present only as swap targets are covered by symmetry of the loop
    return True


def factor_wedge3(t: GradedTensor) -> Dict[Tuple[int, int, int], object]:
    """Coefficients c with t = sum c * X_a ^ X_b ^ X_c over sorted (a<=b<=c).

    Requires t super-antisymmetric; raises otherwise.
    """
    if not is_super_antisymmetric3(t):
        raise ValueError("tensor is not super-antisymmetric")
    g = t.grading
    out = {}
    rebuilt = GradedTensor(g, t.variance, {})
    for key in sorted(t.entries):
        if list(key) != sorted(key):
            continue
        basis = wedge3(*key, grading=g)
        norm = basis[key]
        if not norm:
            continue
        c = t[key]
        coef = c * GaussianRational.coerce(norm).inverse()
        out[key] = coef
        rebuilt = rebuilt + basis.scale(coef)
    if rebuilt != t:
        raise ValueError("tensor does not factor through the wedge basis")
    return out


def koszul_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """Sign for (a_1 x .. x a_n)(b_1 x .. x b_n) -> prod a_i b_i.

    Each b_j moves left past a_i for i > j.
    """
    e = 0
    for j, pb in enumerate(right):
        if pb:
            e += sum(left[i] for i in range(j + 1, len(left)))
    return sign(e)


def graded_mul_tensor_square(x, y, mul: Callable, parity: Callable):
    """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd for homogeneous pure tensors.

    ``x`` and ``y`` are ``(coeff, a, b)`` triples; ``mul`` multiplies slot
    elements and ``parity`` returns their grade.  Returns ``(coeff, ac, bd)``.
    """
    cx, a, b = x
    cy, c, d = y
    s = sign(parity(b) * parity(c))
    coeff = cx * cy
    return (coeff if s > 0 else -coeff, mul(a, c), mul(b, d))
