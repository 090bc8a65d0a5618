"""Lie superalgebras given by structure constants f^k_{ij}.

[X_i, X_j] = f^k_{ij} X_k, with f^k_{ij} = -(-1)^{|i||j|} f^k_{ji}.  Only
the triangle i <= j is stored by hand; the other half is reflected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graded import Grading, GradedTensor, sign
from .linalg import Matrix, inverse, rank
from .params import ParamSpec, ParameterError
from .poly import Poly
from .report import CheckResult, failed, passed
from .scalars import GaussianRational, ZERO

__all__ = [
    "SuperAlgebra", "BilinearForm", "QuadraticElement",
    "check_super_jacobi", "check_antisymmetry", "adjoint_reps",
    "check_ad_invariance", "casimir_quadratic", "reflect_triangle",
    "Vector", "bracket_vectors",
]

Vector = Dict[int, object]


def _is_zero(c) -> bool:
    return not c


def _concrete(c):
    """Constant Poly -> GaussianRational; others unchanged."""
    if isinstance(c, Poly) and c.is_constant():
        return c.constant_value()
    return c


def reflect_triangle(grading: Grading, upper: Mapping[Tuple[int, int, int], object],
                     variance: str = "ull") -> GradedTensor:
    """Build the full tensor from entries with i <= j in the antisymmetric pair.

    For ``'ull'`` keys are (k, i, j); for ``'uul'`` keys are (i, j, k).
    """
    entries = {}
    for key, c in upper.items():
        if variance == "ull":
            k, i, j = key
        else:
            i, j, k = key
        if i > j:
            raise ValueError(f"only i <= j entries may be given, got {key}")
        if sum(grading(x) for x in (i, j, k)) % 2:
            raise ValueError(f"entry {key} violates the grading selection rule")
        if i == j and not grading(i) and c:
            raise ValueError(f"entry {key} must vanish: even generator with itself")
        s = -sign(grading(i) * grading(j))
        if variance == "ull":
            entries[(k, i, j)] = c
            if i != j:
                entries[(k, j, i)] = -c if s < 0 else c
        else:
            entries[(i, j, k)] = c
            if i != j:
                entries[(j, i, k)] = -c if s < 0 else c
    return GradedTensor(grading, variance, entries)


@dataclass
class SuperAlgebra:
    name: str
    grading: Grading
    f: GradedTensor
    params: Dict[str, GaussianRational] = field(default_factory=dict)
    spec: ParamSpec = field(default_factory=ParamSpec)
    notes: List[str] = field(default_factory=list)
    labels: Optional[Sequence[str]] = None

    def __post_init__(self):
        if self.f.variance != "ull":
            raise ValueError("structure tensor must have variance 'ull'")
        if self.f.grading != self.grading:
            raise ValueError("structure tensor grading mismatch")
        bad = self.f.parity_violations()
        if bad:
            raise ValueError(f"grading selection rule violated at {bad[0]}")
        self._brackets = None

    # construction ------------------------------------------------------
    @classmethod
    def from_brackets(cls, name: str, grades: Sequence[int],
                      brackets: Mapping[Tuple[int, int], Mapping[int, object]],
                      **kw) -> "SuperAlgebra":
        """``brackets[(i, j)] = {k: c}`` for i <= j."""
        g = Grading(grades)
        upper = {}
        for (i, j), out in brackets.items():
            for k, c in out.items():
                if isinstance(c, (int, str)):
                    c = GaussianRational.coerce(c)
                upper[(k, i, j)] = c
        return cls(name, g, reflect_triangle(g, upper), **kw)

    @property
    def dim(self) -> int:
        return self.grading.dim

    def is_symbolic(self) -> bool:
        return any(isinstance(c, Poly) and not c.is_constant()
                   for _, c in self.f.items())

    def free_parameters(self) -> List[str]:
        return [n for n in self.spec.names if n not in self.params]

    def bind(self, values: Mapping[str, object] | None = None, **kw) -> "SuperAlgebra":
        """Substitute parameter values (checked against the declared range)."""
        vals = dict(values or {})
        vals.update(kw)
        full = dict(self.params)
        full.update({k: GaussianRational.coerce(v) for k, v in vals.items()})
        partial = any(n not in full for n in self.spec.names)
        checked = self.spec.validate(full, partial=partial) if self.spec else {}
        if not self.spec and vals:
            raise ParameterError(f"{self.name} takes no parameters")

        def sub(c):
            if isinstance(c, Poly):
                return _concrete(c.subs(checked))
            return c

        return SuperAlgebra(self.name, self.grading, self.f.map(sub), dict(checked),
                            self.spec, list(self.notes), self.labels)

    def require_bound(self) -> None:
        if self.is_symbolic():
            missing = ", ".join(self.free_parameters()) or "?"
            raise ParameterError(f"{self.name}: unbound parameter(s) {missing}")

    def sample(self, rng: random.Random, count: int) -> List["SuperAlgebra"]:
        if not self.free_parameters():
            return [self.bind()] if self.spec else [self]
        pts = self.spec.sample(rng, count, fixed=self.params)
        return [self.bind(p) for p in pts]

    def label(self, i: int) -> str:
        if self.labels:
            return self.labels[i - 1]
        return f"X{i}"

    # brackets ------------------------------------------------------------
    def brackets(self) -> Dict[Tuple[int, int], Vector]:
        if self._brackets is None:
            table: Dict[Tuple[int, int], Vector] = {}
            for (k, i, j), c in self.f.items():
                table.setdefault((i, j), {})[k] = c
            self._brackets = table
        return self._brackets

    def bracket(self, i: int, j: int) -> Vector:
        return self.brackets().get((i, j), {})

    def bracket_vectors(self, x: Vector, y: Vector) -> Vector:
        return bracket_vectors(self, x, y)

    def structure_constant(self, k: int, i: int, j: int):
        return self.f.get(k, i, j)

    def __str__(self):
        lines = [f"{self.name}  grades={list(self.grading.grades)}"]
        for (i, j), out in sorted(self.brackets().items()):
            if i > j:
                continue
            rhs = " + ".join(f"({c})*{self.label(k)}" for k, c in sorted(out.items()))
            br = "{,}" if self.grading(i) and self.grading(j) else "[,]"
            lines.append(f"  {br[0]}{self.label(i)},{self.label(j)}{br[-1]} = {rhs}")
        return "\n".join(lines)


def bracket_vectors(alg: SuperAlgebra, x: Vector, y: Vector) -> Vector:
    out: Vector = {}
    for i, a in x.items():
        if not a:
            continue
        for j, b in y.items():
            if not b:
                continue
            for k, c in alg.bracket(i, j).items():
                out[k] = out.get(k, ZERO) + a * b * c
    return {k: v for k, v in out.items() if v}


def _add_into(acc: Vector, v: Vector, s) -> None:
    for k, c in v.items():
        acc[k] = acc.get(k, ZERO) + s * c


# ----------------------------------------------------------------------
# identities

def jacobi_vector(alg: SuperAlgebra, i: int, j: int, k: int) -> Vector:
    """Graded cyclic sum; the X_m coefficient is the Jacobi expression at (m,i,j,k)."""
    g = alg.grading
    e = lambda n: {n: GaussianRational(1)}
    acc: Vector = {}
    _add_into(acc, bracket_vectors(alg, e(j), bracket_vectors(alg, e(k), e(i))),
              sign(g(i) * (g(j) + g(k))))
    _add_into(acc, bracket_vectors(alg, e(i), bracket_vectors(alg, e(j), e(k))), 1)
    _add_into(acc, bracket_vectors(alg, e(k), bracket_vectors(alg, e(i), e(j))),
              sign(g(k) * (g(i) + g(j))))
    return {m: c for m, c in acc.items() if c}


def jacobi_violations(alg: SuperAlgebra) -> List[Tuple[int, int, int, int]]:
    alg.require_bound()
    bad = []
    for i, j, k in product(alg.grading.indices(), repeat=3):
        for m in sorted(jacobi_vector(alg, i, j, k)):
            bad.append((m, i, j, k))
    return bad


def check_super_jacobi(alg: SuperAlgebra) -> CheckResult:
    """Pass iff every graded cyclic sum vanishes; the first failure is (m, i, j, k)."""
    bad = jacobi_violations(alg)
    name = f"super Jacobi: {alg.name}"
    if bad:
        return failed(name, "super Jacobi identity", bad[0],
                      detail=f"{len(bad)} violating (m,i,j,k) tuples")
    return passed(name, "super Jacobi identity")


def check_antisymmetry(t: GradedTensor, name: str = "f") -> CheckResult:
    """Graded antisymmetry in the lower pair ('ull') or upper pair ('uul')."""
    g = t.grading
    for key, c in t.items():
        if t.variance == "ull":
            k, i, j = key
            other = (k, j, i)
        else:
            i, j, k = key
            other = (j, i, k)
        expect = -c if sign(g(i) * g(j)) > 0 else c
        if t[other] - expect:
            return failed(f"graded antisymmetry: {name}", "graded antisymmetry", key)
    return passed(f"graded antisymmetry: {name}", "graded antisymmetry")


def adjoint_reps(alg: SuperAlgebra) -> List[Matrix]:
    """Matrices Y^i with (Y^i)_{jk} = -f^i_{jk}, returned 0-based, i = 1..n."""
    n = alg.dim
    mats = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in alg.f.items():
        mats[i - 1][j - 1][k - 1] = -c
    return mats


# ----------------------------------------------------------------------
# bilinear forms and the quadratic Casimir

@dataclass
class BilinearForm:
    grading: Grading
    entries: Dict[Tuple[int, int], GaussianRational]

    def __call__(self, x: Vector, y: Vector):
        total = ZERO
        for i, a in x.items():
            for j, b in y.items():
                c = self.entries.get((i, j))
                if c:
                    total = total + a * b * c
        return total

    def matrix(self) -> Matrix:
        n = self.grading.dim
        return [[GaussianRational.coerce(self.entries.get((i, j), ZERO))
                 for j in range(1, n + 1)] for i in range(1, n + 1)]

    def is_degenerate(self) -> bool:
        return rank(self.matrix()) < self.grading.dim

    def supersymmetry_violation(self) -> Optional[Tuple[int, int]]:
        g = self.grading
        for i, j in product(g.indices(), repeat=2):
            a = self.entries.get((i, j), ZERO)
            b = self.entries.get((j, i), ZERO)
            if a - (b if sign(g(i) * g(j)) > 0 else -b):
                return (i, j)
        return None


def check_ad_invariance(alg: SuperAlgebra, form: BilinearForm) -> CheckResult:
    """<[x,y],z> = <x,[y,z]> on all basis triples."""
    name = f"ad-invariance: {alg.name}"
    anchor = "invariant bilinear form"
    sv = form.supersymmetry_violation()
    if sv is not None:
        return failed(name, anchor, sv, detail="form is not supersymmetric")
    e = lambda n: {n: GaussianRational(1)}
    for a, b, c in product(alg.grading.indices(), repeat=3):
        lhs = form(bracket_vectors(alg, e(a), e(b)), e(c))
        rhs = form(e(a), bracket_vectors(alg, e(b), e(c)))
        if lhs - rhs:
            return failed(name, anchor, (a, b, c),
                          detail=f"<[x,y],z> = {lhs} but <x,[y,z]> = {rhs}")
    detail = "degenerate form" if form.is_degenerate() else ""
    return passed(name, anchor, detail=detail)


@dataclass
class QuadraticElement:
    """sum c_ij X_i X_j + sum c_k X_k in the enveloping algebra."""

    alg: SuperAlgebra
    quadratic: Dict[Tuple[int, int], GaussianRational]
    linear: Dict[int, GaussianRational] = field(default_factory=dict)

    def normal_ordered(self) -> "QuadraticElement":
        """Reorder every word to i <= j using X_i X_j = (-1)^{ij} X_j X_i + [X_i, X_j]
        and X_i X_i = 1/2 [X_i, X_i] for odd i."""
        g = self.alg.grading
        quad: Dict[Tuple[int, int], GaussianRational] = {}
        lin = dict(self.linear)
        half = GaussianRational(1, 0) / 2
        for (i, j), c in self.quadratic.items():
            if i < j or (i == j and not g(i)):
                quad[(i, j)] = quad.get((i, j), ZERO) + c
            elif i == j:
                _add_into(lin, self.alg.bracket(i, i), c * half)
            else:
                s = sign(g(i) * g(j))
                quad[(j, i)] = quad.get((j, i), ZERO) + (c if s > 0 else -c)
                _add_into(lin, self.alg.bracket(i, j), c)
        return QuadraticElement(self.alg, {k: v for k, v in quad.items() if v},
                                {k: v for k, v in lin.items() if v})

    def __eq__(self, other):
        a, b = self.normal_ordered(), other.normal_ordered()
        return a.quadratic == b.quadratic and a.linear == b.linear

    def __str__(self):
        parts = []
        for (i, j), c in sorted(self.quadratic.items()):
            parts.append(f"({c})*{self.alg.label(i)}{self.alg.label(j)}")
        for k, c in sorted(self.linear.items()):
            parts.append(f"({c})*{self.alg.label(k)}")
        return " + ".join(parts) if parts else "0"


def casimir_quadratic(alg: SuperAlgebra, form: BilinearForm) -> QuadraticElement:
    """C = sum_ij N_ij X_i X_j with N the inverse of the form's matrix.

    Raises ValueError on a degenerate or non-invariant form.
    """
    if form.is_degenerate():
        raise ValueError("degenerate bilinear form")
    if not check_ad_invariance(alg, form).ok:
        raise ValueError("bilinear form is not ad-invariant")
    inv = inverse(form.matrix())
    n = alg.dim
    quad = {(i + 1, j + 1): inv[i][j] for i in range(n) for j in range(n) if inv[i][j]}
    return QuadraticElement(alg, quad).normal_ordered()
