"""Parameter declarations for catalog families: names, finite choices, ranges.

Families are polynomial in their parameters, so identities are certified by
evaluating at several exact rational points inside the stated range.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .poly import Poly
from .scalars import GaussianRational

__all__ = ["Constraint", "ParamSpec", "ParameterError"]


class ParameterError(ValueError):
    """A parameter is unbound, unknown, or outside its allowed range."""


_OPS = {
    "!=": lambda a, b: a != b,
    "==": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
}


@dataclass(frozen=True)
class Constraint:
    lhs: Poly
    op: str
    rhs: Poly
    text: str = ""

    def holds(self, values: Mapping[str, object]) -> bool:
        a = self.lhs.evaluate(values)
        b = self.rhs.evaluate(values)
        if self.op in ("!=", "=="):
            return _OPS[self.op](a, b)
        if not (a.is_real() and b.is_real()):
            raise ParameterError(f"ordering constraint {self.text!r} on a complex value")
        return _OPS[self.op](a.re, b.re)

    def __str__(self):
        return self.text or f"{self.lhs} {self.op} {self.rhs}"


@dataclass
class ParamSpec:
    names: List[str] = field(default_factory=list)
    choices: Dict[str, Tuple[GaussianRational, ...]] = field(default_factory=dict)
    constraints: List[Constraint] = field(default_factory=list)

    def __bool__(self):
        return bool(self.names)

    def validate(self, values: Mapping[str, object], partial: bool = False) -> Dict[str, GaussianRational]:
        """Check a binding; with ``partial`` unbound names are allowed and only
        constraints whose variables are all bound are tested."""
        out = {}
        for n in self.names:
            if n not in values:
                if partial:
                    continue
                raise ParameterError(f"parameter {n!r} is unbound")
            out[n] = GaussianRational.coerce(values[n])
        for n in values:
            if n not in self.names:
                raise ParameterError(f"unknown parameter {n!r}")
        for n, opts in self.choices.items():
            if n in out and out[n] not in opts:
                allowed = ", ".join(str(o) for o in opts)
                raise ParameterError(f"{n} = {out[n]} not in {{{allowed}}}")
        for c in self.constraints:
            if partial and not (c.lhs.variables() | c.rhs.variables()) <= set(out):
                continue
            if not c.holds(out):
                raise ParameterError(f"constraint {c} violated at {_fmt(out)}")
        return out

    def sample(self, rng: random.Random, count: int,
               fixed: Mapping[str, object] | None = None,
               max_tries: int = 20000) -> List[Dict[str, GaussianRational]]:
        """Distinct in-range rational points (choices are cycled first)."""
        fixed = dict(fixed or {})
        free = [n for n in self.names if n not in fixed and n not in self.choices]
        choice_names = [n for n in self.names if n in self.choices and n not in fixed]
        combos = [{}]
        for n in choice_names:
            combos = [dict(c, **{n: o}) for c in combos for o in self.choices[n]]
        points, seen = [], set()
        tries = 0
        while len(points) < count and tries < max_tries:
            tries += 1
            pt = dict(fixed)
            pt.update(combos[len(points) % len(combos)])
            for n in free:
                pt[n] = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
            try:
                val = self.validate(pt)
            except ParameterError:
                continue
            key = tuple(sorted((k, v.re, v.im) for k, v in val.items()))
            if key in seen and free:
                continue
            seen.add(key)
            points.append(val)
            if not free and len(points) >= len(combos):
                break
        return points


def _fmt(values: Mapping[str, GaussianRational]) -> str:
    return ", ".join(f"{k}={v}" for k, v in sorted(values.items()))


def combos_of(spec: ParamSpec) -> Sequence[Dict[str, GaussianRational]]:
    out = [{}]
    for n, opts in spec.choices.items():
        out = [dict(c, **{n: o}) for c in out for o in opts]
    return out
