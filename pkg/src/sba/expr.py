"""Parse coefficient expressions such as ``-eps*p``, ``a*b``, ``b^2``, ``1/2*i``.

Python's own expression grammar does the tokenizing; we walk the AST and
build a :class:`Poly`.  ``^`` is accepted as a power operator and ``i`` is
the imaginary unit.  Anything else (floats, calls, attribute access) is an
:class:`ExprError` carrying the column of the offending node.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

from .poly import Poly, var
from .scalars import GaussianRational, I, parse_scalar

__all__ = ["ExprError", "parse_expr"]


class ExprError(ValueError):
    def __init__(self, message: str, column: int = 0):
        super().__init__(message)
        self.column = column


_IMPLICIT_I = re.compile(r"(\d)\s*i\b")


def _prepare(text: str) -> str:
    # "3i" is legal scalar syntax but not a Python expression; "^" must bind
    # like "**", not like Python's xor
    return _IMPLICIT_I.sub(r"\1*i", text).replace("^", "**")


def parse_expr(text: str, params=None) -> Poly:
    """Parse ``text`` into a polynomial over the declared ``params``.

    ``params`` is a collection of allowed names; ``None`` allows any name.
    """
    src = text.strip()
    if not src:
        raise ExprError("empty expression", 1)
    try:
        tree = ast.parse(_prepare(src), mode="eval")
    except SyntaxError as exc:
        # fall back to the scalar grammar for forms like "-i" or "1/2+3/4*i"
        try:
            return Poly.lift(parse_scalar(src))
        except ValueError:
            raise ExprError(f"cannot parse expression {src!r}", (exc.offset or 1)) from None
    return _walk(tree.body, params)


def _walk(node, params) -> Poly:
    col = getattr(node, "col_offset", 0) + 1
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ExprError(f"only integer literals are allowed, got {node.value!r}", col)
        return Poly.lift(node.value)
    if isinstance(node, ast.Name):
        if node.id == "i":
            return Poly.lift(I)
        if params is not None and node.id not in params:
            raise ExprError(f"undeclared parameter {node.id!r}", col)
        return var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _walk(node.operand, params)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _walk(node.left, params)
        if isinstance(node.op, (ast.Pow, ast.BitXor)):
            right = _walk(node.right, params)
            if not right.is_constant():
                raise ExprError("exponent must be a constant", col)
            e = right.constant_value()
            if not e.is_real() or e.re.denominator != 1 or e.re < 0:
                raise ExprError("exponent must be a non-negative integer", col)
            return left ** int(e.re)
        right = _walk(node.right, params)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or not right.constant_value():
                raise ExprError("division only by a nonzero constant", col)
            return left / right.constant_value()
    raise ExprError(f"unsupported syntax: {ast.dump(node)[:40]}", col)


def parse_value(text: str) -> GaussianRational:
    """A constant expression, e.g. a parameter binding ``1/2`` or ``-3``."""
    p = parse_expr(text, params=())
    return p.constant_value()


def fraction_of(x) -> Fraction:
    g = GaussianRational.coerce(x)
    if not g.is_real():
        raise ValueError(f"{x} is not real")
    return g.re
