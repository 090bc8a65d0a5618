"""Text formats: algebras (.salg), bialgebra pairs (.sbia), r-matrices and
automorphism matrices.

All parse errors are :class:`FormatError` with 1-based line and column.

.salg::

    name = "(C3+A)"
    grades = 0 0 1 1
    param p                  # free parameter (family)
    param eps in {1, -1}     # finite choice
    param q = 1/2            # bound parameter
    require p*q != 0
    note = "anything"
    label = Z H Q+ Q-
    f 3 1 4 = 1              # f^3_{1 4}, only i <= j
    f 2 4 4 = i

.sbia: a ``[base]`` block in .salg syntax and a ``[dual]`` block whose
lines read ``ft i j k = <expr>`` for the dual constant with upper pair
(i, j), i <= j, and lower index k.

r-matrices are lines ``r i j = <expr>`` (the coefficient of X_i (x) X_j)
or ``w i j = <expr>`` (a wedge term c X_i ^ X_j), plus ``let x = v``.

.rpair: a ``[pair]`` header (``name``, ``note``, ``default eps = 1``),
``[base]`` and ``[dual]`` as in .sbia, then any of the r-matrix blocks
``[r]``, ``[rdual]``, ``[rfamily]``, ``[rdualfamily]``.  Free letters in the
family blocks (a1, b2, ...) are the family's coordinates.

Automorphism files hold one ``A = [[...], ...]`` line of monomial entries
and optional ``let`` bindings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .expr import ExprError, parse_expr
from .graded import Grading
from .params import Constraint, ParamSpec
from .poly import Poly
from .scalars import GaussianRational

__all__ = [
    "FormatError", "parse_salg", "parse_sbia", "parse_rmatrix",
    "parse_automorphism", "AlgebraText", "read_text", "parse_rpair", "RPairText",
]


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = ""):
        self.line, self.column, self.source = line, column, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


def read_text(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _strip(line: str) -> str:
    # comments start with '#', but not inside a quoted string
    out, quoted = [], False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out).rstrip()


def _expr(text: str, params, lineno: int, offset: int, source: str) -> Poly:
    try:
        return parse_expr(text, params)
    except ExprError as exc:
        raise FormatError(str(exc), lineno, offset + exc.column, source) from None


def _coef(p: Poly):
    return p.constant_value() if p.is_constant() else p


@dataclass
class AlgebraText:
    """Raw parse of a .salg block, before building the algebra."""

    name: str
    grades: Tuple[int, ...]
    spec: ParamSpec
    bound: Dict[str, GaussianRational]
    entries: Dict[Tuple[int, int, int], object]
    notes: List[str]
    labels: Optional[List[str]]


_KV = re.compile(r"^\s*(\w+)\s*=\s*(.*)$")
_ENTRY = re.compile(r"^\s*(f|ft)\s+(\d+)\s+(\d+)\s+(\d+)\s*=\s*(.+)$")
_PARAM = re.compile(r"^\s*param\s+([A-Za-z_]\w*)\s*(?:(in)\s*\{(.*)\}|=\s*(.+))?\s*$")
_REQUIRE = re.compile(r"^\s*require\s+(.+?)\s*(!=|==|>=|<=|>|<)\s*(.+)$")


def _parse_block(lines, source: str, entry_kw: str, shared: Optional[AlgebraText] = None,
                 need_grades: bool = True) -> AlgebraText:
    name, grades, labels = None, None, None
    spec = ParamSpec()
    bound: Dict[str, GaussianRational] = {}
    notes: List[str] = []
    entries: Dict[Tuple[int, int, int], object] = {}
    if shared is not None:
        spec.names.extend(shared.spec.names)
        spec.choices.update(shared.spec.choices)
        spec.constraints.extend(shared.spec.constraints)
        bound.update(shared.bound)
        grades = shared.grades
    for lineno, raw in lines:
        line = _strip(raw)
        if not line.strip():
            continue
        m = _PARAM.match(line)
        if m:
            pname = m.group(1)
            if pname == "i":
                raise FormatError("'i' is reserved for the imaginary unit", lineno, 1, source)
            if pname not in spec.names:
                spec.names.append(pname)
            if m.group(2):
                opts = []
                for tok in m.group(3).split(","):
                    opts.append(_expr(tok, (), lineno, line.find(tok), source).constant_value())
                spec.choices[pname] = tuple(opts)
            elif m.group(4):
                off = line.find(m.group(4))
                bound[pname] = _expr(m.group(4), (), lineno, off, source).constant_value()
            continue
        m = _REQUIRE.match(line)
        if m:
            lhs = _expr(m.group(1), spec.names, lineno, line.find(m.group(1)), source)
            rhs = _expr(m.group(3), spec.names, lineno, line.rfind(m.group(3)), source)
            spec.constraints.append(Constraint(lhs, m.group(2), rhs, line.split("require", 1)[1].strip()))
            continue
        m = _ENTRY.match(line)
        if m:
            kw = m.group(1)
            if kw != entry_kw:
                raise FormatError(f"'{kw}' lines are not allowed here (expected '{entry_kw}')",
                                  lineno, line.find(kw) + 1, source)
            a, b, c = int(m.group(2)), int(m.group(3)), int(m.group(4))
            if grades is None:
                raise FormatError("grades must be declared before entries", lineno, 1, source)
            n = len(grades)
            for val, col in ((a, m.start(2)), (b, m.start(3)), (c, m.start(4))):
                if not 1 <= val <= n:
                    raise FormatError(f"index {val} out of range 1..{n}", lineno, col + 1, source)
            # f k i j: pair (i, j);  ft i j k: pair (i, j)
            i, j = (b, c) if kw == "f" else (a, b)
            if i > j:
                raise FormatError(f"only i <= j entries are permitted (got {i} > {j})",
                                  lineno, m.start(2) + 1, source)
            val = _expr(m.group(5), spec.names, lineno, m.start(5), source)
            # stored as (k, i, j) for both kinds, i.e. output index first
            key = (a, b, c) if kw == "f" else (c, a, b)
            if key in entries:
                raise FormatError(f"duplicate entry {kw} {a} {b} {c}", lineno, 1, source)
            entries[key] = _coef(val)
            continue
        m = _KV.match(line)
        if m:
            key, val = m.group(1), m.group(2).strip()
            if key == "name":
                name = val.strip('"')
            elif key == "grades":
                try:
                    grades = tuple(int(t) for t in val.split())
                    Grading(grades)
                except ValueError:
                    raise FormatError(f"bad grades {val!r}", lineno, line.find(val) + 1, source) from None
            elif key == "note":
                notes.append(val.strip('"'))
            elif key == "label":
                labels = val.split()
            else:
                raise FormatError(f"unknown key {key!r}", lineno, 1, source)
            continue
        raise FormatError(f"cannot parse line: {line.strip()!r}", lineno, 1, source)
    if need_grades and grades is None:
        raise FormatError("missing 'grades' line", 1, 1, source)
    if labels is not None and grades is not None and len(labels) != len(grades):
        raise FormatError("label count does not match grades", 1, 1, source)
    return AlgebraText(name or "unnamed", tuple(grades or ()), spec, bound, entries, notes, labels)


def _numbered(text: str) -> List[Tuple[int, str]]:
    return list(enumerate(text.splitlines(), start=1))


def parse_salg(text: str, source: str = "") -> AlgebraText:
    return _parse_block(_numbered(text), source, "f")


def parse_sbia(text: str, source: str = "") -> Tuple[AlgebraText, AlgebraText]:
    sections: Dict[str, List[Tuple[int, str]]] = {}
    current = None
    for lineno, raw in _numbered(text):
        stripped = _strip(raw).strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip()
            if current not in ("base", "dual"):
                raise FormatError(f"unknown section [{current}]", lineno, 1, source)
            if current in sections:
                raise FormatError(f"duplicate section [{current}]", lineno, 1, source)
            sections[current] = []
            continue
        if current is None:
            if stripped:
                raise FormatError("content before the [base] section", lineno, 1, source)
            continue
        sections[current].append((lineno, raw))
    for sec in ("base", "dual"):
        if sec not in sections:
            raise FormatError(f"missing [{sec}] section", 1, 1, source)
    base = _parse_block(sections["base"], source, "f")
    dual = _parse_block(sections["dual"], source, "ft", shared=base)
    return base, dual


_R = re.compile(r"^\s*(r|w)\s+(\d+)\s+(\d+)\s*=\s*(.+)$")


def _r_lines(lines, dim: int, grades, source: str, names=None):
    """Shared body of r-matrix blocks: ``r i j`` tensor entries, ``w i j``
    wedge terms c X_i ^ X_j, and ``param``/``let`` bindings."""
    names = list(names or [])
    bound: Dict[str, GaussianRational] = {}
    entries: Dict[Tuple[int, int], object] = {}

    def add(key, p):
        entries[key] = entries[key] + p if key in entries else p

    for lineno, raw in lines:
        line = _strip(raw)
        if not line.strip():
            continue
        m = _PARAM.match(line) or re.match(r"^\s*let\s+([A-Za-z_]\w*)\s*()()=\s*(.+)$", line)
        if m:
            pname = m.group(1)
            if pname not in names:
                names.append(pname)
            if m.group(4):
                bound[pname] = _expr(m.group(4), (), lineno, line.find(m.group(4)), source).constant_value()
            continue
        m = _R.match(line)
        if not m:
            raise FormatError(f"cannot parse line: {line.strip()!r}", lineno, 1, source)
        kind, i, j = m.group(1), int(m.group(2)), int(m.group(3))
        for val, col in ((i, m.start(2)), (j, m.start(3))):
            if not 1 <= val <= dim:
                raise FormatError(f"index {val} out of range 1..{dim}", lineno, col + 1, source)
        if kind == "w" and grades is None:
            raise FormatError("wedge lines need a grading", lineno, 1, source)
        if grades is not None and grades[i - 1] != grades[j - 1]:
            raise FormatError(f"r^{{{i}{j}}} mixes parities; r must be even", lineno, m.start(2) + 1, source)
        # free family letters (a1, b3, ...) are allowed on top of declared names
        p = _expr(m.group(4), None, lineno, m.start(4), source)
        if bound:
            p = p.subs(bound)
        add((i, j), p)
        if kind == "w":
            odd = grades[i - 1] and grades[j - 1]
            add((j, i), p if odd else -p)
    return {k: _coef(v) for k, v in entries.items() if v}, names, bound


def parse_rmatrix(text: str, dim: int, source: str = "", grades=None):
    """Lines ``r i j = <expr>`` (and ``w i j`` wedge terms when ``grades`` is
    given) plus optional ``param``/``let`` bindings."""
    return _r_lines(_numbered(text), dim, grades, source)


_RPAIR_SECTIONS = ("pair", "base", "dual", "r", "rdual", "rfamily", "rdualfamily")


@dataclass
class RPairText:
    name: str
    defaults: Dict[str, GaussianRational]
    notes: List[str]
    base: AlgebraText
    dual: AlgebraText
    r: Dict[str, Dict[Tuple[int, int], object]]


def parse_rpair(text: str, source: str = "") -> RPairText:
    """A coboundary pair: [pair] header (name, note, ``default x = v``),
    [base]/[dual] as in .sbia, and r-matrix blocks [r], [rdual], [rfamily],
    [rdualfamily] in the ``r``/``w`` line syntax."""
    sections: Dict[str, List[Tuple[int, str]]] = {}
    current = None
    for lineno, raw in _numbered(text):
        stripped = _strip(raw).strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip()
            if current not in _RPAIR_SECTIONS:
                raise FormatError(f"unknown section [{current}]", lineno, 1, source)
            if current in sections:
                raise FormatError(f"duplicate section [{current}]", lineno, 1, source)
            sections[current] = []
            continue
        if current is None:
            if stripped:
                raise FormatError("content before the first section", lineno, 1, source)
            continue
        sections[current].append((lineno, raw))
    for sec in ("base", "dual"):
        if sec not in sections:
            raise FormatError(f"missing [{sec}] section", 1, 1, source)
    name, notes, defaults = "pair", [], {}
    for lineno, raw in sections.get("pair", []):
        line = _strip(raw)
        if not line.strip():
            continue
        m = re.match(r"^\s*default\s+([A-Za-z_]\w*)\s*=\s*(.+)$", line)
        if m:
            defaults[m.group(1)] = _expr(m.group(2), (), lineno, m.start(2), source).constant_value()
            continue
        m = _KV.match(line)
        if m and m.group(1) in ("name", "note"):
            val = m.group(2).strip().strip('"')
            if m.group(1) == "name":
                name = val
            else:
                notes.append(val)
            continue
        raise FormatError(f"cannot parse line: {line.strip()!r}", lineno, 1, source)
    base = _parse_block(sections["base"], source, "f")
    dual = _parse_block(sections["dual"], source, "ft", shared=base)
    rs = {}
    for sec in ("r", "rdual", "rfamily", "rdualfamily"):
        if sec in sections:
            rs[sec] = _r_lines(sections[sec], len(base.grades), base.grades, source,
                               dual.spec.names)[0]
    return RPairText(name, defaults, notes, base, dual, rs)


def parse_automorphism(text: str, source: str = ""):
    """``A = [[a,c,0,0],[0,b^2,0,0],...]`` with ``let a = 2`` bindings.

    Entries must be monomials (a constant times a product of parameters).
    Returns a 0-based matrix of Poly/GaussianRational and the bindings.
    """
    lets: Dict[str, GaussianRational] = {}
    matrix_src, matrix_line = None, 0
    for lineno, raw in _numbered(text):
        line = _strip(raw)
        if not line.strip():
            continue
        m = re.match(r"^\s*let\s+([A-Za-z_]\w*)\s*=\s*(.+)$", line)
        if m:
            lets[m.group(1)] = _expr(m.group(2), (), lineno, m.start(2), source).constant_value()
            continue
        m = re.match(r"^\s*A\s*=\s*(.+)$", line)
        if m:
            matrix_src, matrix_line = (m.group(1), m.start(1)), lineno
            continue
        raise FormatError(f"cannot parse line: {line.strip()!r}", lineno, 1, source)
    if matrix_src is None:
        raise FormatError("missing 'A = [[...]]' line", 1, 1, source)
    body, off = matrix_src
    body = body.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise FormatError("matrix must be written [[...],[...]]", matrix_line, off + 1, source)
    rows = []
    pos = off + body.find("[[") + 1
    for row_txt in body[2:-2].split("],"):
        row_txt = row_txt.strip().lstrip("[").rstrip("]")
        row = []
        for cell in row_txt.split(","):
            col = pos + 1
            p = _expr(cell, None, matrix_line, col, source)
            if len(p.terms) > 1:
                raise FormatError(f"entry {cell.strip()!r} is not a monomial", matrix_line, col, source)
            row.append(p)
            pos += len(cell) + 1
        rows.append(row)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise FormatError("matrix is not square", matrix_line, off + 1, source)
    free = set().union(*(p.variables() for r in rows for p in r)) - set(lets)
    if free:
        raise FormatError(f"unbound parameter(s) {', '.join(sorted(free))}", matrix_line, off + 1, source)
    values = [[p.subs(lets).constant_value() for p in r] for r in rows]
    return values, lets
