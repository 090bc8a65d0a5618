"""Shipped catalogs: the 36 (2|2) superalgebras, the dual structures on
(C3+A) and the coboundary pairs with their r-matrices.

Data live next to this file in ``algebras/``, ``duals/`` and ``pairs/``;
``SBA_CATALOG_DIR`` points the loader at another tree with the same layout.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List

from ..formats import AlgebraText, parse_rpair, parse_salg, parse_sbia, read_text
from ..graded import Grading
from ..superalgebra import SuperAlgebra, reflect_triangle

__all__ = [
    "catalog_dir", "catalog_load", "algebra_names", "algebra_from_text",
    "UnknownCatalogEntry", "dual_names", "load_pair", "pair_from_texts",
    "CoboundaryPair", "pair_names", "load_rpair",
]


class UnknownCatalogEntry(KeyError):
    pass


def catalog_dir() -> Path:
    env = os.environ.get("SBA_CATALOG_DIR")
    return Path(env) if env else Path(__file__).parent


def algebra_from_text(t: AlgebraText) -> SuperAlgebra:
    g = Grading(t.grades)
    f = reflect_triangle(g, t.entries, "ull")
    alg = SuperAlgebra(t.name, g, f, {}, t.spec, list(t.notes), t.labels)
    if t.bound:
        alg = SuperAlgebra(t.name, g, f, dict(t.bound), t.spec, list(t.notes), t.labels)
        if not alg.free_parameters():
            alg = alg.bind()
    return alg


def _key(name: str) -> str:
    return "".join(name.split()).lower()


@lru_cache(maxsize=None)
def _algebra_index(root: str) -> Dict[str, Path]:
    index: Dict[str, Path] = {}
    for path in sorted(Path(root, "algebras").glob("*.salg")):
        t = parse_salg(read_text(path), str(path))
        index[_key(t.name)] = path
        index[_key(path.stem)] = path
    return index


def algebra_names() -> List[str]:
    names = []
    for path in sorted(Path(catalog_dir(), "algebras").glob("*.salg")):
        names.append(parse_salg(read_text(path), str(path)).name)
    return names


def catalog_load(name: str, **params) -> SuperAlgebra:
    """Load a catalog algebra by display name or file stem; bind ``params``.

    Families whose parameters are not all supplied are returned unbound.
    """
    index = _algebra_index(str(catalog_dir()))
    path = index.get(_key(name))
    if path is None:
        raise UnknownCatalogEntry(f"unknown catalog algebra {name!r}")
    alg = algebra_from_text(parse_salg(read_text(path), str(path)))
    if params:
        alg = alg.bind(params)
    return alg


# ----------------------------------------------------------------------
# dual structures on (C3+A)

def pair_from_texts(base_t: AlgebraText, dual_t: AlgebraText):
    from ..bialgebra import DualStructure, SuperBialgebra
    base = algebra_from_text(base_t)
    d = algebra_from_text(dual_t)
    return SuperBialgebra(base, DualStructure(dual_t.name, d, list(dual_t.notes)))


@lru_cache(maxsize=None)
def _dual_index(root: str) -> Dict[str, Path]:
    index: Dict[str, Path] = {}
    for path in sorted(Path(root, "duals").glob("*.sbia")):
        _, d = parse_sbia(read_text(path), str(path))
        index[_key(d.name)] = path
        index[_key(path.stem)] = path
    return index


def dual_names(include_variants: bool = False) -> List[str]:
    names = []
    for path in sorted(Path(catalog_dir(), "duals").glob("*.sbia")):
        _, d = parse_sbia(read_text(path), str(path))
        if "variant" in d.notes and not include_variants:
            continue
        names.append(d.name)
    return names


def load_pair(name: str, **params):
    """A (C3+A) bialgebra from the dual catalog, optionally with bound parameters."""
    path = _dual_index(str(catalog_dir())).get(_key(name))
    if path is None:
        raise UnknownCatalogEntry(f"unknown dual structure {name!r}")
    bi = pair_from_texts(*parse_sbia(read_text(path), str(path)))
    if params:
        from ..bialgebra import DualStructure, SuperBialgebra
        bi = SuperBialgebra(bi.base, bi.dual.bind(params))
    return bi


# ----------------------------------------------------------------------
# coboundary pairs with their r-matrices

@dataclass
class CoboundaryPair:
    name: str
    bialgebra: object
    r: Dict[str, object]
    params: Dict[str, object]
    notes: List[str]

    def dual_algebra(self) -> SuperAlgebra:
        return self.bialgebra.dual.alg


def pair_names() -> List[str]:
    return [p.stem for p in sorted(Path(catalog_dir(), "pairs").glob("*.rpair"))]


def load_rpair(name: str, symbolic: bool = False, **params) -> CoboundaryPair:
    """A coboundary pair by stem (``row1`` .. ``row4``).

    Dual parameters not given fall back to the file's defaults, unless
    ``symbolic`` is set, in which case unbound ones stay letters (enough for
    Schouten brackets, not for the solvers).  The r-matrix letters
    (a1, e3, ...) always stay symbolic.
    """
    from ..bialgebra import SuperBialgebra
    from ..rmatrix import RMatrixElement
    path = Path(catalog_dir(), "pairs", f"{name}.rpair")
    if not path.exists():
        raise UnknownCatalogEntry(f"unknown coboundary pair {name!r}")
    t = parse_rpair(read_text(path), str(path))
    bi = pair_from_texts(t.base, t.dual)
    free = bi.dual.alg.free_parameters()
    values = {} if symbolic else {k: v for k, v in t.defaults.items() if k in free}
    values.update(params)
    if free and values:
        bi = SuperBialgebra(bi.base, bi.dual.bind(values))
    g = bi.grading
    rs = {key: RMatrixElement(g, coeffs, key).bind(values) for key, coeffs in t.r.items()}
    return CoboundaryPair(t.name, bi, rs, values, list(t.notes))
