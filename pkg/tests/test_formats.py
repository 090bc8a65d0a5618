import shutil

import pytest

from sba.catalog import (UnknownCatalogEntry, algebra_from_text, catalog_dir, catalog_load,
                         dual_names, load_pair, load_rpair)
from sba.formats import FormatError, parse_automorphism, parse_rmatrix, parse_salg, parse_sbia
from sba.scalars import G, I

GOOD = """\
name = "toy"
grades = 0 0 1 1
# comment
param p
require p > 0
f 3 1 4 = p
f 2 4 4 = i
"""


def test_parse_salg():
    t = parse_salg(GOOD, "toy.salg")
    alg = algebra_from_text(t)
    assert alg.name == "toy" and alg.free_parameters() == ["p"]
    assert alg.bind(p=3).bracket(1, 4) == {3: G(3)}
    assert alg.bind(p=3).bracket(4, 4) == {2: I}


@pytest.mark.parametrize("text,line,col", [
    (GOOD + "f 1 2 9 = 1\n", 8, None),
    (GOOD + "f 1 2 3 = q\n", 8, None),
    (GOOD + "nonsense\n", 8, 1),
    (GOOD.replace("grades = 0 0 1 1", "grades = 0 0 2 1"), 2, None),
    (GOOD + "f 1 2 1 = (1\n", 8, None),
])
def test_errors_carry_positions(text, line, col):
    with pytest.raises(FormatError) as exc:
        algebra_from_text(parse_salg(text, "bad.salg"))
    assert exc.value.line == line
    assert exc.value.column >= 1
    if col is not None:
        assert exc.value.column == col
    assert str(exc.value).startswith(f"bad.salg:{line}:")


def test_parity_violation_is_reported():
    with pytest.raises((FormatError, ValueError)):
        algebra_from_text(parse_salg(GOOD + "f 3 1 2 = 1\n", "bad.salg"))


def test_sbia_needs_both_sections():
    with pytest.raises(FormatError):
        parse_sbia("[base]\n" + GOOD, "x.sbia")


def test_rmatrix_lines():
    coeffs, names, bound = parse_rmatrix("let t = 2\nw 1 2 = t\nr 3 4 = 1/2\n", 4, "r.txt",
                                         (0, 0, 1, 1))
    assert coeffs[(1, 2)] == G(2) and coeffs[(2, 1)] == G(-2)
    assert coeffs[(3, 4)] == G(1, 0) / 2
    with pytest.raises(FormatError):
        parse_rmatrix("r 1 3 = 1\n", 4, "r.txt", (0, 0, 1, 1))


def test_automorphism_file():
    A, lets = parse_automorphism("let a = 2\nA = [[a,0,0,0],[0,1,0,0],[0,0,a,0],[0,0,0,1]]\n")
    assert A[0][0] == G(2) and lets == {"a": G(2)}
    with pytest.raises(FormatError) as exc:
        parse_automorphism("A = [[a+1,0],[0,1]]\n", "m.txt")
    assert exc.value.line == 1


def test_unknown_entries():
    with pytest.raises(UnknownCatalogEntry):
        catalog_load("no such thing")
    with pytest.raises(UnknownCatalogEntry):
        load_rpair("row9")


def test_catalog_lookup_by_name_or_stem():
    # display names ignore case and whitespace; file stems work too
    ref = catalog_load("(C3+A)")
    assert catalog_load(" (c3 + a) ").f == ref.f
    assert catalog_load("C3_A").f == ref.f


def test_dual_rows():
    names = dual_names()
    assert "I_(2,2)" in names and "(C3+A)^eps_k" in names
    bi = load_pair("(C3+A)^eps_k", eps=-1, k=5)
    assert bi.dual.alg.params == {"eps": G(-1), "k": G(5)}


def test_catalog_dir_override(tmp_path, monkeypatch):
    shutil.copytree(catalog_dir(), tmp_path / "cat")
    (tmp_path / "cat" / "algebras" / "extra.salg").write_text(
        'name = "extra"\ngrades = 0 0 1 1\nf 1 3 3 = 1\n')
    monkeypatch.setenv("SBA_CATALOG_DIR", str(tmp_path / "cat"))
    assert catalog_load("extra").bracket(3, 3) == {1: G(1)}
