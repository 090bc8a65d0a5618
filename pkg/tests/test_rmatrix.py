import pytest

from sba.catalog import load_rpair, pair_names
from sba.graded import GradedTensor
from sba.rmatrix import (NOT_GCYBE, QUASI_TRIANGULAR, TRIANGULAR, RMatrixElement,
                         classify_triangularity, coboundary_delta, coboundary_matrix_form,
                         coboundary_tensor, is_ad_invariant3, schouten_bracket, schouten_wedge,
                         skew_part, solve_coboundary, solve_coboundary_dual)
from sba.scalars import G
from sba.superalgebra import SuperAlgebra

ROW4 = dict(eps=1, k=2)


def pair(name):
    return load_rpair(name, **(ROW4 if name == "row4" else {}))


def test_four_pairs():
    assert pair_names() == ["row1", "row2", "row3", "row4"]


@pytest.mark.parametrize("name", ["row1", "row2", "row3", "row4"])
def test_skew_r_induces_the_dual(name):
    p = pair(name)
    bi = p.bialgebra
    r = p.r["r"]
    assert r.is_skew() and r.is_even()
    assert coboundary_delta(r, bi.base).alg.f == bi.dual.alg.f


@pytest.mark.parametrize("name", ["row1", "row2", "row3", "row4"])
def test_solver_contains_printed_r(name):
    p = pair(name)
    fam = solve_coboundary(p.bialgebra)
    assert fam is not None and fam.contains(p.r["r"].bind({v: 0 for v in p.r["r"].variables()}))
    assert fam.same_space(p.r["rfamily"])


@pytest.mark.parametrize("name", ["row2", "row4"])
def test_dual_side(name):
    p = pair(name)
    fam = solve_coboundary_dual(p.bialgebra)
    assert fam is not None and fam.same_space(p.r["rdualfamily"])


@pytest.mark.parametrize("name", ["row1", "row2", "row3", "row4"])
def test_matrix_and_tensor_coboundary_agree(name):
    p = pair(name)
    alg = p.bialgebra.base
    r = p.r["r"].bind({v: 3 for v in p.r["r"].variables()})
    for i, m in enumerate(coboundary_matrix_form(r, alg), start=1):
        t = coboundary_tensor(r, alg, i)
        for a in range(4):
            for b in range(4):
                assert m[a][b] == t.get(a + 1, b + 1)


@pytest.mark.parametrize("name", ["row1", "row2", "row3", "row4"])
def test_schouten_of_a_solution_is_ad_invariant(name):
    # delta_r obeys the dual Jacobi identity, so [[r, r]] must be invariant
    p = pair(name)
    r = p.r["r"].bind({v: 2 for v in p.r["r"].variables()})
    assert is_ad_invariant3(schouten_bracket(r, p.bialgebra.base), p.bialgebra.base)


def test_row4_schouten_cell():
    p = load_rpair("row4", symbolic=True)
    w = schouten_wedge(schouten_bracket(p.r["r"], p.bialgebra.base))
    assert list(w) == [(2, 3, 3)]
    for eps, k in [(1, 2), (-1, 4), (-1, 1)]:
        got = w[(2, 3, 3)].subs({"eps": eps, "k": k}).constant_value()
        assert got == G(k) * (G(eps) + G(k) / 4) / 2


def test_triangularity_verdicts():
    assert classify_triangularity(pair("row2").r["r"], pair("row2").bialgebra.base) == TRIANGULAR
    assert classify_triangularity(pair("row3").r["r"], pair("row3").bialgebra.base) == QUASI_TRIANGULAR
    p = load_rpair("row4", eps=-1, k=4)
    assert classify_triangularity(p.r["r"], p.bialgebra.base) == TRIANGULAR


def test_non_gcybe_and_skew_part():
    base = pair("row1").bialgebra.base
    g = base.grading
    r = RMatrixElement.from_terms(g, wedges=[(G(1), 4, 4)])
    # [[r, r]] = -2 X2^X4^X4, not invariant under ad X1
    assert classify_triangularity(r, base) == NOT_GCYBE
    r = RMatrixElement.from_terms(g, wedges=[(G(1), 3, 4)])
    assert classify_triangularity(r, base) == QUASI_TRIANGULAR
    nonskew = RMatrixElement(g, {(1, 2): G(1)})
    with pytest.raises(ValueError):
        classify_triangularity(nonskew, base)
    s = skew_part(nonskew)
    assert s.is_skew() and s[(1, 2)] == G(1, 0) / 2 and s[(2, 1)] == -G(1) / 2


def test_abelian_schouten_vanishes():
    ab = SuperAlgebra.from_brackets("abelian", [0, 0, 1, 1], {})
    r = RMatrixElement.from_terms(ab.grading, wedges=[(G(1), 1, 2), (G(5), 3, 3)])
    assert not schouten_bracket(r, ab)
