import itertools

import pytest
from hypothesis import given, strategies as st

from sba.graded import (GradedTensor, Grading, factor_wedge3, graded_flip, is_super_antisymmetric3,
                        koszul_sign, sign, supertranspose, wedge, wedge3)
from sba.scalars import G, ONE

STD = Grading.standard()
idx = st.integers(1, 4)


def test_grading_basics():
    assert STD.grades == (0, 0, 1, 1)
    assert STD.superdimension() == (2, 2)
    assert [STD(i) for i in STD.indices()] == [0, 0, 1, 1]
    assert (STD + STD).dim == 8
    assert sign(3) == -1 and sign(4) == 1


def test_tensor_rejects_bad_keys():
    with pytest.raises(ValueError):
        GradedTensor(STD, "uu", {(1, 5): 1})
    with pytest.raises(ValueError):
        GradedTensor(STD, "uu", {(1, 2, 3): 1})


def test_zero_entries_dropped():
    t = GradedTensor(STD, "uu", {(1, 2): 1}) - GradedTensor(STD, "uu", {(1, 2): 1})
    assert not t and t.nonzero() == 0


@given(idx, idx)
def test_wedge_graded_antisymmetry(i, j):
    w = wedge(i, j, STD)
    s = sign(STD(i) * STD(j))
    assert w + wedge(j, i, STD).scale(G(s)) == GradedTensor(STD, "uu")
    # the graded flip of a wedge is minus itself
    assert graded_flip(w) == -w


def test_odd_square_is_nonzero():
    assert wedge(3, 3, STD)[(3, 3)] == G(2)
    assert not wedge(1, 1, STD)


@given(idx, idx, idx)
def test_wedge3_is_antisymmetric_and_factors(i, j, k):
    t = wedge3(i, j, k, STD)
    assert is_super_antisymmetric3(t)
    if t:
        key = tuple(sorted((i, j, k)))
        coeffs = factor_wedge3(t)
        assert set(coeffs) == {key}


def test_factor_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        factor_wedge3(GradedTensor(STD, "uuu", {(1, 2, 3): 1}))


def test_supertranspose_twice():
    m = [[G(4 * r + c) for c in range(4)] for r in range(4)]
    st2 = supertranspose(supertranspose(m, STD), STD)
    # (M^st)^st flips the sign of both mixed blocks
    for r, c in itertools.product(range(4), repeat=2):
        s = -1 if STD.grades[r] != STD.grades[c] else 1
        assert st2[r][c] == m[r][c] * s


def test_koszul_sign():
    # (a (x) b)(c (x) d): only |b||c| matters
    assert koszul_sign([1, 1], [1, 1]) == -1
    assert koszul_sign([1, 0], [1, 1]) == 1
    assert koszul_sign([0, 1], [0, 1]) == 1
