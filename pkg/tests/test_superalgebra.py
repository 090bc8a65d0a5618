import random

import pytest

from sba.catalog import algebra_names, catalog_load
from sba.graded import Grading
from sba.linalg import matmul
from sba.params import ParameterError
from sba.rmatrix import ad_matrices
from sba.scalars import G, I, ZERO
from sba.superalgebra import (SuperAlgebra, adjoint_reps, bracket_vectors, check_antisymmetry,
                              check_super_jacobi, jacobi_violations)


def base():
    return catalog_load("(C3+A)")


def test_catalog_has_36_families():
    assert len(algebra_names()) == 36


@pytest.mark.parametrize("name", algebra_names())
def test_every_catalog_algebra_is_a_superalgebra(name):
    alg = catalog_load(name)
    for a in alg.sample(random.Random(1), 3):
        assert check_super_jacobi(a).ok
        assert check_antisymmetry(a.f, a.name).ok


def test_broken_algebra_is_caught():
    # [X1, X2] = X1 together with {X3, X3} = X1 breaks Jacobi on (X2, X3, X3)
    bad = SuperAlgebra.from_brackets("bad", [0, 0, 1, 1], {(1, 2): {1: 1}, (3, 3): {1: 1}})
    r = check_super_jacobi(bad)
    assert not r.ok and r.counterexample is not None
    assert jacobi_violations(bad)


def test_parity_selection_rule():
    with pytest.raises(ValueError):
        SuperAlgebra.from_brackets("odd", [0, 0, 1, 1], {(1, 2): {3: 1}})


def _commutator(a, b, pa, pb):
    ab, ba = matmul(a, b), matmul(b, a)
    s = -1 if pa and pb else 1
    return [[x - ba[r][c] * s for c, x in enumerate(row)] for r, row in enumerate(ab)]


@pytest.mark.parametrize("name", ["(C3+A)", "(2A_{1,1}+2A)^3_p", "C^3+A_{1,1}"])
def test_ad_is_a_representation(name):
    alg = catalog_load(name).sample(random.Random(2), 1)[0]
    Y = ad_matrices(alg)
    g = alg.grading
    for i in g.indices():
        for j in g.indices():
            lhs = _commutator(Y[i - 1], Y[j - 1], g(i), g(j))
            rhs = [[ZERO] * 4 for _ in range(4)]
            for k, c in alg.bracket(i, j).items():
                for r in range(4):
                    for s in range(4):
                        rhs[r][s] = rhs[r][s] + c * Y[k - 1][r][s]
            assert lhs == rhs, (i, j)


def test_adjoint_matrices_are_structure_constants():
    alg = base()
    for i, m in enumerate(adjoint_reps(alg), start=1):
        for j in range(4):
            for k in range(4):
                assert m[j][k] == -alg.structure_constant(i, j + 1, k + 1)


def test_base_brackets():
    alg = base()
    assert alg.bracket(1, 4) == {3: G(1)}
    assert alg.bracket(4, 1) == {3: G(-1)}
    assert alg.bracket(4, 4) == {2: I}
    assert bracket_vectors(alg, {1: G(2)}, {4: G(3)}) == {3: G(6)}


def test_binding_is_validated():
    fam = catalog_load("(2A_{1,1}+2A)^3_p")
    assert fam.free_parameters() == ["p"]
    with pytest.raises(ParameterError):
        fam.bind(p=-1)
    with pytest.raises(ParameterError):
        fam.bind(q=1)
    with pytest.raises(ParameterError):
        fam.require_bound()
    assert not fam.bind(p=2).is_symbolic()
