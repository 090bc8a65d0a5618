import random

import pytest

from sba.acceptance import random_dual
from sba.bialgebra import (DualStructure, SuperBialgebra, THEOREM1_CASES, check_bialgebra,
                           check_cocycle, check_double, check_dual_jacobi, check_mixed_jacobi,
                           cocommutator, drinfeld_double, form_disagreements, mixed_jacobi_matrix,
                           mixed_jacobi_tensor, solve_mixed_linear, theorem1_dual, verify_theorem1)
from sba.catalog import catalog_load, dual_names, load_pair
from sba.scalars import G, I


def base():
    return catalog_load("(C3+A)")


@pytest.mark.parametrize("name", dual_names())
def test_catalog_duals_are_bialgebras(name):
    bi = load_pair(name)
    for d in (bi.dual.sample(random.Random(4), 2) if bi.dual.is_symbolic() else [bi.dual]):
        assert all(r.ok for r in check_bialgebra(SuperBialgebra(bi.base, d))), d.name


def test_mixed_jacobi_and_cocycle_agree_on_random_duals():
    # the mixed identity and the one-cocycle condition are the same statement
    rng = random.Random(5)
    seen = {True: 0, False: 0}
    for _ in range(150):
        bi = SuperBialgebra(base(), random_dual(rng))
        mixed = check_mixed_jacobi(bi).ok
        assert mixed == check_cocycle(bi).ok
        seen[mixed] += 1
    assert seen[False] > 0


def test_tensor_and_matrix_forms_agree():
    rng = random.Random(6)
    for _ in range(30):
        bi = SuperBialgebra(base(), random_dual(rng))
        assert form_disagreements(bi) == []
        t, m = mixed_jacobi_tensor(bi), mixed_jacobi_matrix(bi)
        assert set(t) == set(m)


def test_zero_dual_is_trivially_fine():
    d = DualStructure.zero(base().grading)
    bi = SuperBialgebra(base(), d)
    assert all(r.ok for r in check_bialgebra(bi))
    assert all(not cocommutator(bi, i) for i in bi.grading.indices())


def test_bad_dual_is_rejected():
    # a lone ft^{11}_... entry is not allowed; ft^{12}_1 = 1 breaks the mixed identity
    d = DualStructure.from_entries("bad", [0, 0, 1, 1], {(1, 2, 1): 1})
    bi = SuperBialgebra(base(), d)
    assert not check_mixed_jacobi(bi).ok


@pytest.mark.parametrize("case", sorted(THEOREM1_CASES))
def test_four_cases(case):
    r = verify_theorem1(case, base(), samples=5, rng=random.Random(case))
    assert r.ok and r.samples == 5


def test_case_exclusion():
    with pytest.raises(ValueError):
        theorem1_dual(3, {"t331": 1, "t341": 0, "t233": 1}, base().grading)


def test_linear_solution_contains_the_cases():
    sol = solve_mixed_linear(base())
    rng = random.Random(7)
    for case in sorted(THEOREM1_CASES):
        vals = {v: G(rng.randint(1, 5), rng.randint(-2, 2)) for v in THEOREM1_CASES[case]["free"]}
        assert sol.contains(theorem1_dual(case, vals, base().grading))


def test_double_of_catalog_pair():
    bi = load_pair("(C3+A)^eps_k", eps=-1, k=3)
    D, form = drinfeld_double(bi)
    assert D.grading.grades == (0, 0, 1, 1, 0, 0, 1, 1)
    assert not form.is_degenerate() and form.supersymmetry_violation() is None
    assert all(r.ok for r in check_double(bi))


def test_double_of_broken_pair_fails():
    d = DualStructure.from_entries("bad", [0, 0, 1, 1], {(1, 2, 1): 1})
    assert not all(r.ok for r in check_double(SuperBialgebra(base(), d)))
