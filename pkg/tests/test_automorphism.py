import random

from hypothesis import given, settings, strategies as st

from sba.automorphism import (check_pairing_preserved, is_automorphism, solve_automorphism_family,
                              transform_dual, transform_dual_by_substitution)
from sba.bialgebra import SuperBialgebra, check_bialgebra
from sba.catalog import catalog_load, load_pair
from sba.scalars import G, ZERO

from conftest import nonzero_gaussians, gaussians


def family_matrix(a, b, c, d):
    z = ZERO
    return [[a, c, z, z], [z, b * b, z, z], [z, z, a * b, z], [z, z, d, b]]


@settings(max_examples=40)
@given(nonzero_gaussians, nonzero_gaussians, gaussians, gaussians)
def test_family_members_are_automorphisms(a, b, c, d):
    assert is_automorphism(family_matrix(a, b, c, d), catalog_load("(C3+A)")).ok


def test_off_family_matrix_fails():
    A = family_matrix(G(1), G(1), ZERO, ZERO)
    A[1][1] = G(2)  # b^2 entry no longer matches
    r = is_automorphism(A, catalog_load("(C3+A)"))
    assert not r.ok


def test_parity_mixing_matrix_fails():
    A = family_matrix(G(1), G(1), ZERO, ZERO)
    A[0][2] = G(1)
    assert not is_automorphism(A, catalog_load("(C3+A)")).ok


def test_solved_family_shape():
    fam = solve_automorphism_family(catalog_load("(C3+A)"))
    assert fam.exact
    assert sorted(fam.free) == ["a", "b", "c", "d"]
    assert sorted(fam.nonzero) == ["a", "b"]


def test_transport_keeps_bialgebra_identities():
    rng = random.Random(3)
    fam = solve_automorphism_family(catalog_load("(C3+A)"))
    bi = load_pair("(C3+A)^eps_k", eps=1, k=2)
    for _ in range(5):
        _, A = fam.sample(rng)
        d2 = transform_dual(A, bi.dual)
        assert d2.alg.f == transform_dual_by_substitution(A, bi.dual).alg.f
        assert all(r.ok for r in check_bialgebra(SuperBialgebra(bi.base, d2)))
        assert check_pairing_preserved(A, bi.grading).ok
