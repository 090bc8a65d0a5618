import random

from sba.acceptance import resolved_duals
from sba.automorphism import solve_automorphism_family, transform_dual
from sba.catalog import catalog_load, load_pair
from sba.equivalence import FOUND, INEQUIVALENT, equivalence_search, fingerprint
from sba.linalg import matmul
from sba.scalars import G, ZERO


def family():
    return solve_automorphism_family(catalog_load("(C3+A)"))


def test_transported_dual_is_found_with_witness():
    fam = family()
    d1 = load_pair("(C3+A)^eps_k", eps=1, k=3).dual
    z = ZERO
    A = [[G(2), G(1), z, z], [z, G(9), z, z], [z, z, G(6), z], [z, z, G(5), G(3)]]
    d2 = transform_dual(A, d1)
    r = equivalence_search(d1, d2, fam)
    assert r.outcome == FOUND
    assert transform_dual(r.witness, d1).alg.f == d2.alg.f
    assert all(not x.im for row in r.witness for x in row)


def test_fingerprint_is_invariant():
    rng = random.Random(8)
    fam = family()
    for name in ["(C3+A)^eps_k", "C^3+A_{1,1}.i", "D^{1,eps}_{p,p-1}"]:
        d = load_pair(name).dual
        if d.is_symbolic():
            d = d.sample(rng, 1)[0]
        for _ in range(3):
            _, A = fam.sample(rng)
            assert fingerprint(transform_dual(A, d)) == fingerprint(d)


def test_rows_with_distinct_k_differ():
    fam = family()
    a = load_pair("(C3+A)^eps_k", eps=1, k=1).dual
    b = load_pair("(C3+A)^eps_k", eps=1, k=2).dual
    assert equivalence_search(a, b, fam).outcome != FOUND


def test_distinct_rows_sample():
    rows = resolved_duals(random.Random(0))
    assert len(rows) == 31
    fam = family()
    (n1, _, b1), (n2, _, b2) = rows[0], rows[5]
    assert equivalence_search(b1.dual, b2.dual, fam).outcome == INEQUIVALENT
