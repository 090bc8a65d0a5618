import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sba.hopf import PROP4
from sba.phasespace import (BOSONS, FERMIONS, UNDEFORMED, SuperFunction, casimir_realized,
                            check_canonical_brackets, check_involution, check_printed_h,
                            check_realization_closure, hamiltonian, poisson_bracket,
                            random_function, realization)


# -- an independent, deliberately naive model ---------------------------
# polynomials as {(q1, q2, p1, p2, lam exponents), odd index tuple}: Fraction;
# lambda is just one more even variable, truncated at LAM_MAX.

LAM_MAX = 2


def n_mul(f, g):
    out = {}
    for (ea, oa), ca in f.items():
        for (eb, ob), cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if e[4] > LAM_MAX or set(oa) & set(ob):
                continue
            seq = list(oa + ob)
            sgn = 1
            for i in range(len(seq)):          # bubble sort, one sign per swap
                for j in range(len(seq) - 1 - i):
                    if seq[j] > seq[j + 1]:
                        seq[j], seq[j + 1] = seq[j + 1], seq[j]
                        sgn = -sgn
            key = (e, tuple(seq))
            out[key] = out.get(key, 0) + sgn * ca * cb
    return {k: v for k, v in out.items() if v}


def n_add(*fs, scale=None):
    out = {}
    for i, f in enumerate(fs):
        s = 1 if scale is None else scale[i]
        for k, c in f.items():
            out[k] = out.get(k, 0) + s * c
    return {k: v for k, v in out.items() if v}


def n_var(name):
    if name in BOSONS or name == "lam":
        e = [0] * 5
        e[(BOSONS + ("lam",)).index(name)] = 1
        return {(tuple(e), ()): Fraction(1)}
    return {((0,) * 5, (FERMIONS.index(name),)): Fraction(1)}


def n_const(c):
    return {((0,) * 5, ()): Fraction(c)}


def n_d_even(f, i):
    out = {}
    for (e, o), c in f.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[(tuple(e2), o)] = out.get((tuple(e2), o), 0) + c * e[i]
    return out


def n_d_odd(f, a):
    out = {}
    for (e, o), c in f.items():
        if a in o:
            pos = o.index(a)
            rest = o[:pos] + o[pos + 1:]
            out[(e, rest)] = (-1) ** pos * c
    return out


def n_parity(f):
    ps = {len(o) % 2 for (_, o) in f}
    assert len(ps) <= 1
    return ps.pop() if ps else 0


def n_bracket(f, g):
    pf = n_parity(f)
    parts, signs = [], []
    for q, p in ((0, 2), (1, 3)):
        parts += [n_mul(n_d_even(f, q), n_d_even(g, p)), n_mul(n_d_even(f, p), n_d_even(g, q))]
        signs += [1, -1]
    s = -1 if pf == 0 else 1
    for xi, pi in ((0, 2), (1, 3)):
        parts += [n_mul(n_d_odd(f, xi), n_d_odd(g, pi)), n_mul(n_d_odd(f, pi), n_d_odd(g, xi))]
        signs += [s, s]
    return n_add(*parts, scale=signs)


def to_naive(F):
    out = {}
    for (e, o), s in F.terms.items():
        for n, c in enumerate(s.coeffs[:LAM_MAX + 1]):
            if c:
                out[(tuple(e) + (n,), tuple(o))] = Fraction(c)
    return out


def naive_deformed():
    v = {n: n_var(n) for n in BOSONS + FERMIONS + ("lam",)}
    u = n_mul(v["q1"], v["p2"])
    lam2u2 = n_mul(n_mul(v["lam"], v["lam"]), n_mul(u, u))
    shc = n_add(n_const(1), lam2u2, scale=[1, Fraction(1, 6)])
    Z = n_add(u, n_mul(v["xi1"], v["pi2"]), scale=[-1, -1])
    H = n_add(u, n_mul(v["xi1"], v["pi2"]), scale=[-1, 1])
    Qp = n_mul(v["q1"], v["pi2"])
    Qm = n_add(n_mul(n_mul(v["xi1"], v["p2"]), shc), n_mul(v["q1"], v["pi1"]),
               n_mul(v["q2"], v["pi2"]), scale=[-1, Fraction(1, 2), Fraction(1, 2)])
    return {"Z": Z, "H": H, "Q+": Qp, "Q-": Qm}


def naive_casimir(S):
    v_l2 = n_mul(n_var("lam"), n_var("lam"))
    H3 = n_mul(n_mul(S["H"], S["H"]), S["H"])
    sinh_h = n_add(S["H"], n_mul(v_l2, H3), scale=[1, Fraction(1, 6)])
    return n_add(n_mul(S["Z"], sinh_h), n_mul(S["Q+"], S["Q-"]), scale=[2, -2])


def test_naive_images_match_the_engine():
    R = realization(True, LAM_MAX)
    S = naive_deformed()
    for g in S:
        assert to_naive(R[g]) == S[g], g


def test_deformed_casimir_against_naive_substitution():
    S = naive_deformed()
    C = naive_casimir(S)
    assert to_naive(casimir_realized(realization(True, LAM_MAX))) == C
    want = SuperFunction.parse("2*q1^2*p2^2 + q1^2*pi1*pi2 - 2*q1*p2*xi1*pi2"
                               " + lam^2*(q1^4*p2^4/3 - q1^3*p2^3*xi1*pi2)", LAM_MAX)
    assert to_naive(want) == C
    for g in S:
        assert not n_bracket(C, S[g]), g


def test_naive_closure_of_odd_bracket():
    # {S(Q-), S(Q-)} = sinh(lambda h)/lambda to lambda^2, h = -q1 p2 + xi1 pi2
    S = naive_deformed()
    h = S["H"]
    h3 = n_mul(n_mul(h, h), h)
    want = n_add(h, n_mul(n_mul(n_var("lam"), n_var("lam")), h3), scale=[1, Fraction(1, 6)])
    assert n_bracket(S["Q-"], S["Q-"]) == want


# -- engine behaviour ----------------------------------------------------

def test_canonical_brackets():
    assert all(r.ok for r in check_canonical_brackets())
    q1, p1 = SuperFunction.var("q1"), SuperFunction.var("p1")
    xi1, pi1 = SuperFunction.var("xi1"), SuperFunction.var("pi1")
    assert poisson_bracket(q1, p1) == SuperFunction.constant(1)
    assert poisson_bracket(xi1, pi1) == SuperFunction.constant(1)
    assert poisson_bracket(pi1, xi1) == SuperFunction.constant(1)


def test_grassmann_rules():
    xi1, xi2 = SuperFunction.var("xi1"), SuperFunction.var("xi2")
    assert not xi1 * xi1
    assert xi1 * xi2 == -(xi2 * xi1)
    assert (xi1 * xi2).d("xi2") == -xi1
    assert (xi1 * xi2).parity() == 0 and xi1.parity() == 1


def test_undeformed_closure_and_casimir():
    assert all(r.ok for r in check_realization_closure(UNDEFORMED))
    C = casimir_realized(UNDEFORMED)
    assert C == SuperFunction.parse("2*q1^2*p2^2 - 2*q1*p2*xi1*pi2 + q1^2*pi1*pi2")
    labelled = {g: f for g, f in UNDEFORMED.images.items()}
    assert all(r.ok for r in check_involution(C, labelled))
    assert all(r.ok for r in check_involution(hamiltonian(UNDEFORMED, free=(0, 3, -1)), labelled))


@pytest.mark.parametrize("order", [2, 4])
def test_deformed_closure(order):
    R = realization(True, order)
    assert all(r.ok for r in check_realization_closure(R))
    assert all(r.ok for r in check_involution(hamiltonian(R), R.images))


def test_printed_image_of_h_does_not_close():
    R = realization(True, 2, printed=True)
    bad = [r for r in check_realization_closure(R) if not r.ok]
    assert [r.name for r in bad] == ["deformed (as printed) realization: {S(Q-), S(Q-)}"]
    assert bad[0].counterexample == (2, "q1^2*p2^2*xi1*pi2", Fraction(-1, 2))
    # and the printed expression equals sinh(lambda h)/lambda
    assert all(r.ok for r in check_printed_h(4))


def test_parser_errors():
    with pytest.raises(ValueError):
        SuperFunction.parse("q3 + 1")
    with pytest.raises(ValueError):
        SuperFunction.parse("q1 / p1")
    assert SuperFunction.parse("q1^2 - q1*q1") == SuperFunction.zero()


def _sgn(a, b):
    return -1 if a * b % 2 else 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
def test_bracket_axioms(seed, pf, pg, pk):
    rng = random.Random(seed)
    F, G, K = (random_function(rng, p, order=1) for p in (pf, pg, pk))
    # graded antisymmetry
    assert poisson_bracket(F, G) == -(poisson_bracket(G, F) * _sgn(pf, pg))
    # graded Jacobi
    J = (poisson_bracket(F, poisson_bracket(G, K)) * _sgn(pf, pk)
         + poisson_bracket(G, poisson_bracket(K, F)) * _sgn(pg, pf)
         + poisson_bracket(K, poisson_bracket(F, G)) * _sgn(pk, pg))
    assert not J
    # Leibniz
    assert poisson_bracket(F, G * K) == poisson_bracket(F, G) * K + (G * poisson_bracket(F, K)) * _sgn(pf, pg)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 1), st.integers(0, 1))
def test_engine_bracket_matches_naive(seed, pf, pg):
    rng = random.Random(seed)
    F, G = random_function(rng, pf, order=1), random_function(rng, pg, order=1)
    want = {k: c for k, c in n_bracket(to_naive(F), to_naive(G)).items() if k[0][4] <= 1}
    assert to_naive(poisson_bracket(F, G)) == want
