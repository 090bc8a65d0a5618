import random
from fractions import Fraction

import pytest

from sba.hopf import (GENERATORS, ONE_M, PROP4, PROP5, PROP6, UElem, check_casimir_central,
                      check_cocommutator_match, check_hopf_axioms, check_hopf_axioms_by_order,
                      deformation, normal_form, normal_form_word)
from sba.series import LambdaSeries

ORDER = 4
ALL = [PROP4, PROP5, PROP6]


@pytest.mark.parametrize("d", ALL, ids=lambda d: d.name)
def test_axioms_hold_order_by_order(d):
    results = check_hopf_axioms_by_order(d, ORDER)
    assert len(results) == 4 * (ORDER + 1)
    assert all(r.ok for r in results), [r.line() for r in results if not r.ok]


@pytest.mark.parametrize("d", ALL, ids=lambda d: d.name)
def test_casimir_is_central(d):
    assert all(r.ok for r in check_casimir_central(d, ORDER))


@pytest.mark.parametrize("d", ALL, ids=lambda d: d.name)
def test_cocommutator_matches_catalog(d):
    assert all(r.ok for r in check_cocommutator_match(d))


def test_printed_antipode_variant_fails_at_lowest_order():
    d = deformation("prop5-printed")
    bad = [r for r in check_hopf_axioms(d, 2) if not r.ok]
    assert [r.name for r in bad] == ["prop5-printed: antipode"]
    assert bad[0].counterexample == ("Q+ left", 0)


def test_unknown_deformation():
    with pytest.raises(KeyError):
        deformation("prop7")


def _slice0(d, g):
    dg = d.delta_gen(g, ORDER)
    return {k: c for k, c in ((k, s.coeffs[0]) for k, s in dg.terms.items()) if c}


@pytest.mark.parametrize("d", [PROP4, PROP6], ids=lambda d: d.name)
def test_classical_limit_is_primitive(d):
    for g, m in GENERATORS.items():
        assert _slice0(d, g) == {(m, ONE_M): 1, (ONE_M, m): 1}, g


def test_second_quantization_keeps_a_classical_term():
    # Delta(Q-) = Q- (x) 1 + 1 (x) Q- - Q+ (x) H + O(lambda)
    QP, QM, H = GENERATORS["Q+"], GENERATORS["Q-"], GENERATORS["H"]
    assert _slice0(PROP5, "Q-") == {(QM, ONE_M): 1, (ONE_M, QM): 1, (QP, H): -1}


def test_odd_square_is_half_phi():
    # {Q-, Q-} = 2 Q-^2 = phi(H); for the first quantization phi(H) = sinh(lambda H)/lambda
    x = normal_form(["Q-", "Q-"], PROP4, ORDER)
    want = UElem(1, ORDER)
    for p, hp, c in PROP4.phi(ORDER):
        want.add_term(((0, hp, 0, 0),), LambdaSeries.monomial(Fraction(c, 2), p, ORDER))
    assert not (x - want)


@pytest.mark.parametrize("d", ALL, ids=lambda d: d.name)
def test_normal_form_is_confluent(d):
    rng = random.Random(11)
    gens = list(GENERATORS)
    for _ in range(25):
        word = [rng.choice(gens) for _ in range(rng.randint(2, 5))]
        ref = normal_form(word, d, 3)
        assert not (normal_form_word(word, d, 3, rng) - ref), word


def test_even_generators_commute():
    for d in ALL:
        assert not (normal_form(["H", "Z"], d, ORDER) - normal_form(["Z", "H"], d, ORDER))
        assert not (normal_form(["Q+", "H"], d, ORDER) - normal_form(["H", "Q+"], d, ORDER))
