"""One test per acceptance criterion.

Each test runs the same check records ``sba verify-all`` prints.  Two groups of
records are known to disagree with printed reference values; for those the
test pins the engine's verdict (FAIL) rather than the printed one, see
``EXPECTED_FAILURES``.
"""

import pytest

from sba.acceptance import CRITERIA, run_criterion

# Row 4 skew r: the engine finds (1/2)k(eps + k/4) X2^X3^X3, the printed
# value is k(eps + k/4).  They agree only where the cell vanishes (eps=-1, k=4).
_ROW4 = [f"row4 (eps={e}, k={k}): Schouten bracket of the skew r"
         for e, k in [(1, 1), (1, 2), (-1, 2), (1, "1/2"), (-1, 3)]]

EXPECTED_FAILURES = {
    6: set(_ROW4),
    # the printed image of H is sinh(lambda h)/lambda and does not close the relations
    10: {"deformed realization with the printed S(H) as image of H"},
}


@pytest.fixture(scope="module")
def results():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = run_criterion(n, order=6, samples=10, seed=0)
        return cache[n]
    return get


def _check(results, n):
    recs = results(n)
    assert recs, f"criterion {n} produced no checks"
    failing = {r.name for r in recs if r.verdict != "pass"}
    assert failing == EXPECTED_FAILURES.get(n, set()), \
        "\n".join(r.line() for r in recs if r.verdict != "pass")


def test_criterion_01_catalog_validity(results):
    _check(results, 1)


def test_criterion_02_adjoint_fidelity(results):
    _check(results, 2)


def test_criterion_03_automorphism_family(results):
    _check(results, 3)


def test_criterion_04_four_case_dual_classification(results):
    _check(results, 4)


def test_criterion_05_dual_catalog_completeness(results):
    _check(results, 5)
    rows = [r for r in results(5) if r.name.startswith("dual row ")]
    assert len(rows) == 31


def test_criterion_06_r_matrices_and_schouten(results):
    _check(results, 6)
    for r in results(6):
        if r.name in _ROW4:
            assert "(1/2)k(eps+k/4)" in r.detail
    assert any(r.name == "row4 (eps=-1, k=4): Schouten bracket of the skew r" and r.ok
               for r in results(6))


def test_criterion_07_non_coboundary_rows(results):
    _check(results, 7)
    assert len(results(7)) == 31


def test_criterion_08_drinfeld_doubles(results):
    _check(results, 8)


def test_criterion_09_hopf_axioms(results):
    _check(results, 9)


def test_criterion_10_phase_superspace(results):
    _check(results, 10)


def test_criterion_11_property_suite(results):
    _check(results, 11)


def test_every_criterion_has_a_test():
    assert sorted(CRITERIA) == list(range(1, 12))
