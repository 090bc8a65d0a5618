from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from sba.scalars import G, I, ONE, ZERO, GaussianRational, format_scalar, parse_scalar
from sba.series import LambdaSeries, exp_coeffs, one_minus_exp_over_2lambda, sinh_over_lambda

from conftest import fractions, gaussians, nonzero_gaussians


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a * ONE == a


@given(nonzero_gaussians)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert ONE / a == a.inverse()


@given(gaussians)
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


@pytest.mark.parametrize("text,want", [
    ("i", I), ("-i", -I), ("3i", G(0, 3)), ("-1/4*i", G(0, Fraction(-1, 4))),
    ("1/2+3/4*i", G(Fraction(1, 2), Fraction(3, 4))), (" 7 ", G(7)),
])
def test_parse_forms(text, want):
    assert parse_scalar(text) == want


@pytest.mark.parametrize("bad", ["", "1//2", "x", "1+", "1/0"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_i_squared_and_conjugate():
    assert I * I == -ONE
    z = G(2, -3)
    assert z * z.conjugate() == G(13)
    assert z.norm() == 13
    assert hash(G(Fraction(2, 4))) == hash(G(Fraction(1, 2)))


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


# -- truncated series in lambda ---------------------------------------

series = st.lists(fractions, min_size=1, max_size=7).map(lambda c: LambdaSeries(c, 6))


@given(series, series, series)
def test_series_ring(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).first_nonzero() == -1


def test_series_truncates():
    x = LambdaSeries.monomial(1, 4, 6)
    assert not x * x
    assert (x * LambdaSeries.monomial(1, 2, 6)).coeffs[6] == 1


def test_expansion_tables():
    # sinh(u)/u and e^{su} against the factorial formulas
    assert sinh_over_lambda(4) == [(0, 1, 1), (2, 3, Fraction(1, 6)), (4, 5, Fraction(1, 120))]
    for n, h, c in exp_coeffs(Fraction(-2), 5, extra_h=1):
        assert h == n + 1 and c == Fraction((-2) ** n, factorial(n))
    # (1 - e^{-2u})/2 = u - u^2 + 2u^3/3 - ...
    first = one_minus_exp_over_2lambda(3)[:3]
    assert first == [(0, 1, 1), (1, 2, -1), (2, 3, Fraction(2, 3))]
