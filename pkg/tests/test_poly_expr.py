import pytest
from hypothesis import given, strategies as st

from sba.expr import ExprError, parse_expr, parse_value
from sba.poly import Poly, var
from sba.scalars import G, I


def test_caret_binds_like_power():
    # "^" is exponentiation and binds tighter than unary minus and division
    assert parse_expr("-a1^2/2") == -(var("a1") ** 2) / 2
    assert parse_expr("2^3").constant_value() == G(8)
    assert parse_expr("a^2*b") == var("a") ** 2 * var("b")


def test_implicit_i():
    assert parse_expr("3i*k") == var("k") * G(0, 3)
    assert parse_value("-i") == -I
    assert parse_value("1/2+3/4*i") == G("1/2+3/4*i")


def test_declared_names_only():
    with pytest.raises(ExprError):
        parse_expr("eps + q", params=("eps",))
    assert parse_expr("eps + 1", params=("eps",)).variables() == {"eps"}


@pytest.mark.parametrize("bad", ["", "1 +", "x.y", "f(2)", "1.5", "a ** b"])
def test_rejects(bad):
    with pytest.raises(ExprError):
        parse_expr(bad)


def test_reduce_signs():
    p = parse_expr("eps^3/2 + k*eps^2/8")
    assert p.reduce_signs(["eps"]) == parse_expr("eps/2 + k/8")
    assert p.reduce_signs([]) == p


def test_subs_and_evaluate():
    p = parse_expr("k*(eps + k/4)")
    assert p.subs({"eps": 1, "k": 2}).constant_value() == G(3)
    assert p.subs({"eps": -1}) == parse_expr("-k + k^2/4")
    assert str(parse_expr("a1^2 - 2*a1")) == "a1^2 - 2*a1"


small = st.integers(-5, 5)


@given(small, small, small, small)
def test_poly_matches_numbers(a, b, x, y):
    p = var("x") * a + var("y") ** 2 * b
    q = var("x") - var("y")
    val = {"x": x, "y": y}
    assert (p * q).evaluate(val) == (a * x + b * y * y) * (x - y)
    assert (p + q).evaluate(val) == a * x + b * y * y + x - y
    assert Poly.lift(3) * p == p + p + p
