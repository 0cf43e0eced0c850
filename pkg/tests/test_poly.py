from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from noether_forge.curve import expand_at
from noether_forge.errors import ParseError
from noether_forge.poly import order_at, parse_polynomial, parse_rational, parse_rational_function, poly, taylor


def test_expand_examples():
    assert expand_at("t*(t-1)^3", 1, 4) == [0, 0, 0, 1, 1]
    assert expand_at("t", 0, 1) == [0, 1]
    assert expand_at("t^2", 1, 2) == [1, 2, 1]


def test_expand_rejects_order_zero():
    with pytest.raises(ValueError):
        expand_at("t", 0, 0)


def test_parser_grammar():
    assert parse_polynomial("2*t^3 - t/2 + 3/4") == poly("2*t**3 - t/2 + 3/4")
    assert parse_polynomial("x^2") == poly("t**2")
    f = parse_rational_function("(t^2-1)/(t-1)")
    assert f.is_polynomial and f.num == poly("t + 1")


@pytest.mark.parametrize("text,pos", [("t^", 2), ("2*(t+1", 6), ("t $ 1", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_rational_function(text)
    assert exc.value.position == pos


def test_polynomial_rejects_denominator():
    with pytest.raises(ParseError):
        parse_polynomial("1/t")


def test_pole_at_infinity():
    assert parse_rational_function("t^3/(t-1)").pole_order_at_infinity() == 2
    assert parse_rational_function("1/t").pole_order_at_infinity() == -1


def test_parse_rational_values():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(2) == 2


def test_order_at():
    assert order_at(poly("t**2*(t-1)**5"), Fraction(1)) == 5


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_taylor_reconstructs(coeffs, c):
    p = poly(sum(k * poly("t").as_expr() ** i for i, k in enumerate(coeffs)))
    series = taylor(p, c, len(coeffs))
    t = poly("t").as_expr()
    back = poly(sum(a * (t - c) ** i for i, a in enumerate(series)))
    assert back == p
