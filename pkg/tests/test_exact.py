from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phmaps.exact import (
    EPS_STRICT,
    exact_sqrt,
    format_scalar,
    is_exact,
    parse_scalar,
    sqrt_scalar,
    strict_less,
)


def test_parse_rational_and_integer_stay_exact():
    assert parse_scalar("1/10") == Fraction(1, 10)
    assert parse_scalar("-3/7") == Fraction(-3, 7)
    assert parse_scalar("42") == Fraction(42)
    assert is_exact(parse_scalar("42"))


def test_parse_decimal_is_float():
    x = parse_scalar("0.25")
    assert x == 0.25 and not is_exact(x)
    assert parse_scalar("1e-3") == 1e-3


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "nan", "inf", "1/2/3"])
def test_parse_rejects_garbage(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad)


@given(st.fractions(max_denominator=10**6))
def test_format_parse_round_trip(q):
    assert parse_scalar(format_scalar(q)) == q


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_parse_round_trip_float(x):
    assert parse_scalar(format_scalar(x)) == x


def test_exact_sqrt():
    assert exact_sqrt(Fraction(25)) == 5
    assert exact_sqrt(Fraction(9, 16)) == Fraction(3, 4)
    assert exact_sqrt(Fraction(2)) is None
    assert sqrt_scalar(Fraction(1, 4)) == Fraction(1, 2)
    assert sqrt_scalar(Fraction(2)) == pytest.approx(2**0.5)


def test_strict_less_exact_never_uses_epsilon():
    ok, used = strict_less(Fraction(199999999, 100000000), Fraction(2))
    assert ok and not used
    ok, used = strict_less(Fraction(2), Fraction(2))
    assert not ok and not used


def test_strict_less_approximate_fails_closed():
    ok, used = strict_less(2.0 - EPS_STRICT / 2, 2.0)
    assert not ok and used
    ok, used = strict_less(2.0 - 10 * EPS_STRICT, 2.0)
    assert ok and used
