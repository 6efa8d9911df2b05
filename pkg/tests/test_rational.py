from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capelli.rational import binomial, falling_factorial, format_rational, parse_rational, pochhammer

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


@pytest.mark.parametrize("text, value", [
    ("3/7", Fraction(3, 7)),
    ("-17/13", Fraction(-17, 13)),
    ("4", Fraction(4)),
    (" 6/4 ", Fraction(3, 2)),
    ("+2/3", Fraction(2, 3)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "0.5", "1e3", "a/b", "", "1/-2", "nan"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-8, 4)) == "-2"
    assert format_rational(0) == "0"


@given(fractions)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_falling_factorial_examples():
    assert falling_factorial(Fraction(5), 3) == 60
    assert falling_factorial(Fraction(7, 2), 0) == 1
    assert falling_factorial(Fraction(7, 2), -3) == 1
    assert falling_factorial(Fraction(1, 2), 2) == Fraction(-1, 4)


def test_pochhammer_examples():
    assert pochhammer(Fraction(1), 4) == 24
    assert pochhammer(Fraction(2, 3), 0) == 1
    with pytest.raises(ValueError):
        pochhammer(Fraction(1), -1)


@given(fractions, st.integers(0, 8))
def test_falling_is_reflected_pochhammer(x, d):
    assert falling_factorial(x, d) == (-1) ** d * pochhammer(-x, d)
    assert pochhammer(x, d) == falling_factorial(x + d - 1, d)


@given(st.integers(0, 30), st.integers(0, 30))
def test_binomial_matches_integers(n, k):
    from math import comb

    assert binomial(Fraction(n), k) == comb(n, k)


def test_binomial_negative_k():
    assert binomial(Fraction(5), -1) == 0
