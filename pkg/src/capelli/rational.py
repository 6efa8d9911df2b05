"""Exact rational scalars: parsing, printing, factorial-type products."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from operator import mul

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` exactly.

    Decimal and exponent notation are rejected on purpose: nothing that
    looks like a float is allowed to enter the computation.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def falling_factorial(x, d: int):
    """``x(x-1)...(x-d+1)`` for ``d > 0`` and ``1`` otherwise.

    Works for any ring element supporting ``-`` and ``*`` with integers,
    so it also builds polynomial falling factorials.
    """
    if d <= 0:
        return Fraction(1)
    return reduce(mul, (x - j for j in range(d)))


def pochhammer(x, d: int):
    """Rising factorial ``x(x+1)...(x+d-1)``; empty product for ``d == 0``."""
    if d < 0:
        raise ValueError("pochhammer needs d >= 0")
    if d == 0:
        return Fraction(1)
    return reduce(mul, (x + j for j in range(d)))


def binomial(x, k: int):
    """Generalized binomial coefficient ``x choose k`` for integer ``k >= 0``."""
    if k < 0:
        return Fraction(0)
    result = falling_factorial(x, k)
    fact = 1
    for j in range(2, k + 1):
        fact *= j
    return result * Fraction(1, fact)
