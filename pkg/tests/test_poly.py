from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli.poly import (
    MultiPoly,
    compositions,
    is_invariant,
    orbit_monomial_basis,
    orbit_sum,
    permutation_orbit,
)
from capelli.roots import build_datum

coeffs = st.fractions(min_value=-10, max_value=10, max_denominator=7)


@st.composite
def polys(draw, n=2, max_deg=3):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg)] * n), coeffs, max_size=5))
    return MultiPoly(n, terms)


points = st.tuples(coeffs, coeffs)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(a, b, v):
    assert (a * b)(v) == a(v) * b(v)
    assert (a + b)(v) == a(v) + b(v)


@settings(max_examples=60, deadline=None)
@given(polys(), points, points)
def test_shift_and_negation(a, v, eta):
    assert a.shift(eta)(v) == a(tuple(x - e for x, e in zip(v, eta)))
    assert a.negate_args()(v) == a(tuple(-x for x in v))


@settings(max_examples=40, deadline=None)
@given(polys(), st.integers(0, 4))
def test_power(a, k):
    expected = MultiPoly.constant(1, 2)
    for _ in range(k):
        expected = expected * a
    assert a ** k == expected


def test_json_round_trip_and_order():
    p = MultiPoly(2, {(1, 0): Fraction(1, 2), (0, 2): -3, (0, 0): 5})
    data = p.to_json()
    assert data == [
        {"exp": [0, 2], "coeff": "-3"},
        {"exp": [1, 0], "coeff": "1/2"},
        {"exp": [0, 0], "coeff": "5"},
    ]
    assert MultiPoly.from_json(data) == p


def test_str_and_latex():
    p = MultiPoly(2, {(1, 0): Fraction(1, 2), (0, 1): -1, (0, 0): Fraction(-3, 4)})
    assert str(p) == "1/2*z1 - z2 - 3/4"
    assert p.to_latex() == r"\frac{1}{2} z_{1} - z_{2} - \frac{3}{4}"
    assert str(MultiPoly.zero(1)) == "0"
    assert str(MultiPoly.variable(0, 1) ** 2) == "z^2"


def test_degree_and_components():
    p = MultiPoly(2, {(2, 1): 1, (1, 0): 2, (0, 0): 3})
    assert p.degree() == 3
    assert MultiPoly.zero(2).degree() == -1
    assert p.homogeneous_component(1) == MultiPoly(2, {(1, 0): 2})
    assert p.constant_term() == 3


def test_rejects_bad_exponent():
    with pytest.raises(ValueError):
        MultiPoly(2, {(1,): 1})
    with pytest.raises(ValueError):
        MultiPoly(1, {(-1,): 1})


def test_compositions_count():
    for n in range(1, 4):
        for d in range(5):
            assert len(list(compositions(n, d))) == comb(n + d - 1, d)


def test_orbits():
    assert permutation_orbit((2, 0, 0), [(1, 0, 2), (0, 2, 1)]) == {(2, 0, 0), (0, 2, 0), (0, 0, 2)}
    assert permutation_orbit((1, 2), []) == {(1, 2)}
    s = orbit_sum((1, 1, 0), [(1, 0, 2), (0, 2, 1)])
    assert len(s) == 3


def _partitions_count(d, parts):
    # partitions of d into at most `parts` parts
    def count(d, k, largest):
        if d == 0:
            return 1
        if k == 0:
            return 0
        return sum(count(d - first, k - 1, first) for first in range(1, min(d, largest) + 1))
    return count(d, parts, d)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classical_orbit_basis_counts_partitions(n):
    datum = build_datum("classical", n)
    for d in range(5):
        expected = sum(_partitions_count(k, n) for k in range(d + 1))
        basis = orbit_monomial_basis(datum, d)
        assert len(basis) == expected
        assert all(is_invariant(b, datum.generators) for b in basis)


def test_semiclassical_orbit_basis_is_invariant():
    datum = build_datum("semiclassical", 3)
    basis = orbit_monomial_basis(datum, 3)
    assert all(is_invariant(b, datum.generators) for b in basis)
    assert not is_invariant(MultiPoly.variable(0, 3), datum.generators)
    # z2 is fixed by the parity-preserving swap of z1 and z3
    assert is_invariant(MultiPoly.variable(1, 3), datum.generators)
