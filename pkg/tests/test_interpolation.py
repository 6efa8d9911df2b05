from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli.errors import NotDominant, ReconstructionFailed, ZeroAtMinusRho
from capelli.interpolation import (
    capelli_polynomial,
    capelli_polynomials,
    from_p_basis,
    hat_transform,
    interpolation_expand,
    p_table,
    p_vector_values,
    q_polynomial,
)
from capelli.poly import MultiPoly, is_invariant
from capelli.rational import binomial, pochhammer
from capelli.roots import build_datum, enumerate_weights, rho_vector

from conftest import GRID, SAMPLES, make

ONE = build_datum("rank-one")
Z = MultiPoly.variable(0, 1)


def test_p_zero_is_one(grid_point):
    datum, rho = grid_point
    assert capelli_polynomial(datum, rho, (0,) * datum.n) == 1


def test_classical_degree_one():
    for n in (2, 3):
        for r, s in SAMPLES:
            datum, rho = make("classical", n, r, s)
            expected = datum.ell_poly() - (r * n * (n - 1) / 2 + n * s)
            assert capelli_polynomial(datum, rho, (1,) + (0,) * (n - 1)) == expected


def test_delta_conditions_and_degree(grid_point):
    datum, rho = grid_point
    weights = enumerate_weights(datum, 3)
    polys = capelli_polynomials(datum, rho, 3)
    for lam in weights:
        p = polys[lam]
        assert p.degree() <= datum.ell_of(lam)
        assert is_invariant(p, datum.generators)
        for mu in weights:
            if datum.ell_of(mu) <= datum.ell_of(lam):
                assert p(rho.shifted(mu)) == int(mu == lam)


@pytest.mark.parametrize("s", [Fraction(1, 3), Fraction(3, 2), Fraction(5, 7)])
def test_rank_one_closed_forms(s):
    rho = rho_vector(ONE, 0, s)
    for lam in range(6):
        assert capelli_polynomial(ONE, rho, lam) == binomial(Z - s, lam)
        assert q_polynomial(ONE, rho, lam) == pochhammer(s - Z, lam) * (1 / pochhammer(2 * s, lam))
    table = p_table(ONE, rho, 5)
    for mu in range(6):
        for lam in range(6):
            assert table.entry((mu,), (lam,)) == binomial(lam, mu)


def test_q_example():
    rho = rho_vector(ONE, 0, 1)
    assert q_polynomial(ONE, rho, 1) == (1 - Z) * Fraction(1, 2)
    assert q_polynomial(ONE, rho, 0) == 1


def test_extra_vanishing_frozen():
    datum, rho = make("semiclassical", 2, *SAMPLES[0])
    table = p_table(datum, rho, 3)
    # (2, 0) - (1, 1) lies outside the cone although ell rises by one
    assert table.entry((1, 1), (2, 0)) == 0
    assert table.entry((1, 0), (2, 0)) != 0
    c2, rho2 = make("classical", 2, *SAMPLES[0])
    assert p_table(c2, rho2, 3).entry((1, 1), (3, 0)) == 0


def test_table_diagonal_and_json():
    datum, rho = make("classical", 2, *SAMPLES[1])
    table = p_table(datum, rho, 2)
    assert all(table.entry(lam, lam) == 1 for lam in table.index)
    data = table.to_json()
    assert data["index"][0] == [0, 0]
    assert all(isinstance(x, str) for row in data["values"] for x in row)


def test_not_dominant_rejected():
    datum = build_datum("classical", 2)
    with pytest.raises(NotDominant):
        capelli_polynomial(datum, rho_vector(datum, -1, Fraction(1, 3)), (1, 0))


def test_q_needs_nonzero_value():
    # p_1(-rho) = -2s
    rho = rho_vector(ONE, 0, 0)
    with pytest.raises(ZeroAtMinusRho):
        q_polynomial(ONE, rho, 1)


def test_newton_expansion_frozen():
    # forward differences of z^2 at 1/2, 3/2, 5/2: 1/4, 2, 2
    rho = rho_vector(ONE, 0, Fraction(1, 2))
    coords = interpolation_expand(ONE, rho, Z ** 2)
    assert coords == {(0,): Fraction(1, 4), (1,): Fraction(2), (2,): Fraction(2)}


def test_expand_basis_and_constants(grid_point):
    datum, rho = grid_point
    for lam, p in capelli_polynomials(datum, rho, 2).items():
        assert interpolation_expand(datum, rho, p) == {lam: 1}
    assert interpolation_expand(datum, rho, MultiPoly.constant(1, datum.n)) == {(0,) * datum.n: 1}


def test_expand_rejects_non_invariant():
    datum, rho = make("classical", 2, *SAMPLES[0])
    with pytest.raises(ValueError):
        interpolation_expand(datum, rho, MultiPoly.variable(0, 2))


def test_expand_detects_bad_reconstruction(monkeypatch):
    import capelli.interpolation as mod

    datum, rho = make("classical", 2, *SAMPLES[0])
    monkeypatch.setattr(mod, "from_p_basis", lambda *a: MultiPoly.zero(2))
    with pytest.raises(ReconstructionFailed):
        mod.interpolation_expand(datum, rho, datum.ell_poly())


def test_hat_examples():
    datum, rho = make("classical", 3, *SAMPLES[2])
    table = p_table(datum, rho, 3)
    for nu in table.index:
        hat = hat_transform(datum, rho, {nu: 1}, 3)
        sign = (-1) ** datum.ell_of(nu)
        assert hat == {lam: sign * table.entry(nu, lam) for lam in table.index}
    hat_one = hat_transform(datum, rho, MultiPoly.constant(1, 3), 3)
    assert hat_one[(0, 0, 0)] == 1
    # callable input agrees with polynomial input
    ell = datum.ell_poly()
    assert hat_transform(datum, rho, ell, 3) == hat_transform(datum, rho, lambda v: ell(v), 3)
    with pytest.raises(TypeError):
        hat_transform(datum, rho, 3, 2)


def test_values_of_p_vector():
    datum, rho = make("classical", 2, *SAMPLES[0])
    h = datum.ell_poly() ** 2
    coords = interpolation_expand(datum, rho, h)
    values = p_vector_values(datum, rho, coords, 3)
    assert values == {lam: h(rho.shifted(lam)) for lam in enumerate_weights(datum, 3)}
    assert from_p_basis(datum, rho, coords) == h


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(GRID), st.sampled_from(SAMPLES), st.dictionaries(st.integers(0, 9), coeff, max_size=6))
def test_hat_is_an_involution(point, sample, raw):
    datum, rho = make(*point, *sample)
    weights = enumerate_weights(datum, 3)
    values = {weights[i % len(weights)]: v for i, v in raw.items()}
    once = hat_transform(datum, rho, values, 3)
    twice = hat_transform(datum, rho, once, 3)
    assert twice == {lam: Fraction(values.get(lam, 0)) for lam in weights}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(GRID), st.lists(coeff, min_size=3, max_size=3))
def test_interpolation_formula(point, cs):
    datum, rho = make(*point, *SAMPLES[0])
    ell = datum.ell_poly()
    h = ell * cs[0] + ell * ell * cs[1] + cs[2]
    hat = hat_transform(datum, rho, h, 2)
    rebuilt = from_p_basis(datum, rho, {mu: (-1) ** datum.ell_of(mu) * v for mu, v in hat.items()})
    assert rebuilt == h
