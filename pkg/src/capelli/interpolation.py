"""Capelli polynomials p_lambda by exact interpolation, and the hat transform."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence, Union

from .errors import (
    NonUniqueInterpolation,
    NotDominant,
    ReconstructionFailed,
    SingularSystem,
    ZeroAtMinusRho,
)
from .linalg import solve_many
from .poly import MultiPoly, is_invariant, orbit_monomial_basis
from .rational import format_rational
from .roots import RhoVector, RootDatum, Weight, as_weight, dominance_class, enumerate_weights

PBasisVector = dict[Weight, Fraction]
FunctionLike = Union[MultiPoly, Callable, Mapping]


def _require_dominant(datum: RootDatum, rho: RhoVector) -> None:
    if not dominance_class(datum, rho).dominant:
        raise NotDominant(f"rho = {tuple(map(format_rational, rho.coords))} is not dominant")


@lru_cache(maxsize=256)
def _basis(datum: RootDatum, degree: int) -> tuple[MultiPoly, ...]:
    return tuple(orbit_monomial_basis(datum, degree))


@lru_cache(maxsize=256)
def _capelli_level(datum: RootDatum, rho: RhoVector, d: int) -> dict[Weight, MultiPoly]:
    # all p_lambda with ell(lambda) = d share one coefficient matrix
    basis = _basis(datum, d)
    points = enumerate_weights(datum, d)
    if len(points) != len(basis):
        raise NonUniqueInterpolation(
            f"{len(points)} conditions for {len(basis)} unknowns at degree {d}"
        )
    A = [[b(rho.shifted(mu)) for b in basis] for mu in points]
    targets = [lam for lam in points if datum.ell_of(lam) == d]
    rhs = [[Fraction(int(mu == lam)) for mu in points] for lam in targets]
    try:
        solutions = solve_many(A, rhs)
    except SingularSystem as exc:
        raise NonUniqueInterpolation(f"interpolation system at degree {d} is singular") from exc
    out = {}
    for lam, coeffs in zip(targets, solutions):
        p = MultiPoly.zero(datum.n)
        for c, b in zip(coeffs, basis):
            if c:
                p = p + b * c
        out[lam] = p
    return out


def capelli_polynomial(datum: RootDatum, rho: RhoVector, lam) -> MultiPoly:
    """The unique invariant p_lambda of degree <= ell(lambda) with p_lambda(rho+mu) = delta."""
    lam = as_weight(lam)
    _require_dominant(datum, rho)
    level = _capelli_level(datum, rho, datum.ell_of(lam))
    if lam not in level:
        raise ValueError(f"{lam} is not a dominant weight for this datum")
    return level[lam]


def capelli_polynomials(datum: RootDatum, rho: RhoVector, max_ell: int) -> dict[Weight, MultiPoly]:
    _require_dominant(datum, rho)
    out = {}
    for d in range(max_ell + 1):
        out.update(_capelli_level(datum, rho, d))
    return {lam: out[lam] for lam in enumerate_weights(datum, max_ell)}


@dataclass(frozen=True)
class PTable:
    """Values p_mu(rho + lambda) for mu, lambda in the index."""

    index: tuple[Weight, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def position(self, lam) -> int:
        return self.index.index(as_weight(lam))

    def entry(self, mu, lam) -> Fraction:
        return self.values[self.position(mu)][self.position(lam)]

    def to_json(self) -> dict:
        return {
            "index": [list(w) for w in self.index],
            "values": [[format_rational(x) for x in row] for row in self.values],
        }


@lru_cache(maxsize=64)
def p_table(datum: RootDatum, rho: RhoVector, max_ell: int) -> PTable:
    polys = capelli_polynomials(datum, rho, max_ell)
    index = tuple(polys)
    values = tuple(tuple(polys[mu](rho.shifted(lam)) for lam in index) for mu in index)
    return PTable(index, values)


def q_polynomial(datum: RootDatum, rho: RhoVector, lam) -> MultiPoly:
    """q_lambda = p_lambda / p_lambda(-rho)."""
    p = capelli_polynomial(datum, rho, lam)
    at_minus_rho = p(rho.minus())
    if not at_minus_rho:
        raise ZeroAtMinusRho(f"p_{as_weight(lam)}(-rho) = 0")
    return p / at_minus_rho


def _values_on_grid(datum: RootDatum, rho: RhoVector, h: FunctionLike, index: Sequence[Weight]):
    if isinstance(h, MultiPoly):
        return {tau: h(rho.shifted(tau)) for tau in index}
    if isinstance(h, Mapping):
        # a mapping lists values on rho + Lambda_+; absent weights count as 0
        return {tau: Fraction(h.get(tau, 0)) for tau in index}
    if callable(h):
        return {tau: Fraction(h(rho.shifted(tau))) for tau in index}
    raise TypeError(f"cannot read values from {type(h).__name__}")


def hat_transform(datum: RootDatum, rho: RhoVector, h: FunctionLike, max_ell: int) -> dict[Weight, Fraction]:
    """The transform of h on rho + Lambda_+, for ell(mu) <= max_ell.

    ``h`` may be a polynomial, a callable on points, or a mapping from
    weights tau to the value h(rho + tau).
    """
    table = p_table(datum, rho, max_ell)
    values = _values_on_grid(datum, rho, h, table.index)
    ell = {tau: datum.ell_of(tau) for tau in table.index}
    out = {}
    for j, mu in enumerate(table.index):
        total = Fraction(0)
        for i, tau in enumerate(table.index):
            # p_tau(rho + mu) vanishes once ell(tau) > ell(mu)
            if ell[tau] > ell[mu]:
                continue
            v = table.values[i][j]
            if v and values[tau]:
                total += (-1) ** ell[tau] * v * values[tau]
        out[mu] = total
    return out


def from_p_basis(datum: RootDatum, rho: RhoVector, coords: Mapping) -> MultiPoly:
    """The polynomial sum_lambda coords[lambda] p_lambda."""
    out = MultiPoly.zero(datum.n)
    for lam, c in coords.items():
        if c:
            out = out + capelli_polynomial(datum, rho, lam) * Fraction(c)
    return out


def interpolation_expand(datum: RootDatum, rho: RhoVector, h: MultiPoly) -> PBasisVector:
    """Coordinates of the invariant polynomial h in the p-basis."""
    if not is_invariant(h, datum.generators):
        raise ValueError("h is not W-invariant")
    d = max(h.degree(), 0)
    table = p_table(datum, rho, d)
    ell = [datum.ell_of(lam) for lam in table.index]
    coords: dict[Weight, Fraction] = {}
    # the table is unitriangular with respect to ell, so substitute forward
    for j, lam in enumerate(table.index):
        value = h(rho.shifted(lam))
        for i, mu in enumerate(table.index):
            if ell[i] < ell[j] and coords.get(mu):
                value -= coords[mu] * table.values[i][j]
        coords[lam] = value
    coords = {lam: c for lam, c in coords.items() if c}
    if from_p_basis(datum, rho, coords) != h:
        raise ReconstructionFailed("p-basis expansion does not reproduce h")
    return coords


def p_vector_values(datum: RootDatum, rho: RhoVector, coords: Mapping, max_ell: int) -> dict[Weight, Fraction]:
    """Values on rho + Lambda_+ of the polynomial with p-coordinates ``coords``."""
    table = p_table(datum, rho, max(max_ell, max((datum.ell_of(k) for k in coords), default=0)))
    out = {}
    for j, lam in enumerate(table.index):
        if datum.ell_of(lam) > max_ell:
            continue
        out[lam] = sum(
            (Fraction(coords[mu]) * table.values[i][j] for i, mu in enumerate(table.index) if coords.get(mu)),
            Fraction(0),
        )
    return out
