"""Combinatorial data (V, W, Lambda_+, ell) for the supported cases.

Weights are plain integer tuples of length ``n``; rank one uses 1-tuples.
The Weyl-type group W is stored as a list of coordinate permutations, with
``w[i]`` the position that coordinate ``i`` is sent to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import CrossCheckFailed, NotStronglyDominant, UnsupportedCase
from .poly import MultiPoly, permutation_orbit
from .rational import falling_factorial, format_rational, pochhammer

Weight = tuple[int, ...]

RANK_ONE = "rank-one"
CLASSICAL = "classical"
SEMICLASSICAL = "semiclassical"
CASES = (RANK_ONE, CLASSICAL, SEMICLASSICAL)

_ALIASES = {
    "rank-one": RANK_ONE, "rankone": RANK_ONE, "rank_one": RANK_ONE,
    "classical": CLASSICAL,
    "semiclassical": SEMICLASSICAL, "semi-classical": SEMICLASSICAL,
}


def normalize_case(case: str) -> str:
    key = str(case).strip().lower()
    if key not in _ALIASES:
        raise UnsupportedCase(f"unsupported case {case!r}; expected one of {', '.join(CASES)}")
    return _ALIASES[key]


@dataclass(frozen=True)
class LinearForm:
    """An element of V-dual, stored by its coefficients in the z-coordinates."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs: Iterable) -> "LinearForm":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def coordinate(cls, i: int, n: int) -> "LinearForm":
        return cls.of(int(j == i) for j in range(n))

    @classmethod
    def difference(cls, i: int, j: int, n: int) -> "LinearForm":
        return cls.of(int(t == i) - int(t == j) for t in range(n))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __call__(self, v: Sequence) -> Fraction:
        if len(v) != len(self.coeffs):
            raise ValueError("dimension mismatch")
        return sum((c * x for c, x in zip(self.coeffs, v) if c), Fraction(0))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def compose(self, w: Sequence[int]) -> "LinearForm":
        """The form ``v -> omega(w v)``."""
        return LinearForm(tuple(self.coeffs[w[i]] for i in range(self.n)))

    def to_poly(self) -> MultiPoly:
        return MultiPoly.linear(self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        return str(self.to_poly())


def _sorted_forms(forms: Iterable[LinearForm], positive: Sequence[Weight]) -> tuple[LinearForm, ...]:
    # positive forms first, then the rest; descending coefficient order within
    forms = list(dict.fromkeys(forms))
    pos = [f for f in forms if all(f(s) >= 0 for s in positive)]
    neg = [f for f in forms if f not in pos]
    key = lambda f: tuple(-c for c in f.coeffs)  # noqa: E731
    return tuple(sorted(pos, key=key) + sorted(neg, key=key))


@dataclass(frozen=True, eq=False)
class RootDatum:
    """All derived sets of one supported case in dimension ``n``."""

    case: str
    n: int
    generators: tuple[tuple[int, ...], ...]
    ell: LinearForm
    sigma_dual: tuple[Weight, ...]
    sigma: tuple[LinearForm, ...]
    lambda1: tuple[Weight, ...]
    phi: tuple[LinearForm, ...]
    phi_plus: tuple[LinearForm, ...]
    delta: tuple[LinearForm, ...]
    delta_plus: tuple[LinearForm, ...]

    def __eq__(self, other):
        if not isinstance(other, RootDatum):
            return NotImplemented
        return (self.case, self.n) == (other.case, other.n)

    def __hash__(self):
        return hash((self.case, self.n))

    def ell_of(self, v: Sequence[int]) -> int:
        return int(self.ell(v))

    def ell_poly(self) -> MultiPoly:
        return self.ell.to_poly()

    def weyl_orbit(self, form: LinearForm) -> set[LinearForm]:
        return {LinearForm(c) for c in permutation_orbit(form.coeffs, self.generators)}

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "n": self.n,
            "ell": self.ell.to_json(),
            "sigma_dual": [list(w) for w in self.sigma_dual],
            "sigma": [f.to_json() for f in self.sigma],
            "lambda1": [list(w) for w in self.lambda1],
            "phi": [f.to_json() for f in self.phi],
            "phi_plus": [f.to_json() for f in self.phi_plus],
            "delta": [f.to_json() for f in self.delta],
            "delta_plus": [f.to_json() for f in self.delta_plus],
            "generators": [list(w) for w in self.generators],
        }


def _transposition(i: int, j: int, n: int) -> tuple[int, ...]:
    w = list(range(n))
    w[i], w[j] = w[j], w[i]
    return tuple(w)


def _unit(i: int, n: int) -> Weight:
    return tuple(int(j == i) for j in range(n))


def build_datum(case: str, n: int = 1) -> RootDatum:
    """Build the root datum of ``case`` in dimension ``n``.

    Indices below are 0-based, so "i odd" in the usual 1-based labelling
    becomes ``i % 2 == 0`` here.
    """
    case = normalize_case(case)
    if case == RANK_ONE:
        if n != 1:
            raise UnsupportedCase("the rank-one case has n = 1")
    if not isinstance(n, int) or n < 1:
        raise UnsupportedCase(f"n must be a positive integer, got {n!r}")

    sigma_dual = tuple(tuple(int(j <= i) for j in range(n)) for i in range(n))
    sigma = tuple(
        [LinearForm.difference(i, i + 1, n) for i in range(n - 1)] + [LinearForm.coordinate(n - 1, n)]
    )

    if case in (RANK_ONE, CLASSICAL):
        generators = tuple(_transposition(i, i + 1, n) for i in range(n - 1))
        ell = LinearForm.of([1] * n)
        lambda1 = tuple(_unit(i, n) for i in range(n))
        diffs = [LinearForm.difference(i, j, n) for i in range(n) for j in range(n) if i != j]
        phi = diffs + [LinearForm.coordinate(i, n) for i in range(n)]
        delta = diffs
    else:
        odd = [i for i in range(n) if i % 2 == 0]
        even = [i for i in range(n) if i % 2 == 1]
        generators = tuple(_transposition(i, i + 2, n) for i in range(n - 2))
        ell = LinearForm.of([int(i % 2 == 0) for i in range(n)])
        lambda1 = tuple(
            [_unit(i, n) for i in odd]
            + [tuple(a + b for a, b in zip(_unit(i, n), _unit(j, n))) for i in odd for j in even]
        )
        phi = [LinearForm.difference(i, j, n) for i in range(n) for j in range(n) if (i - j) % 2]
        phi += [LinearForm.coordinate(i, n) for i in range(n) if (n - 1 - i) % 2 == 0]
        delta = [LinearForm.difference(i, j, n) for i in range(n) for j in range(n)
                 if i != j and (i - j) % 2 == 0]

    phi_sorted = _sorted_forms(phi, sigma_dual)
    delta_sorted = _sorted_forms(delta, sigma_dual)
    return RootDatum(
        case=case,
        n=n,
        generators=generators,
        ell=ell,
        sigma_dual=sigma_dual,
        sigma=sigma,
        lambda1=lambda1,
        phi=phi_sorted,
        phi_plus=tuple(f for f in phi_sorted if all(f(s) >= 0 for s in sigma_dual)),
        delta=delta_sorted,
        delta_plus=tuple(f for f in delta_sorted if all(f(s) >= 0 for s in sigma_dual)),
    )


def as_weight(v) -> Weight:
    """Accept an int (rank one) or an integer sequence."""
    if isinstance(v, int):
        return (v,)
    return tuple(int(x) for x in v)


def lambda_membership(datum: RootDatum, v: Sequence[int]) -> bool:
    """Is ``v`` in the monoid Lambda generated by the W-orbit of Lambda_1?"""
    v = as_weight(v)
    if len(v) != datum.n:
        raise ValueError(f"weight {v} has wrong length for n = {datum.n}")
    if any(x < 0 for x in v):
        return False
    if datum.case == SEMICLASSICAL:
        return sum(v[0::2]) >= sum(v[1::2])
    return True


def is_dominant_weight(v: Sequence[int]) -> bool:
    """Membership in Lambda_+: weakly decreasing and nonnegative."""
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1)) and (not v or v[-1] >= 0)


def _decreasing(n: int, top: int) -> Iterable[Weight]:
    if n == 0:
        yield ()
        return
    for first in range(top + 1):
        for rest in _decreasing(n - 1, first):
            yield (first,) + rest


def enumerate_weights(datum: RootDatum, max_ell: int) -> list[Weight]:
    """All lambda in Lambda_+ with ell(lambda) <= max_ell, by (ell, lex)."""
    if max_ell < 0:
        raise ValueError("max_ell must be >= 0")
    # lambda_1 <= ell(lambda) in every supported case, so this bound is safe
    found = [lam for lam in _decreasing(datum.n, max_ell) if datum.ell_of(lam) <= max_ell]
    return sorted(found, key=lambda lam: (datum.ell_of(lam), lam))


def enumerate_cone(datum: RootDatum, max_ell: int) -> list[Weight]:
    """All tau in Lambda with ell(tau) <= max_ell, by (ell, lex)."""
    found = []
    for v in product(range(max_ell + 1), repeat=datum.n):
        if datum.ell_of(v) <= max_ell and lambda_membership(datum, v):
            found.append(v)
    return sorted(found, key=lambda v: (datum.ell_of(v), v))


@dataclass(frozen=True, eq=False)
class RhoVector:
    datum: RootDatum
    r: Fraction
    s: Fraction
    coords: tuple[Fraction, ...]
    k_values: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, RhoVector):
            return NotImplemented
        return (self.datum, self.r, self.s) == (other.datum, other.r, other.s)

    def __hash__(self):
        return hash((self.datum, self.r, self.s))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def k(self, form: LinearForm) -> Fraction:
        for coeffs, value in self.k_values:
            if coeffs == form.coeffs:
                return value
        raise KeyError(f"{form} is not in Phi")

    def shifted(self, lam: Sequence[int], sign: int = 1) -> tuple[Fraction, ...]:
        """``sign * (rho + lam)``."""
        return tuple(sign * (x + y) for x, y in zip(self.coords, lam))

    def minus(self) -> tuple[Fraction, ...]:
        return tuple(-x for x in self.coords)


def rho_vector(datum: RootDatum, r=0, s=0) -> RhoVector:
    """rho_i = (n - i) r + s (1-based i); rank one gives rho = s."""
    r, s = Fraction(r), Fraction(s)
    n = datum.n
    coords = tuple((n - 1 - i) * r + s for i in range(n))
    sigma = set(datum.sigma)
    k_values = []
    for omega in datum.phi:
        candidates = datum.weyl_orbit(omega) | datum.weyl_orbit(-omega)
        hits = sorted((c for c in candidates if c in sigma), key=lambda f: f.coeffs)
        if not hits:
            raise UnsupportedCase(f"no simple form in the orbit of {omega}")
        k_values.append((omega.coeffs, hits[0](coords)))
    return RhoVector(datum, r, s, coords, tuple(k_values))


def _in_z(x: Fraction) -> bool:
    return x.denominator == 1


@dataclass(frozen=True)
class DominanceFlags:
    dominant: bool
    non_integral: bool
    strongly_dominant: bool

    def as_dict(self) -> dict:
        return {
            "dominant": self.dominant,
            "non_integral": self.non_integral,
            "strongly_dominant": self.strongly_dominant,
        }


def strong_dominance_violation(datum: RootDatum, rho: RhoVector) -> str | None:
    for alpha in datum.delta_plus:
        a = alpha(rho.coords)
        if _in_z(a) and a <= 0:
            return f"alpha(rho) = {format_rational(a)} for alpha = {alpha}"
    for omega in datum.phi_plus:
        w, k = omega(rho.coords), rho.k(omega)
        if _in_z(w - k) and w - k < 0:
            return f"omega(rho) - k = {format_rational(w - k)} for omega = {omega}"
        if _in_z(w + k) and w + k <= 0:
            return f"omega(rho) + k = {format_rational(w + k)} for omega = {omega}"
    return None


def dominance_class(datum: RootDatum, rho: RhoVector) -> DominanceFlags:
    values = [alpha(rho.coords) for alpha in datum.delta_plus]
    return DominanceFlags(
        dominant=not any(_in_z(a) and a < 0 for a in values),
        non_integral=not any(_in_z(a) for a in values),
        strongly_dominant=strong_dominance_violation(datum, rho) is None,
    )


@dataclass(frozen=True)
class FTauFactorization:
    """f_tau as a product of falling factorials in linear forms."""

    tau: Weight
    numerator: tuple[tuple[LinearForm, Fraction, int], ...]
    denominator: tuple[tuple[LinearForm, int], ...]

    def numerator_at(self, v: Sequence) -> Fraction:
        out = Fraction(1)
        for omega, k, depth in self.numerator:
            out *= falling_factorial(omega(v) - k, depth)
        return out

    def denominator_at(self, v: Sequence) -> Fraction:
        out = Fraction(1)
        for alpha, depth in self.denominator:
            out *= falling_factorial(alpha(v), depth)
        return out

    def evaluate(self, v: Sequence) -> Fraction:
        """Exact value at ``v``; raises ZeroDivisionError on a pole."""
        den = self.denominator_at(v)
        if not den:
            raise ZeroDivisionError(f"f_{self.tau} has a vanishing denominator at {tuple(v)}")
        return self.numerator_at(v) / den

    __call__ = evaluate

    def is_constant_one(self) -> bool:
        return all(d <= 0 for _, _, d in self.numerator) and all(d <= 0 for _, d in self.denominator)


def f_tau(datum: RootDatum, rho: RhoVector, tau: Sequence[int]) -> FTauFactorization:
    tau = as_weight(tau)
    num = tuple((omega, rho.k(omega), int(omega(tau))) for omega in datum.phi)
    den = tuple((alpha, int(alpha(tau))) for alpha in datum.delta)
    return FTauFactorization(tau, num, den)


def virtual_dimension_product(datum: RootDatum, rho: RhoVector, lam: Sequence[int]) -> Fraction:
    """d_lambda from the product over Delta^+ and Phi^+."""
    lam = as_weight(lam)
    violation = strong_dominance_violation(datum, rho)
    if violation is not None:
        raise NotStronglyDominant(f"rho is not strongly dominant: {violation}")
    out = Fraction(1)
    for alpha in datum.delta_plus:
        out *= (alpha(rho.coords) + alpha(lam)) / alpha(rho.coords)
    for omega in datum.phi_plus:
        w, k, m = omega(rho.coords), rho.k(omega), int(omega(lam))
        out *= pochhammer(w + k, m) / pochhammer(w - k + 1, m)
    return out


def virtual_dimension_ratio(datum: RootDatum, rho: RhoVector, lam: Sequence[int]) -> Fraction:
    """d_lambda as (-1)^ell(lambda) f_lambda(-rho) / f_lambda(rho + lambda)."""
    lam = as_weight(lam)
    f = f_tau(datum, rho, lam)
    top = f.evaluate(rho.minus())
    bottom = f.evaluate(rho.shifted(lam))
    if not bottom:
        raise ZeroDivisionError(f"f_lambda(rho + lambda) vanishes for lambda = {lam}")
    return (-1) ** datum.ell_of(lam) * top / bottom


def virtual_dimension(datum: RootDatum, rho: RhoVector, lam: Sequence[int]) -> Fraction:
    """Virtual dimension d_lambda.

    Computed from the product formula; when rho is also non-integral the
    ratio formula is evaluated as an independent check.
    """
    value = virtual_dimension_product(datum, rho, lam)
    if dominance_class(datum, rho).non_integral:
        other = virtual_dimension_ratio(datum, rho, lam)
        if other != value:
            raise CrossCheckFailed(
                f"d_{as_weight(lam)}: product {format_rational(value)} != ratio {format_rational(other)}"
            )
    return value
