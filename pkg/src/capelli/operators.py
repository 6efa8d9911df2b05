"""Difference operators on invariant polynomials as exact truncated matrices.

Operators are stored in the p-basis: the column at lambda is the
p-expansion of the operator applied to p_lambda.  Columns are exact, so
truncation only decides which columns exist.  The ``window`` of a matrix is
the largest w such that every column with ell(lambda) <= w is present.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping, Sequence

from .errors import (
    NoFixedGenerator,
    NotNonIntegral,
    NotStronglyDominant,
    ReconstructionFailed,
    SingularSystem,
    WindowExceeded,
    ZeroPolynomial,
)
from .interpolation import (
    PBasisVector,
    capelli_polynomial,
    interpolation_expand,
)
from .linalg import solve_many
from .poly import MultiPoly, orbit_monomial_basis, permutation_orbit
from .rational import format_rational, pochhammer
from .roots import (
    LinearForm,
    RhoVector,
    RootDatum,
    Weight,
    as_weight,
    dominance_class,
    enumerate_weights,
    f_tau,
    strong_dominance_violation,
    virtual_dimension,
)

DEFAULT_SEED = 271828
MAX_RETRIES = 10
OPERATOR_NAMES = ("L", "L_minus", "L_star", "E", "ell_mult", "D_of", "m_of")

Column = dict[Weight, Fraction]


def default_seed() -> int:
    raw = os.environ.get("CAPELLI_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


# -- matrices -----------------------------------------------------------------


def _clean(col: Mapping[Weight, Fraction]) -> Column:
    return {mu: c for mu, c in col.items() if c}


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A linear map on invariant polynomials, known on a window of p-basis inputs."""

    datum: RootDatum
    name: str
    shift: int
    columns: Mapping[Weight, Column]

    @property
    def window(self) -> int:
        """Largest w with every column of ell <= w present; -1 if none."""
        w = 0
        while True:
            level = [lam for lam in enumerate_weights(self.datum, w) if self.datum.ell_of(lam) == w]
            if not all(lam in self.columns for lam in level):
                return w - 1
            if not any(self.datum.ell_of(lam) > w for lam in self.columns):
                return w
            w += 1

    def column(self, lam) -> Column:
        lam = as_weight(lam)
        if lam not in self.columns:
            raise WindowExceeded(f"{self.name}: column {lam} is outside the validity window")
        return self.columns[lam]

    def entry(self, mu, lam) -> Fraction:
        return self.column(lam).get(as_weight(mu), Fraction(0))

    def apply(self, vec: Mapping) -> PBasisVector:
        out: dict[Weight, Fraction] = {}
        for lam, c in vec.items():
            if not c:
                continue
            for mu, a in self.column(lam).items():
                out[mu] = out.get(mu, Fraction(0)) + a * c
        return _clean(out)

    def restrict(self, window: int) -> "OperatorMatrix":
        if window > self.window:
            raise WindowExceeded(f"{self.name}: window {window} exceeds valid window {self.window}")
        cols = {lam: col for lam, col in self.columns.items() if self.datum.ell_of(lam) <= window}
        return OperatorMatrix(self.datum, self.name, self.shift, cols)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        # (self @ other) applies other first; a column survives only if
        # other's output lies inside self's known columns
        cols = {}
        for lam, col in other.columns.items():
            if all(mu in self.columns for mu in col):
                cols[lam] = self.apply(col)
        return OperatorMatrix(self.datum, f"({self.name})({other.name})", self.shift + other.shift, cols)

    def _combine(self, other: "OperatorMatrix", sign: int, name: str) -> "OperatorMatrix":
        cols = {}
        for lam in self.columns.keys() & other.columns.keys():
            col = dict(self.columns[lam])
            for mu, c in other.columns[lam].items():
                col[mu] = col.get(mu, Fraction(0)) + sign * c
            cols[lam] = _clean(col)
        return OperatorMatrix(self.datum, name, max(self.shift, other.shift), cols)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, 1, f"{self.name} + {other.name}")

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, -1, f"{self.name} - {other.name}")

    def scale(self, c) -> "OperatorMatrix":
        c = Fraction(c)
        cols = {lam: _clean({mu: a * c for mu, a in col.items()}) for lam, col in self.columns.items()}
        return OperatorMatrix(self.datum, f"{format_rational(c)}*{self.name}", self.shift, cols)

    def __neg__(self) -> "OperatorMatrix":
        return self.scale(-1)

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        out = (self @ other) - (other @ self)
        return OperatorMatrix(self.datum, f"[{self.name}, {other.name}]", out.shift, out.columns)

    def residual(self, other: "OperatorMatrix", window: int | None = None) -> dict[tuple[Weight, Weight], Fraction]:
        """Nonzero entries of self - other on a common window (default: the largest)."""
        common = min(self.window, other.window)
        if window is None:
            window = common
        elif window > common:
            raise WindowExceeded(f"window {window} exceeds the common window {common}")
        out = {}
        for lam in enumerate_weights(self.datum, window):
            a, b = self.columns[lam], other.columns[lam]
            for mu in a.keys() | b.keys():
                d = a.get(mu, Fraction(0)) - b.get(mu, Fraction(0))
                if d:
                    out[(mu, lam)] = d
        return out

    def equals_on(self, other: "OperatorMatrix", window: int | None = None) -> bool:
        return not self.residual(other, window)

    def support_shift(self) -> tuple[int, int]:
        """Observed (min, max) of ell(mu) - ell(lambda) over nonzero entries."""
        diffs = [
            self.datum.ell_of(mu) - self.datum.ell_of(lam)
            for lam, col in self.columns.items()
            for mu in col
        ]
        return (min(diffs), max(diffs)) if diffs else (0, 0)

    def dense(self, window: int) -> tuple[list[Weight], list[list[Fraction]]]:
        """Square matrix on the index ell <= window (rows beyond are dropped)."""
        index = enumerate_weights(self.datum, window)
        for lam in index:
            self.column(lam)
        return index, [[self.columns[lam].get(mu, Fraction(0)) for lam in index] for mu in index]

    def to_json(self) -> dict:
        index = sorted(
            {lam for lam in self.columns} | {mu for col in self.columns.values() for mu in col},
            key=lambda w: (self.datum.ell_of(w), w),
        )
        return {
            "operator": self.name,
            "degree_shift": self.shift,
            "window": self.window,
            "index": [list(w) for w in index],
            "columns": [
                {
                    "input": list(lam),
                    "entries": [
                        {"output": list(mu), "value": format_rational(col[mu])}
                        for mu in sorted(col, key=lambda w: (self.datum.ell_of(w), w))
                    ],
                }
                for lam, col in sorted(self.columns.items(), key=lambda kv: (self.datum.ell_of(kv[0]), kv[0]))
            ],
        }


def identity_matrix(datum: RootDatum, D: int) -> OperatorMatrix:
    cols = {lam: {lam: Fraction(1)} for lam in enumerate_weights(datum, D)}
    return OperatorMatrix(datum, "Id", 0, cols)


# -- direct application of L ------------------------------------------------------


def _random_point(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 7)) for _ in range(n))


def _difference_evaluator(datum: RootDatum, rho: RhoVector, sign: int):
    shifts = [(f_tau(datum, rho, eta), eta) for eta in datum.lambda1]

    def value(h: MultiPoly, v: Sequence[Fraction]) -> Fraction:
        # sign=+1: sum f_eta(v) h(v - eta);  sign=-1: sum f_eta(-v) h(v + eta)
        total = Fraction(0)
        for f, eta in shifts:
            coeff = f.evaluate(tuple(sign * x for x in v))
            if coeff:
                total += coeff * h(tuple(x - sign * e for x, e in zip(v, eta)))
        return total

    return value


def _reconstruct(
    datum: RootDatum,
    degree: int,
    funcs: Sequence[Callable[[Sequence[Fraction]], Fraction]],
    rng: random.Random,
) -> list[MultiPoly]:
    """Invariant polynomials of degree <= ``degree`` matching the sampled functions."""
    basis = orbit_monomial_basis(datum, degree)
    size = len(basis)
    for _ in range(MAX_RETRIES):
        points, rows, values = [], [], []
        try:
            while len(points) < size + 2:
                v = _random_point(rng, datum.n)
                vals = [f(v) for f in funcs]
                points.append(v)
                rows.append([b(v) for b in basis])
                values.append(vals)
        except ZeroDivisionError:
            continue
        try:
            sols = solve_many(rows[:size], [[vals[j] for vals in values[:size]] for j in range(len(funcs))])
        except SingularSystem:
            continue
        polys = []
        for coeffs in sols:
            p = MultiPoly.zero(datum.n)
            for c, b in zip(coeffs, basis):
                if c:
                    p = p + b * c
            polys.append(p)
        if all(p(points[i]) == values[i][j] for j, p in enumerate(polys) for i in range(size, size + 2)):
            return polys
    raise ReconstructionFailed(f"no invariant polynomial of degree <= {degree} fits the samples")


def apply_L_direct(
    datum: RootDatum,
    rho: RhoVector,
    h: MultiPoly,
    seed: int | None = None,
    sign: int = 1,
) -> MultiPoly:
    """L(h) = sum_eta f_eta(z) h(z - eta), by sampling and exact reconstruction.

    With ``sign=-1`` this computes L^-(h)(z) = sum_eta f_eta(-z) h(z + eta).
    """
    return apply_L_direct_many(datum, rho, [h], seed=seed, sign=sign)[0]


def apply_L_direct_many(
    datum: RootDatum,
    rho: RhoVector,
    hs: Sequence[MultiPoly],
    seed: int | None = None,
    sign: int = 1,
) -> list[MultiPoly]:
    if not hs:
        return []
    rng = random.Random(default_seed() if seed is None else seed)
    value = _difference_evaluator(datum, rho, sign)
    degree = max(h.degree() for h in hs) + 1
    if degree <= 0:
        return [MultiPoly.zero(datum.n) for _ in hs]
    funcs = [lambda v, h=h: value(h, v) for h in hs]
    return _reconstruct(datum, degree, funcs, rng)


# -- operator matrices -------------------------------------------------------------


def _require_strongly_dominant(datum: RootDatum, rho: RhoVector) -> None:
    violation = strong_dominance_violation(datum, rho)
    if violation is not None:
        raise NotStronglyDominant(f"rho is not strongly dominant: {violation}")


def _require_non_integral(datum: RootDatum, rho: RhoVector) -> None:
    if not dominance_class(datum, rho).non_integral:
        raise NotNonIntegral("rho is not non-integral")


def _expand_columns(datum: RootDatum, rho: RhoVector, images: Mapping[Weight, MultiPoly]) -> dict[Weight, Column]:
    return {lam: interpolation_expand(datum, rho, img) for lam, img in images.items()}


def _weights_upto(datum: RootDatum, w: int) -> list[Weight]:
    return enumerate_weights(datum, w) if w >= 0 else []


@lru_cache(maxsize=128)
def _difference_matrix(datum: RootDatum, rho: RhoVector, D: int, sign: int) -> OperatorMatrix:
    inputs = _weights_upto(datum, D - 1)
    images: dict[Weight, MultiPoly] = {}
    by_degree: dict[int, list[Weight]] = {}
    for lam in inputs:
        by_degree.setdefault(datum.ell_of(lam), []).append(lam)
    for _, group in sorted(by_degree.items()):
        polys = [capelli_polynomial(datum, rho, lam) for lam in group]
        for lam, img in zip(group, apply_L_direct_many(datum, rho, polys, sign=sign)):
            images[lam] = img
    name = "L" if sign == 1 else "L_minus"
    return OperatorMatrix(datum, name, 1, _expand_columns(datum, rho, images))


@lru_cache(maxsize=128)
def multiplication_matrix(datum: RootDatum, rho: RhoVector, h: MultiPoly, D: int) -> OperatorMatrix:
    """Multiplication by the invariant polynomial h, on inputs with ell <= D - deg h."""
    deg = max(h.degree(), 0)
    images = {lam: h * capelli_polynomial(datum, rho, lam) for lam in _weights_upto(datum, D - deg)}
    return OperatorMatrix(datum, f"m[{h}]", deg, _expand_columns(datum, rho, images))


def diagonal_matrix(datum: RootDatum, rho: RhoVector, h: MultiPoly, D: int) -> OperatorMatrix:
    """D_h, acting on p_lambda by the eigenvalue h(rho + lambda)."""
    cols = {lam: _clean({lam: h(rho.shifted(lam))}) for lam in enumerate_weights(datum, D)}
    return OperatorMatrix(datum, f"D[{h}]", 0, cols)


def operator_matrix(
    datum: RootDatum,
    rho: RhoVector,
    which: str,
    D: int,
    h: MultiPoly | None = None,
) -> OperatorMatrix:
    """Truncated p-basis matrix of one of the named operators.

    ``D`` bounds ell of every weight that appears.  L and L_minus raise
    degree by one, so their columns exist for ell <= D - 1; L_star, being
    built from them, has the same window.
    """
    if D < 1:
        raise ValueError("truncation D must be >= 1")
    if which not in OPERATOR_NAMES:
        raise ValueError(f"unknown operator {which!r}; expected one of {', '.join(OPERATOR_NAMES)}")
    ell = datum.ell_poly()
    if which == "L":
        return _difference_matrix(datum, rho, D, 1)
    if which == "ell_mult":
        m = multiplication_matrix(datum, rho, ell, D)
        return OperatorMatrix(datum, "ell", m.shift, m.columns)
    if which == "E":
        out = operator_matrix(datum, rho, "ell_mult", D) - operator_matrix(datum, rho, "L", D)
        return OperatorMatrix(datum, "E", 0, out.columns)
    if which in ("L_minus", "L_star"):
        _require_strongly_dominant(datum, rho)
        _require_non_integral(datum, rho)
        lminus = _difference_matrix(datum, rho, D, -1)
        if which == "L_minus":
            return lminus
        out = operator_matrix(datum, rho, "L", D) - operator_matrix(datum, rho, "ell_mult", D).scale(2) - lminus
        return OperatorMatrix(datum, "L_star", -1, out.columns)
    if h is None:
        raise ValueError(f"{which} needs a polynomial h")
    if which == "D_of":
        return diagonal_matrix(datum, rho, h, D)
    return multiplication_matrix(datum, rho, h, D)


def exp_ad_L(datum: RootDatum, rho: RhoVector, h: MultiPoly, D: int) -> OperatorMatrix:
    """sum_{i <= deg h} (ad L)^i (m_h) / i!, which should be D_h.

    The result is valid for inputs with ell <= D - 2 deg h.
    """
    deg = max(h.degree(), 0)
    L = operator_matrix(datum, rho, "L", D)
    term = multiplication_matrix(datum, rho, h, D)
    total = term
    for i in range(1, deg + 1):
        term = L.commutator(term)
        total = total + term.scale(Fraction(1, factorial(i)))
    out = OperatorMatrix(datum, f"exp(ad L)[{h}]", 0, total.columns)
    if out.window < 0:
        raise WindowExceeded(f"truncation {D} leaves no valid window for degree {deg}")
    return out


# -- scalar product, involution, exponentials -----------------------------------------


def _as_p_vector(datum: RootDatum, rho: RhoVector, f) -> PBasisVector:
    if isinstance(f, MultiPoly):
        return interpolation_expand(datum, rho, f)
    return {as_weight(k): Fraction(v) for k, v in f.items() if v}


def scalar_product(datum: RootDatum, rho: RhoVector, f, g) -> Fraction:
    """<f, g> with <p_lambda, p_mu> = d_lambda delta; f, g are p-vectors or polynomials."""
    _require_strongly_dominant(datum, rho)
    fv, gv = _as_p_vector(datum, rho, f), _as_p_vector(datum, rho, g)
    return sum(
        (fv[lam] * gv[lam] * virtual_dimension(datum, rho, lam) for lam in fv.keys() & gv.keys()),
        Fraction(0),
    )


def minus_involution(h: MultiPoly) -> MultiPoly:
    """h^-(z) = h(-z)."""
    return h.negate_args()


def exp_L_star(datum: RootDatum, rho: RhoVector, p: Mapping) -> PBasisVector:
    """exp(L*) applied to a p-vector; the series stops because L* lowers degree."""
    vec = _as_p_vector(datum, rho, p)
    if not vec:
        return {}
    top = max(datum.ell_of(lam) for lam in vec)
    Lstar = operator_matrix(datum, rho, "L_star", top + 1)
    total = dict(vec)
    term = dict(vec)
    d = 0
    while term:
        d += 1
        if d > top + 1:
            raise ReconstructionFailed("L* failed to lower degree")
        term = {mu: c / d for mu, c in Lstar.apply(term).items()}
        for mu, c in term.items():
            total[mu] = total.get(mu, Fraction(0)) + c
    return _clean(total)


def top_component(h: MultiPoly) -> MultiPoly:
    if h.is_zero():
        raise ZeroPolynomial("the zero polynomial has no top component")
    return h.homogeneous_component(h.degree())


# -- binomial formula data ----------------------------------------------------------------


@dataclass(frozen=True)
class BinomialData:
    delta: Weight
    omega_delta: LinearForm
    orbit: tuple[LinearForm, ...]
    ell_delta: LinearForm
    ell_upper: LinearForm
    rho: RhoVector

    def c(self, lam) -> Fraction:
        lam = as_weight(lam)
        out = Fraction(1)
        for omega in self.orbit:
            out *= pochhammer(omega(self.rho.coords) + self.rho.k(omega), int(omega(lam)))
        return out

    def to_json(self) -> dict:
        return {
            "delta": list(self.delta),
            "omega_delta": self.omega_delta.to_json(),
            "orbit": [f.to_json() for f in self.orbit],
            "ell_delta": self.ell_delta.to_json(),
            "ell_upper": self.ell_upper.to_json(),
        }


def binomial_data(datum: RootDatum, rho: RhoVector) -> BinomialData:
    """Data attached to a W-fixed generator delta of Lambda_+."""
    candidates = [
        (i, sigma)
        for i, sigma in enumerate(datum.sigma_dual)
        if len(permutation_orbit(sigma, datum.generators)) == 1
        and all(omega(sigma) in (0, 1) for omega in datum.phi)
    ]
    if not candidates:
        raise NoFixedGenerator(f"no W-fixed generator for {datum.case} n={datum.n}")
    i, delta = candidates[-1]
    omega_delta = datum.sigma[i]
    orbit = tuple(sorted(datum.weyl_orbit(omega_delta), key=lambda f: tuple(-c for c in f.coeffs)))
    ell_delta = LinearForm.of([0] * datum.n)
    for omega in orbit:
        ell_delta = ell_delta + omega
    return BinomialData(delta, omega_delta, orbit, ell_delta, datum.ell - ell_delta, rho)
