"""Named verification suites.

Each suite recomputes what it needs, checks one family of identities
exactly, and returns a :class:`SuiteReport` whose failures carry the exact
nonzero residuals.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from .errors import NotNonIntegral, NotStronglyDominant, UnsupportedCase
from .interpolation import (
    capelli_polynomials,
    from_p_basis,
    hat_transform,
    interpolation_expand,
    p_table,
    q_polynomial,
)
from .linalg import identity, matmul
from .operators import (
    binomial_data,
    default_seed,
    diagonal_matrix,
    exp_ad_L,
    exp_L_star,
    minus_involution,
    multiplication_matrix,
    operator_matrix,
    scalar_product,
    top_component,
)
from .poly import MultiPoly, is_invariant, orbit_monomial_basis, orbit_sum
from .rational import binomial, format_rational, pochhammer
from .roots import (
    RANK_ONE,
    RhoVector,
    RootDatum,
    Weight,
    build_datum,
    dominance_class,
    enumerate_cone,
    enumerate_weights,
    f_tau,
    is_dominant_weight,
    lambda_membership,
    rho_vector,
    strong_dominance_violation,
    virtual_dimension,
    virtual_dimension_product,
    virtual_dimension_ratio,
)

SCHEMA = "capelli/1"


# -- reports ----------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return format_rational(x)
    return x


@dataclass
class SuiteReport:
    suite: str
    case: str
    n: int
    r: Fraction
    s: Fraction
    max_ell: int
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "case": self.case,
            "n": self.n,
            "r": format_rational(self.r),
            "s": format_rational(self.s),
            "max_ell": self.max_ell,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    # recording helpers

    def equal(self, check: str, indices, lhs, rhs) -> bool:
        self.checks += 1
        diff = _difference(lhs, rhs)
        if diff is None:
            return True
        self.failures.append({"check": check, "indices": _jsonable(indices), "residual": diff})
        return False

    def holds(self, check: str, indices, condition: bool, detail: str = "") -> bool:
        self.checks += 1
        if condition:
            return True
        self.failures.append({"check": check, "indices": _jsonable(indices), "residual": detail or "false"})
        return False


def _difference(lhs, rhs) -> str | None:
    """Exact residual lhs - rhs as a string, or None when it vanishes."""
    if isinstance(lhs, Mapping) or isinstance(rhs, Mapping):
        keys = sorted(set(lhs) | set(rhs))
        parts = []
        for k in keys:
            d = Fraction(lhs.get(k, 0)) - Fraction(rhs.get(k, 0))
            if d:
                parts.append(f"{list(k) if isinstance(k, tuple) else k}: {format_rational(d)}")
        return "; ".join(parts) if parts else None
    if isinstance(lhs, MultiPoly) or isinstance(rhs, MultiPoly):
        d = lhs - rhs
        return None if d == 0 else str(d)
    d = Fraction(lhs) - Fraction(rhs)
    return None if not d else format_rational(d)


def _new_report(name: str, datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    return SuiteReport(name, datum.case, datum.n, rho.r, rho.s, max_ell)


def _require_strongly_dominant(datum: RootDatum, rho: RhoVector) -> None:
    violation = strong_dominance_violation(datum, rho)
    if violation is not None:
        raise NotStronglyDominant(f"rho is not strongly dominant: {violation}")


def _require_non_integral(datum: RootDatum, rho: RhoVector) -> None:
    if not dominance_class(datum, rho).non_integral:
        raise NotNonIntegral("rho is not non-integral")


def _rng() -> random.Random:
    return random.Random(default_seed())


def random_invariant(datum: RootDatum, degree: int, rng: random.Random) -> MultiPoly:
    """A random invariant polynomial of degree <= ``degree`` with small rational coefficients."""
    out = MultiPoly.zero(datum.n)
    for b in orbit_monomial_basis(datum, degree):
        out = out + b * Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return out


def _level(datum: RootDatum, weights: Sequence[Weight], ell: int) -> list[Weight]:
    return [w for w in weights if datum.ell_of(w) == ell]


# -- interpolation and root data ------------------------------------------------------


def verify_interpolation(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """Delta conditions, degree bound, invariance, dimension count and extra vanishing."""
    rep = _new_report("interpolation", datum, rho, max_ell)
    weights = enumerate_weights(datum, max_ell)
    polys = capelli_polynomials(datum, rho, max_ell)
    for d in range(max_ell + 1):
        rep.equal("dimension count", [d], len(enumerate_weights(datum, d)), len(orbit_monomial_basis(datum, d)))
    for lam in weights:
        p = polys[lam]
        rep.holds("degree bound", [lam], p.degree() <= datum.ell_of(lam), f"degree {p.degree()}")
        rep.holds("invariance", [lam], is_invariant(p, datum.generators))
        for mu in weights:
            value = p(rho.shifted(mu))
            if datum.ell_of(mu) <= datum.ell_of(lam):
                rep.equal("delta condition", [lam, mu], value, int(lam == mu))
            diff = tuple(a - b for a, b in zip(mu, lam))
            if not lambda_membership(datum, diff):
                rep.equal("extra vanishing", [lam, mu], value, 0)
    return rep


def verify_virtual_dimension(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """Product and ratio formulas for d_lambda agree."""
    _require_strongly_dominant(datum, rho)
    _require_non_integral(datum, rho)
    rep = _new_report("virtual_dimension", datum, rho, max_ell)
    for lam in enumerate_weights(datum, max_ell):
        rep.equal(
            "product = ratio",
            [lam],
            virtual_dimension_product(datum, rho, lam),
            virtual_dimension_ratio(datum, rho, lam),
        )
    return rep


# -- transposition, evaluation, symmetry -------------------------------------------------


def verify_transposition(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """q_lambda(-z) = sum_mu (-1)^ell(mu) p_mu(rho+lambda) q_mu(z)."""
    _require_strongly_dominant(datum, rho)
    rep = _new_report("transposition", datum, rho, max_ell)
    table = p_table(datum, rho, max_ell)
    q = {lam: q_polynomial(datum, rho, lam) for lam in table.index}
    for lam in table.index:
        rhs = MultiPoly.zero(datum.n)
        for mu in table.index:
            if datum.ell_of(mu) <= datum.ell_of(lam):
                c = table.entry(mu, lam)
                if c:
                    rhs = rhs + q[mu] * ((-1) ** datum.ell_of(mu) * c)
        rep.equal("transposition", [lam], minus_involution(q[lam]), rhs)
    return rep


def verify_evaluation(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """p_mu(-rho) = (-1)^ell(mu) d_mu."""
    _require_strongly_dominant(datum, rho)
    rep = _new_report("evaluation", datum, rho, max_ell)
    polys = capelli_polynomials(datum, rho, max_ell)
    for mu, p in polys.items():
        rep.equal(
            "evaluation at -rho",
            [mu],
            p(rho.minus()),
            (-1) ** datum.ell_of(mu) * virtual_dimension(datum, rho, mu),
        )
    return rep


def verify_symmetry(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """q_lambda(-rho-nu) = q_nu(-rho-lambda)."""
    _require_strongly_dominant(datum, rho)
    rep = _new_report("symmetry", datum, rho, max_ell)
    weights = enumerate_weights(datum, max_ell)
    q = {lam: q_polynomial(datum, rho, lam) for lam in weights}
    for lam in weights:
        rep.equal("normalization", [lam], q[lam](rho.minus()), 1)
        for nu in weights:
            if nu < lam:
                continue
            rep.equal("symmetry", [lam, nu], q[lam](rho.shifted(nu, -1)), q[nu](rho.shifted(lam, -1)))
    return rep


# -- Pieri formulas for h = ell, cut-off, Yan formula ----------------------------------------


def verify_pieri_ell(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """Pieri rules for multiplication by ell in the p- and q-bases.

    Also checks the binomial Pieri rule, the cut-off properties of f_tau
    and the homogeneous (top component) version of the binomial rule.
    """
    _require_strongly_dominant(datum, rho)
    _require_non_integral(datum, rho)
    rep = _new_report("pieri_ell", datum, rho, max_ell)
    table = p_table(datum, rho, max_ell)
    P = capelli_polynomials(datum, rho, max_ell)
    Q = {lam: q_polynomial(datum, rho, lam) for lam in table.index}
    dims = {lam: virtual_dimension(datum, rho, lam) for lam in table.index}
    ell = datum.ell_poly()
    fs = {eta: f_tau(datum, rho, eta) for eta in datum.lambda1}

    for mu in table.index:
        if datum.ell_of(mu) + 1 > max_ell:
            continue
        point = rho.shifted(mu, -1)
        base = datum.ell(point)
        rhs_p = P[mu] * base
        rhs_q = Q[mu] * base
        for eta, f in fs.items():
            nu = tuple(a + b for a, b in zip(mu, eta))
            coeff = f(point)
            if is_dominant_weight(nu):
                rhs_p = rhs_p + P[nu] * (dims[mu] / dims[nu] * coeff)
                rhs_q = rhs_q - Q[nu] * coeff
            else:
                rep.equal("cut-off at -rho-mu", [mu, eta], coeff, 0)
        rep.equal("Pieri p-basis", [mu], -ell * P[mu], rhs_p)
        rep.equal("Pieri q-basis", [mu], -ell * Q[mu], rhs_q)

    for lam in table.index:
        top_lam = P[lam].homogeneous_component(datum.ell_of(lam))
        for k in range(0, max_ell - datum.ell_of(lam) + 1):
            shifted_ell = ell - datum.ell(rho.shifted(lam))
            lhs = binomial(shifted_ell, k) * P[lam]
            targets = _level(datum, table.index, datum.ell_of(lam) + k)
            rhs = MultiPoly.zero(datum.n)
            rhs_top = MultiPoly.zero(datum.n)
            for mu in targets:
                c = table.entry(lam, mu)
                if c:
                    rhs = rhs + P[mu] * c
                    rhs_top = rhs_top + P[mu].homogeneous_component(datum.ell_of(mu)) * c
            rep.equal("binomial Pieri", [lam, k], lhs, rhs)
            rep.equal("Yan formula", [lam, k], (ell ** k) * top_lam * Fraction(1, factorial(k)), rhs_top)

    depth = min(3, max_ell)
    cone = enumerate_cone(datum, depth)
    for lam in enumerate_weights(datum, depth):
        for tau in cone:
            f = f_tau(datum, rho, tau)
            down = tuple(a - b for a, b in zip(lam, tau))
            up = tuple(a + b for a, b in zip(lam, tau))
            if not is_dominant_weight(down):
                rep.equal("cut-off at rho+lambda", [lam, tau], f(rho.shifted(lam)), 0)
            if not is_dominant_weight(up):
                rep.equal("cut-off at -rho-mu", [lam, tau], f(rho.shifted(lam, -1)), 0)
    return rep


# -- hat transform -----------------------------------------------------------------------


def _hat_matrix(datum: RootDatum, table) -> list[list[Fraction]]:
    # H[mu][tau] = (-1)^ell(tau) p_tau(rho + mu): values in, transformed values out
    idx = table.index
    return [
        [(-1) ** datum.ell_of(tau) * table.values[j][i] for j, tau in enumerate(idx)]
        for i, _ in enumerate(idx)
    ]


def _point_L(datum: RootDatum, rho: RhoVector, index: Sequence[Weight]) -> list[list[Fraction]]:
    # (L phi)(rho + lam) = sum_eta f_eta(rho + lam) phi(rho + lam - eta)
    pos = {w: i for i, w in enumerate(index)}
    fs = [(eta, f_tau(datum, rho, eta)) for eta in datum.lambda1]
    out = [[Fraction(0)] * len(index) for _ in index]
    for i, lam in enumerate(index):
        for eta, f in fs:
            nu = tuple(a - b for a, b in zip(lam, eta))
            c = f(rho.shifted(lam))
            if nu in pos:
                out[i][pos[nu]] += c
    return out


def _point_exp_ad(Lv, Hdiag, degree: int):
    n = len(Lv)

    def sub(A, B):
        return [[A[i][j] - B[i][j] for j in range(n)] for i in range(n)]

    total = [row[:] for row in Hdiag]
    term = Hdiag
    for i in range(1, degree + 1):
        term = sub(matmul(Lv, term), matmul(term, Lv))
        total = [[total[a][b] + term[a][b] / factorial(i) for b in range(n)] for a in range(n)]
    return total


def _matrix_residual(A, B, index) -> dict:
    out = {}
    for i, mu in enumerate(index):
        for j, lam in enumerate(index):
            d = A[i][j] - B[i][j]
            if d:
                out[(mu, lam)] = d
    return out


def verify_hat_suite(datum: RootDatum, rho: RhoVector, max_ell: int, samples: int = 20) -> SuiteReport:
    """Involutivity, interpolation formula and conjugation identities of the hat transform."""
    _require_strongly_dominant(datum, rho)
    rep = _new_report("hat", datum, rho, max_ell)
    table = p_table(datum, rho, max_ell)
    idx = list(table.index)
    ell_of = datum.ell_of

    # M[mu][lam] = (-1)^ell(mu) p_mu(rho+lam) on downward-closed index sets
    M = [[(-1) ** ell_of(mu) * table.values[i][j] for j in range(len(idx))] for i, mu in enumerate(idx)]
    for w in range(max_ell + 1):
        window = [i for i, lam in enumerate(idx) if ell_of(lam) <= w]
        top = [i for i in window if ell_of(idx[i]) == w]
        subsets = [window] + [[i for i in window if i != t] for t in top if len(top) > 1]
        for sub in subsets:
            Ms = [[M[a][b] for b in sub] for a in sub]
            sq = matmul(Ms, Ms)
            rep.equal("M^2 = I", [w, [idx[i] for i in sub]], _flatten(sq), _flatten(identity(len(sub))))

    for nu in idx:
        chi = {nu: Fraction(1)}
        hat = hat_transform(datum, rho, chi, max_ell)
        sign = (-1) ** ell_of(nu)
        expected = {lam: sign * table.entry(nu, lam) for lam in idx}
        rep.equal("hat of characteristic function", [nu], hat, expected)

    rng = _rng()
    for t in range(samples):
        h = random_invariant(datum, max_ell, rng)
        values = {lam: h(rho.shifted(lam)) for lam in idx}
        hat = hat_transform(datum, rho, h, max_ell)
        back = hat_transform(datum, rho, hat, max_ell)
        rep.equal("hat involution", [t], back, values)
        formula = MultiPoly.zero(datum.n)
        P = capelli_polynomials(datum, rho, max_ell)
        for mu in idx:
            if hat[mu]:
                formula = formula + P[mu] * ((-1) ** ell_of(mu) * hat[mu])
        rep.equal("interpolation formula", [t], formula, h)
        coords = interpolation_expand(datum, rho, h)
        rep.equal("expansion = signed hat", [t], coords,
                  {mu: (-1) ** ell_of(mu) * hat[mu] for mu in idx if hat[mu]})

    if dominance_class(datum, rho).non_integral:
        H = _hat_matrix(datum, table)
        Lv = _point_L(datum, rho, idx)
        neg = [[-x for x in row] for row in Lv]
        rep.equal("conjugated L = -L", [], _matrix_residual(matmul(matmul(H, Lv), H), neg, idx), {})
        ell = datum.ell_poly()
        for name, h in (("ell", ell), ("ell^2", ell * ell)):
            diag = [[h(rho.shifted(lam)) if i == j else Fraction(0) for j in range(len(idx))]
                    for i, lam in enumerate(idx)]
            conj = matmul(matmul(H, diag), H)
            Dh = _point_exp_ad(Lv, diag, h.degree())
            rep.equal(f"conjugated m_h = D_h ({name})", [], _matrix_residual(conj, Dh, idx), {})
            for mu in idx:
                vec = [table.entry(mu, lam) for lam in idx]
                image = [sum((Dh[i][j] * vec[j] for j in range(len(idx))), Fraction(0)) for i in range(len(idx))]
                expected = [h(rho.shifted(mu)) * v for v in vec]
                rep.equal(f"D_h eigenvalue on values ({name})", [mu],
                          dict(enumerate(image)), dict(enumerate(expected)))
    return rep


def _flatten(A) -> dict:
    return {(i, j): x for i, row in enumerate(A) for j, x in enumerate(row) if x}


# -- operators -----------------------------------------------------------------------------


def verify_eigen(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """exp(ad L)(h) is diagonal with eigenvalues h(rho + lambda); L agrees with its point action."""
    rep = _new_report("eigen", datum, rho, max_ell)
    ell = datum.ell_poly()
    one = MultiPoly.constant(1, datum.n)
    L = operator_matrix(datum, rho, "L", max_ell + 1)
    rep.equal("L(1) = ell - ell(rho)", [], from_p_basis(datum, rho, L.column((0,) * datum.n)),
              ell - datum.ell(rho.coords))
    if dominance_class(datum, rho).non_integral:
        table = p_table(datum, rho, max_ell + 1)
        idx = list(table.index)
        Lv = _point_L(datum, rho, idx)
        P = capelli_polynomials(datum, rho, max_ell + 1)
        for lam in enumerate_weights(datum, max_ell):
            image = from_p_basis(datum, rho, L.column(lam))
            direct = {nu: image(rho.shifted(nu)) for nu in idx}
            pointwise = {
                nu: sum((Lv[i][j] * P[lam](rho.shifted(idx[j])) for j in range(len(idx))), Fraction(0))
                for i, nu in enumerate(idx)
            }
            rep.equal("L on values", [lam], direct, pointwise)
    hs = [("1", one), ("ell", ell), ("ell^2", ell * ell)]
    if datum.n >= 1:
        hs.append(("orbit(z1^2)", orbit_sum(tuple(2 * int(i == 0) for i in range(datum.n)), datum.generators)))
    for name, h in hs:
        deg = max(h.degree(), 0)
        D = max_ell + 2 * deg
        X = exp_ad_L(datum, rho, h, D)
        rep.holds("window", [name], X.window >= max_ell, f"window {X.window}")
        rep.equal(f"exp(ad L)({name}) = D_h", [name],
                  _op_residual(X, diagonal_matrix(datum, rho, h, D), max_ell), {})
    E = operator_matrix(datum, rho, "E", max_ell + 1)
    rep.equal("E = D_ell", [], _op_residual(E, diagonal_matrix(datum, rho, ell, max_ell + 1), max_ell), {})
    return rep


def _op_residual(A, B, window: int) -> dict:
    return {k: v for k, v in A.residual(B, window).items()}


def _gram_residual(datum: RootDatum, rho: RhoVector, X, Y, window: int) -> dict:
    """Entries where <X p_mu, p_lam> != <p_mu, Y p_lam> on the window."""
    out = {}
    weights = enumerate_weights(datum, window)
    dims = {lam: virtual_dimension(datum, rho, lam) for lam in weights}
    for mu in weights:
        for lam in weights:
            left = X.entry(lam, mu) * dims[lam]
            right = dims[mu] * Y.entry(mu, lam)
            if left != right:
                out[(mu, lam)] = left - right
    return out


def _minus_matrix(datum: RootDatum, rho: RhoVector, D: int):
    from .operators import OperatorMatrix

    cols = {
        lam: interpolation_expand(datum, rho, minus_involution(p))
        for lam, p in capelli_polynomials(datum, rho, D).items()
    }
    return OperatorMatrix(datum, "minus", 0, cols)


def _check_adjoints(rep: SuiteReport, datum: RootDatum, rho: RhoVector, window: int) -> None:
    D = window + 2
    L = operator_matrix(datum, rho, "L", D)
    Lm = operator_matrix(datum, rho, "L_minus", D)
    Ls = operator_matrix(datum, rho, "L_star", D)
    rep.equal("L adjoint is L*", [window], _gram_residual(datum, rho, L, Ls, window), {})
    rep.equal("L- self-adjoint", [window], _gram_residual(datum, rho, Lm, Lm, window), {})
    N = _minus_matrix(datum, rho, D)
    rng = _rng()
    ell = datum.ell_poly()
    for name, h in (("ell", ell), ("random", random_invariant(datum, 2, rng))):
        deg = max(h.degree(), 0)
        m = multiplication_matrix(datum, rho, h, window + deg)
        Dh = diagonal_matrix(datum, rho, h, D)
        Dh_minus = N @ Dh @ N
        rep.equal(f"h adjoint is (D_h)^- ({name})", [window], _gram_residual(datum, rho, m, Dh_minus, window), {})
        rep.equal(f"D_h self-adjoint ({name})", [window], _gram_residual(datum, rho, Dh, Dh, window), {})
        # second route to (D_h)^-: exp(ad L^-) applied to h^-
        Dw = window + 2 * deg
        Lm_big = operator_matrix(datum, rho, "L_minus", Dw)
        term = multiplication_matrix(datum, rho, minus_involution(h), Dw)
        total = term
        for i in range(1, deg + 1):
            term = Lm_big.commutator(term)
            total = total + term.scale(Fraction(1, factorial(i)))
        rep.equal(f"(D_h)^- = exp(ad L^-)(h^-) ({name})", [window], _op_residual(total, Dh_minus, window), {})


def verify_scalar_product(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """Orthogonality relations, evaluation by pairing, and adjoint identities."""
    _require_strongly_dominant(datum, rho)
    _require_non_integral(datum, rho)
    rep = _new_report("scalar_product", datum, rho, max_ell)
    weights = enumerate_weights(datum, max_ell)
    P = capelli_polynomials(datum, rho, max_ell)
    Q = {lam: q_polynomial(datum, rho, lam) for lam in weights}
    dims = {lam: virtual_dimension(datum, rho, lam) for lam in weights}
    for lam in weights:
        for mu in weights:
            rep.equal("<p, q>", [lam, mu], scalar_product(datum, rho, P[lam], Q[mu]),
                      (-1) ** datum.ell_of(lam) * int(lam == mu))
            rep.equal("<q, q>", [lam, mu], scalar_product(datum, rho, Q[lam], Q[mu]),
                      1 / dims[lam] if lam == mu else 0)
    rng = _rng()

    def minus_pair(a: MultiPoly, b: MultiPoly) -> Fraction:
        return scalar_product(datum, rho, minus_involution(a), minus_involution(b))

    for t in range(5):
        g = random_invariant(datum, max_ell, rng)
        h = random_invariant(datum, max_ell, rng)
        g_hat = hat_transform(datum, rho, g, max_ell)
        h_hat = hat_transform(datum, rho, h, max_ell)
        for lam in weights:
            rep.equal("<q^-, h> = h(rho+lambda)", [t, lam],
                      scalar_product(datum, rho, minus_involution(Q[lam]), h), h(rho.shifted(lam)))
            rep.equal("<q, h> = hat h(rho+lambda)", [t, lam], scalar_product(datum, rho, Q[lam], h), h_hat[lam])
        rep.equal("<g, h> via hats", [t], scalar_product(datum, rho, g, h),
                  sum((dims[mu] * g_hat[mu] * h_hat[mu] for mu in weights), Fraction(0)))
        rep.equal("symmetry", [t], scalar_product(datum, rho, g, h), scalar_product(datum, rho, h, g))

        f = random_invariant(datum, max_ell, rng)
        k = random_invariant(datum, max_ell, rng)
        m = random_invariant(datum, 2, rng)
        # D_{m^-} acts diagonally on p-coordinates with eigenvalues m(-rho-lambda)
        coords = interpolation_expand(datum, rho, f)
        Df = from_p_basis(datum, rho, {lam: c * m(rho.shifted(lam, -1)) for lam, c in coords.items()})
        rep.equal("D_{h^-} adjoint to h", [t], minus_pair(Df, k), minus_pair(f, m * k))

    for w in range(max_ell + 1):
        _check_adjoints(rep, datum, rho, w)
    return rep


def _power_vector(matrix, vec: dict, d: int) -> dict:
    for _ in range(d):
        vec = matrix.apply(vec)
    return vec


def verify_sl2(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """sl2 commutation relations, adjoints, and the power formulas."""
    _require_strongly_dominant(datum, rho)
    _require_non_integral(datum, rho)
    rep = _new_report("sl2", datum, rho, max_ell)
    w = max_ell
    D = w + 2
    L = operator_matrix(datum, rho, "L", D)
    Lm = operator_matrix(datum, rho, "L_minus", D)
    Ls = operator_matrix(datum, rho, "L_star", D)
    ell = operator_matrix(datum, rho, "ell_mult", D)
    E = operator_matrix(datum, rho, "E", D)
    relations = [
        ("[2 ell, L] = 2L", ell.scale(2).commutator(L), L.scale(2)),
        ("[L, L-] = 2 ell", L.commutator(Lm), ell.scale(2)),
        ("[2E, L] = 2L", E.scale(2).commutator(L), L.scale(2)),
        ("[-L, L*] = 2E", (-L).commutator(Ls), E.scale(2)),
        ("[2E, L*] = -2L*", E.scale(2).commutator(Ls), Ls.scale(-2)),
        ("[2 ell, L-] = -2L-", ell.scale(2).commutator(Lm), Lm.scale(-2)),
    ]
    for name, lhs, rhs in relations:
        rep.holds(f"window {name}", [w], min(lhs.window, rhs.window) >= w,
                  f"window {min(lhs.window, rhs.window)}")
        rep.equal(name, [w], _op_residual(lhs, rhs, w), {})
    lo, hi = Ls.support_shift()
    rep.holds("L* lowers ell by one", [], (lo, hi) == (-1, -1) or not Ls.columns or (lo, hi) == (0, 0),
              f"shift range {lo}..{hi}")

    _check_adjoints(rep, datum, rho, min(w, 2))

    table = p_table(datum, rho, w)
    idx = table.index
    for lam in idx:
        for d in range(0, w - datum.ell_of(lam) + 1):
            lhs = {k: v / factorial(d) for k, v in _power_vector(L, {lam: Fraction(1)}, d).items()}
            rhs = {mu: table.entry(lam, mu) for mu in _level(datum, idx, datum.ell_of(lam) + d)}
            rep.equal("L power formula", [lam, d], lhs, {k: v for k, v in rhs.items() if v})
        scale = 1 / capelli_polynomials(datum, rho, w)[lam](rho.minus())
        q_vec = {lam: scale}
        for d in range(0, datum.ell_of(lam) + 1):
            minus_Ls = Ls.scale(-1)
            lhs = {k: v / factorial(d) for k, v in _power_vector(minus_Ls, q_vec, d).items()}
            rhs: dict = {}
            for mu in _level(datum, idx, datum.ell_of(lam) - d):
                c = table.entry(mu, lam)
                if c:
                    q_mu = 1 / capelli_polynomials(datum, rho, w)[mu](rho.minus())
                    rhs[mu] = rhs.get(mu, Fraction(0)) + c * q_mu
            rep.equal("L* power formula", [lam, d], lhs, rhs)
        p_minus = minus_involution(capelli_polynomials(datum, rho, w)[lam])
        expected = {k: (-1) ** datum.ell_of(lam) * v for k, v in interpolation_expand(datum, rho, p_minus).items()}
        rep.equal("exp(L*) p = (-1)^ell p^-", [lam], exp_L_star(datum, rho, {lam: Fraction(1)}), expected)
    return rep


# -- binomial formula ---------------------------------------------------------------------------


def verify_binomial(datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    """Binomial formula for the renormalized top components at delta."""
    _require_strongly_dominant(datum, rho)
    rep = _new_report("binomial", datum, rho, max_ell)
    bd = binomial_data(datum, rho)
    for omega in datum.phi:
        rep.holds("omega(delta) in {0,1}", [list(map(format_rational, omega.coeffs))], omega(bd.delta) in (0, 1))
    rep.equal("ell = ell_delta + ell^delta", [], dict(enumerate(datum.ell.coeffs)),
              dict(enumerate((bd.ell_delta + bd.ell_upper).coeffs)))
    table = p_table(datum, rho, max_ell)
    P = capelli_polynomials(datum, rho, max_ell)
    qbar = {}
    for lam in table.index:
        top = top_component(P[lam])
        rep.equal("top degree", [lam], top.degree(), datum.ell_of(lam))
        qbar[lam] = top * (bd.c(lam) / virtual_dimension(datum, rho, lam))
    z = MultiPoly.variable(0, 1) if datum.n == 1 else None
    for lam in table.index:
        lhs = qbar[lam].shift(tuple(-x for x in bd.delta))
        rhs = MultiPoly.zero(datum.n)
        for mu in table.index:
            if datum.ell_of(mu) <= datum.ell_of(lam) and bd.ell_upper(mu) == bd.ell_upper(lam):
                c = table.entry(mu, lam)
                if c:
                    rhs = rhs + qbar[mu] * c
        rep.equal("binomial formula", [lam], lhs, rhs)
        rep.equal("value at delta", [lam], qbar[lam](bd.delta), int(bd.ell_upper(lam) == 0))
        if z is not None:
            k = lam[0]
            rep.equal("rank one: qbar = z^lambda", [lam], qbar[lam], z ** k)
            expected = sum((z ** m * binomial(k, m) for m in range(k + 1)), MultiPoly.zero(1))
            rep.equal("rank one: (z+1)^lambda", [lam], (z + 1) ** k, expected)
    return rep


# -- rank one closed forms ---------------------------------------------------------------------


def _forward_difference(h: MultiPoly, k: int) -> MultiPoly:
    for _ in range(k):
        h = h.shift((-1,)) - h
    return h


def _backward(h: MultiPoly, k: int) -> MultiPoly:
    # nabla = 1 - T with T h(z) = h(z - 1)
    for _ in range(k):
        h = h - h.shift((1,))
    return h


def verify_rank_one_closed_forms(s, max_ell: int) -> SuiteReport:
    """Every closed form of the rank-one case, exactly."""
    s = Fraction(s)
    datum = build_datum(RANK_ONE, 1)
    rho = rho_vector(datum, 0, s)
    _require_strongly_dominant(datum, rho)
    rep = _new_report("rank_one_closed_forms", datum, rho, max_ell)
    z = MultiPoly.variable(0, 1)
    x = z - s
    P = capelli_polynomials(datum, rho, max_ell)
    for (lam,), p in P.items():
        w = (lam,)
        rep.equal("p = binom(z - s, lambda)", [lam], p, binomial(x, lam))
        q = q_polynomial(datum, rho, w)
        rep.equal("q = (s - z)_lambda / (2s)_lambda", [lam], q, pochhammer(s - z, lam) * (1 / pochhammer(2 * s, lam)))
        rep.equal("d = binom(2s - 1 + lambda, lambda)", [lam], virtual_dimension(datum, rho, w),
                  binomial(2 * s - 1 + lam, lam))
        rep.equal("L = (z - s) T", [lam], from_p_basis(datum, rho, operator_matrix(datum, rho, "L", max_ell + 1).column(w)),
                  x * p.shift((1,)))
        for other in range(max_ell + 1):
            rep.equal("p-table = binom(lambda, mu)", [other, lam], P[(other,)](rho.shifted(w)), binomial(lam, other))

    h = z ** 4
    hat = hat_transform(datum, rho, h, max_ell)
    for (lam,), value in hat.items():
        rep.equal("hat h = (-1)^lambda Delta^lambda h(s)", [lam], value,
                  (-1) ** lam * _forward_difference(h, lam)((s,)))

    cube = z ** 3
    newton = sum(
        (binomial(z, mu) * _forward_difference(cube, mu)((s,)) for mu in range(4)),
        MultiPoly.zero(1),
    )
    rep.equal("Newton interpolation of z^3", [], cube.shift((-s,)), newton)

    for h_name, hh in (("z^2", z ** 2), ("z^4", z ** 4)):
        for (lam,), p in P.items():
            eigen = hh((s + lam,)) * p
            form_a = MultiPoly.zero(1)
            form_b = MultiPoly.zero(1)
            for d in range(hh.degree() + 1):
                # (-1)^d binom(z-s, d) (nabla^d h)(z) (T^d p)(z)
                form_a = form_a + binomial(x, d) * _backward(hh, d) * p.shift((d,)) * (-1) ** d
                form_b = form_b + binomial(x, d) * _backward(p, d) * _backward(hh, d)((s + d,))
            rep.equal(f"D_h difference form ({h_name})", [lam], form_a, eigen)
            rep.equal(f"D_h nabla form ({h_name})", [lam], form_b, eigen)

    rep.equal("L^- = -(z + s) T^-1", [],
              from_p_basis(datum, rho, operator_matrix(datum, rho, "L_minus", 2).column((1,))),
              -(z + s) * P[(1,)].shift((-1,)))

    for lam in range(max_ell + 1):
        rhs = sum(
            ((-1) ** mu * binomial(lam, mu) * pochhammer(s - z, mu) * (1 / pochhammer(2 * s, mu))
             for mu in range(lam + 1)),
            MultiPoly.zero(1),
        )
        rep.equal("Chu-Vandermonde transposition", [lam], pochhammer(z + s, lam) * (1 / pochhammer(2 * s, lam)), rhs)
        for nu in range(max_ell + 1):
            rep.equal("symmetry closed form", [lam, nu],
                      pochhammer(2 * s + nu, lam) / pochhammer(2 * s, lam),
                      pochhammer(2 * s + lam, nu) / pochhammer(2 * s, nu))
    return rep


# -- registry ------------------------------------------------------------------------------------

SuiteFn = Callable[[RootDatum, RhoVector, int], SuiteReport]

SUITES: dict[str, SuiteFn] = {
    "interpolation": verify_interpolation,
    "virtual_dimension": verify_virtual_dimension,
    "transposition": verify_transposition,
    "evaluation": verify_evaluation,
    "symmetry": verify_symmetry,
    "pieri_ell": verify_pieri_ell,
    "hat": verify_hat_suite,
    "eigen": verify_eigen,
    "scalar_product": verify_scalar_product,
    "sl2": verify_sl2,
    "binomial": verify_binomial,
    "rank_one_closed_forms": lambda datum, rho, max_ell: verify_rank_one_closed_forms(rho.s, max_ell),
}


def suite_names(datum: RootDatum) -> list[str]:
    names = [k for k in SUITES if k != "rank_one_closed_forms"]
    if datum.case == RANK_ONE:
        names.append("rank_one_closed_forms")
    return names


def run_suite(name: str, datum: RootDatum, rho: RhoVector, max_ell: int) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    if name == "rank_one_closed_forms" and datum.case != RANK_ONE:
        raise UnsupportedCase("rank_one_closed_forms needs the rank-one case")
    return SUITES[name](datum, rho, max_ell)
