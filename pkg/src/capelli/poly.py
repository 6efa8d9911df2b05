"""Sparse multivariate polynomials over the rationals and W-orbit bases."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .rational import format_rational, parse_rational

Exponent = tuple[int, ...]


def _grlex_key(exp: Exponent):
    # descending total degree, then descending lex: leading term first
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Polynomial in ``n`` variables with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` coefficients.
    Instances are treated as immutable; every operation returns a new one.
    """

    __slots__ = ("n", "_terms", "_hash", "_intform")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None):
        self.n = n
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {n} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None
        self._intform = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        obj._intform = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "MultiPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, c, n: int) -> "MultiPoly":
        c = Fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def variable(cls, i: int, n: int) -> "MultiPoly":
        exp = [0] * n
        exp[i] = 1
        return cls._raw(n, {tuple(exp): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "MultiPoly":
        """``sum_i coeffs[i] z_i + const``."""
        n = len(coeffs)
        terms: dict[Exponent, Fraction] = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        terms[(0,) * n] = const
        return cls(n, terms)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coeff})

    # -- container protocol ---------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in canonical (graded lexicographic, leading first) order."""
        for exp in sorted(self._terms, key=_grlex_key):
            yield exp, self._terms[exp]

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.n, Fraction(0))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.n)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            v = terms.get(exp, 0) + c
            if v:
                terms[exp] = v
            else:
                terms.pop(exp, None)
        return MultiPoly._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return MultiPoly.zero(self.n)
            return MultiPoly._raw(self.n, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.n, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self.n)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and substitution -------------------------------------------

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    def _integer_form(self):
        # (common denominator, integer terms, per-variable max exponent, degree)
        if self._intform is None:
            den = 1
            for c in self._terms.values():
                den = lcm(den, c.denominator)
            terms = [(e, int(c * den)) for e, c in self._terms.items()]
            maxdeg = [max((e[i] for e in self._terms), default=0) for i in range(self.n)]
            self._intform = (den, terms, maxdeg, self.degree())
        return self._intform

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n:
            raise ValueError(f"need {self.n} coordinates, got {len(point)}")
        if not self._terms:
            return Fraction(0)
        den, terms, maxdeg, deg = self._integer_form()
        # homogenize over a common denominator so the sum stays in integers
        point = [Fraction(x) for x in point]
        q = 1
        for x in point:
            q = lcm(q, x.denominator)
        nums = [x.numerator * (q // x.denominator) for x in point]
        powers = []
        for x, m in zip(nums, maxdeg):
            row = [1]
            for _ in range(m):
                row.append(row[-1] * x)
            powers.append(row)
        qpow = [1]
        for _ in range(deg):
            qpow.append(qpow[-1] * q)
        total = 0
        for exp, c in terms:
            term = c * qpow[deg - sum(exp)]
            for i, e in enumerate(exp):
                if e:
                    term *= powers[i][e]
            total += term
        return Fraction(total, den * qpow[deg])

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace ``z_i`` by ``images[i]`` (all in the same ring)."""
        if len(images) != self.n:
            raise ValueError("need one image per variable")
        m = images[0].n if images else self.n
        cache: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(1, m)} for _ in images]

        def power(i: int, e: int) -> MultiPoly:
            table = cache[i]
            if e not in table:
                table[e] = power(i, e - 1) * images[i]
            return table[e]

        result = MultiPoly.zero(m)
        for exp, c in self._terms.items():
            term = MultiPoly.constant(c, m)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def shift(self, eta: Sequence) -> "MultiPoly":
        """The polynomial ``z -> h(z - eta)``."""
        return self.substitute(
            [MultiPoly.variable(i, self.n) - Fraction(eta[i]) for i in range(self.n)]
        )

    def negate_args(self) -> "MultiPoly":
        """The polynomial ``z -> h(-z)``."""
        return MultiPoly._raw(
            self.n, {e: (-c if sum(e) % 2 else c) for e, c in self._terms.items()}
        )

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute ``z_i -> z_{perm[i]}``."""
        terms: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            new = [0] * self.n
            for i, e in enumerate(exp):
                new[perm[i]] += e
            terms[tuple(new)] = c
        return MultiPoly._raw(self.n, terms)

    def homogeneous_component(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.n, {e: c for e, c in self._terms.items() if sum(e) == d})

    # -- output -----------------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coeff": format_rational(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], n: int | None = None) -> "MultiPoly":
        data = list(data)
        if n is None:
            if not data:
                raise ValueError("cannot infer variable count from empty polynomial")
            n = len(data[0]["exp"])
        return cls(n, {tuple(t["exp"]): parse_rational(t["coeff"]) for t in data})

    def _var_names(self) -> list[str]:
        return ["z"] if self.n == 1 else [f"z{i + 1}" for i in range(self.n)]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self._var_names()
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {self})"

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        names = ["z"] if self.n == 1 else [f"z_{{{i + 1}}}" for i in range(self.n)]
        out = []
        for k, (exp, c) in enumerate(self.items()):
            mono = " ".join(
                name if e == 1 else f"{name}^{{{e}}}" for name, e in zip(names, exp) if e
            )
            a = abs(c)
            if a.denominator == 1:
                num = str(a.numerator)
            else:
                num = rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{num} {mono}"
            else:
                body = num
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)


def compositions(n: int, degree: int) -> Iterator[Exponent]:
    """All exponent vectors of length ``n`` with total degree ``degree``."""
    if n == 0:
        if degree == 0:
            yield ()
        return
    for first in range(degree, -1, -1):
        for rest in compositions(n - 1, degree - first):
            yield (first,) + rest


def permutation_orbit(vec: tuple, generators: Sequence[Sequence[int]]) -> set[tuple]:
    """Orbit of a coordinate vector under the group generated by permutations.

    A permutation ``w`` moves coordinate ``i`` to position ``w[i]``.
    """
    seen = {tuple(vec)}
    frontier = [tuple(vec)]
    while frontier:
        v = frontier.pop()
        for w in generators:
            img = [None] * len(v)
            for i, x in enumerate(v):
                img[w[i]] = x
            img = tuple(img)
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return seen


def orbit_sum(exp: Exponent, generators: Sequence[Sequence[int]]) -> MultiPoly:
    """Sum of the distinct monomials in the W-orbit of ``z^exp``."""
    orbit = permutation_orbit(exp, generators)
    return MultiPoly._raw(len(exp), {e: Fraction(1) for e in orbit})


def orbit_monomial_basis(datum, degree_bound: int) -> list[MultiPoly]:
    """W-orbit sums of all monomials of total degree ``<= degree_bound``.

    One element per orbit, ordered by total degree and then by the orbit's
    lexicographically largest exponent (descending).  ``datum`` needs ``n``
    and ``generators`` attributes.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    return [orbit_sum(e, datum.generators) for e in orbit_representatives(datum, degree_bound)]


def orbit_representatives(datum, degree_bound: int) -> list[Exponent]:
    reps: list[Exponent] = []
    for d in range(degree_bound + 1):
        seen: set[Exponent] = set()
        level = []
        for exp in compositions(datum.n, d):
            if exp in seen:
                continue
            orbit = permutation_orbit(exp, datum.generators)
            seen |= orbit
            level.append(max(orbit))
        level.sort(reverse=True)
        reps.extend(level)
    return reps


def is_invariant(poly: MultiPoly, generators: Sequence[Sequence[int]]) -> bool:
    return all(poly.permute(w) == poly for w in generators)

