"""Exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import SingularSystem

Matrix = list[list[Fraction]]


def _integer_rows(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[int]]:
    # scale each augmented row by the lcm of its denominators
    rows = []
    for a_row, b_row in zip(A, B):
        entries = [Fraction(x) for x in a_row] + [Fraction(x) for x in b_row]
        m = 1
        for x in entries:
            m = lcm(m, x.denominator)
        rows.append([int(x * m) for x in entries])
    return rows


def solve_many(A: Sequence[Sequence], columns: Sequence[Sequence]) -> list[list[Fraction]]:
    """Solve ``A x = b`` for every right-hand side in ``columns``.

    Rows are cleared of denominators and reduced by Bareiss fraction-free
    elimination with row pivoting; back substitution is done in rationals.
    Raises :class:`SingularSystem` if ``A`` is not invertible.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("A must be square")
    k = len(columns)
    if n == 0:
        return [[] for _ in range(k)]
    for col in columns:
        if len(col) != n:
            raise ValueError("right-hand side has wrong length")
    B = [[columns[j][i] for j in range(k)] for i in range(n)]
    M = _integer_rows(A, B)
    width = n + k
    prev = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if M[r][c] != 0), None)
        if pivot is None:
            raise SingularSystem(f"matrix is singular (column {c})")
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
        pc = M[c][c]
        row_c = M[c]
        for r in range(c + 1, n):
            row_r = M[r]
            f = row_r[c]
            for j in range(c + 1, width):
                row_r[j] = (pc * row_r[j] - f * row_c[j]) // prev
            row_r[c] = 0
        prev = pc
    solutions = []
    for j in range(k):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            acc = Fraction(M[i][n + j])
            row = M[i]
            for t in range(i + 1, n):
                if row[t]:
                    acc -= row[t] * x[t]
            x[i] = acc / row[i]
        solutions.append(x)
    return solutions


def solve_linear_exact(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique exact solution of the square system ``A x = b``."""
    return solve_many(A, [b])[0]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([sum((row[t] * B[t][j] for t in range(inner) if row[t]), Fraction(0))
                    for j in range(cols)])
    return out


def matvec(A: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, x) if a), Fraction(0)) for row in A]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    cols = solve_many(A, identity(n))
    return transpose(cols)
