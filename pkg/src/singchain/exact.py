"""Exact linear algebra over the integers and rationals.

Only what the singularity code needs: leading principal minors by
fraction-free (Bareiss) elimination, and solving ``M x = b`` for a
positive definite integer matrix ``M`` with rational output.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class NotNegativeDefinite(ValueError):
    """The intersection form of a configuration is not negative definite."""


def leading_minors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Return the leading principal minors ``d_1, ..., d_n`` of an integer matrix.

    Bareiss elimination without pivoting produces them as successive pivots.
    Stops (returning the prefix computed so far plus a trailing ``0``) as soon
    as a zero pivot appears, since later minors are then not pivots.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    minors: list[int] = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def is_positive_definite(matrix: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion with exact integer minors."""
    return all(m > 0 for m in leading_minors(matrix))


def solve_positive_definite(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int]
) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly.

    ``matrix`` must be symmetric positive definite (no pivoting is done);
    raises :class:`NotNegativeDefinite` otherwise, because every caller hands
    in the negated intersection form.
    """
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot <= 0:
            raise NotNegativeDefinite("intersection form is not negative definite")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def fmt_fraction(q: Fraction | int) -> str:
    """Render a rational as ``"p/q"`` in lowest terms with ``q > 0`` (integers too)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)
