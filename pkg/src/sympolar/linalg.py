"""Exact rational linear algebra for the polyhedral kernel.

Vectors are plain tuples of ``Fraction`` and matrices are tuples of row
vectors, so every geometric object is immutable, hashable, and sorts
lexicographically without extra machinery.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Matrix = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class SingularMatrixError(ValueError):
    """A solve or inversion was attempted on a singular matrix."""


def as_vec(coords: Iterable) -> Vec:
    return tuple(Fraction(c) for c in coords)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(as_vec(row) for row in rows)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        total += a * b
    return total


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def mat_vec(rows: Matrix, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in rows)


def transpose(rows: Matrix) -> Matrix:
    return tuple(zip(*rows))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    """Rank of a collection of row vectors, by fraction-free-ish elimination."""
    reduced: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        work = list(row)
        for base, p in zip(reduced, pivots):
            if work[p] != 0:
                factor = work[p] / base[p]
                for k in range(len(work)):
                    work[k] -= factor * base[k]
        pivot = next((k for k, c in enumerate(work) if c != 0), None)
        if pivot is not None:
            reduced.append(work)
            pivots.append(pivot)
    return len(reduced)


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of the given points."""
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([vsub(tuple(p), tuple(base)) for p in points[1:]])


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vec | None:
    """Solve a square linear system exactly; returns None when singular."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [c - factor * p for c, p in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


def invert(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [c - factor * p for c, p in zip(aug[r], aug[col])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(matrix)
    work = [list(row) for row in matrix]
    result = ONE
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            result = -result
        result *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                factor = work[r][col] * inv
                work[r] = [c - factor * p for c, p in zip(work[r], work[col])]
    return result


# Integer helpers for the double-description engine, where rays are kept as
# primitive integer vectors to avoid Fraction overhead in the hot loops.

def int_dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def primitive(ints: Sequence[int]) -> tuple[int, ...]:
    """Divide out the gcd; the orientation of the vector is preserved."""
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g in (0, 1):
        return tuple(ints)
    return tuple(c // g for c in ints)


def fraction_vec_to_int(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer one."""
    scale = 1
    for c in vec:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    return primitive([int(c * scale) for c in vec])


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    work = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            sign = -sign
        pivot = work[col][col]
        for r in range(col + 1, n):
            row = work[r]
            lead = row[col]
            base = work[col]
            for k in range(col + 1, n):
                row[k] = (pivot * row[k] - lead * base[k]) // prev
            row[col] = 0
        prev = pivot
    return sign * work[n - 1][n - 1]
