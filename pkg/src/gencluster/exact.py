"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of scalars and
matrices are tuples of row tuples.  Everything here is immutable and pure.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ArithmeticError):
    pass


class ZeroRootError(ValueError):
    pass


def vector(entries: Iterable) -> Vector:
    return tuple(Fraction(x) for x in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(row) for row in rows)
    if any(len(row) != len(out) for row in out):
        raise ValueError("matrix must be square")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def diagonal(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum((x * Fraction(y) for x, y in zip(row, v)), Fraction(0)) for row in a)


def dot(u: Sequence, v: Sequence, gram: Matrix | None = None) -> Fraction:
    """Inner product ``u^T G v``; ``G`` defaults to the identity."""
    if gram is None:
        return sum((Fraction(x) * Fraction(y) for x, y in zip(u, v)), Fraction(0))
    return dot(u, matvec(gram, v))


def _integer_rows(a: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; rank and pivots are unchanged."""
    rows = []
    for row in a:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * d) for x in row])
    return rows


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination in place.  Returns (rows, pivot columns)."""
    nrows = len(rows)
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            rows[i] = [(piv * rows[i][j] - f * rows[r][j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def matrix_rank(a: Matrix) -> int:
    """Rank over the rationals.

    >>> matrix_rank(((1, 2), (2, 4)))
    1
    """
    if not a:
        return 0
    _, pivots = _bareiss(_integer_rows(a), len(a[0]))
    return len(pivots)


def matrix_inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    rows, pivots = _bareiss(_integer_rows(aug), 2 * n)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise SingularMatrixError("matrix is singular")
    # back substitution on the upper-triangular integer system
    sol = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = rows[i]
        for k in range(n):
            s = Fraction(row[n + k]) - sum((row[j] * sol[j][k] for j in range(i + 1, n)), Fraction(0))
            sol[i][k] = s / row[i]
    return tuple(tuple(r) for r in sol)


def reflection_matrix(root: Sequence, gram: Matrix | None = None) -> Matrix:
    """Matrix of the reflection in the hyperplane orthogonal to ``root``.

    With ``gram`` given, coordinates are taken in a basis whose inner product
    is ``gram``; the map is ``x -> x - 2 (x, a)/(a, a) a``.
    """
    root = vector(root)
    n = len(root)
    norm = dot(root, root, gram)
    if norm == 0:
        raise ZeroRootError("cannot reflect in the zero vector")
    # row vector (G a)^T, so that (x, a) = (G a) . x
    ga = root if gram is None else matvec(gram, root)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * root[i] * ga[j] / norm for j in range(n))
        for i in range(n)
    )
