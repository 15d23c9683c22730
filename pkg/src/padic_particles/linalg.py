"""Dense linear algebra over PAdic entries.

Matrices are tuples of row tuples, vectors are tuples.  Elimination always
pivots on the entry of least valuation, which is the stable choice for
p-adic numbers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .padic import DEFAULT_PREC, INF, PAdic, PrecisionError

Vector = tuple
Matrix = tuple


def const(p: int, x, prec: int = DEFAULT_PREC) -> PAdic:
    if isinstance(x, PAdic):
        return x
    x = Fraction(x)
    if x == 0:
        return PAdic.zero(p)
    return PAdic.from_rational(p, x, 1, prec)


def vector(p: int, xs, prec: int = DEFAULT_PREC) -> Vector:
    return tuple(const(p, x, prec) for x in xs)


def matrix(p: int, rows, prec: int = DEFAULT_PREC) -> Matrix:
    return tuple(vector(p, r, prec) for r in rows)


def identity(p: int, n: int, prec: int = DEFAULT_PREC) -> Matrix:
    one = PAdic.one(p, prec)
    zero = PAdic.zero(p)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(p: int, n: int) -> Vector:
    return tuple(PAdic.zero(p) for _ in range(n))


def diagonal(entries: Sequence[PAdic]) -> Matrix:
    p = entries[0].p
    n = len(entries)
    zero = PAdic.zero(p)
    return tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n))


def dot(x: Sequence[PAdic], y: Sequence[PAdic]) -> PAdic:
    acc = x[0] * y[0]
    for a, b in zip(x[1:], y[1:]):
        acc = acc + a * b
    return acc


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def neg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def matvec(m: Matrix, x: Vector) -> Vector:
    return tuple(dot(row, x) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def bilinear(gram: Matrix, x: Vector, y: Vector) -> PAdic:
    return dot(x, matvec(gram, y))


def quad(gram: Matrix, x: Vector) -> PAdic:
    return bilinear(gram, x, x)


def vec_equal(x: Vector, y: Vector) -> bool:
    return all(a == b for a, b in zip(x, y))


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return all(vec_equal(r, s) for r, s in zip(a, b))


def min_valuation(xs) -> float:
    return min((x.val for x in xs if not x.is_zero()), default=INF)


def _pivot(rows, col, start):
    best, best_val = None, INF
    for i in range(start, len(rows)):
        x = rows[i][col]
        if not x.is_zero() and x.val < best_val:
            best, best_val = i, x.val
    return best


def row_reduce(m: Matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        i = _pivot(rows, c, r)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][c].is_zero():
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def nullspace(m: Matrix, p: int) -> list[Vector]:
    """Basis of {x : m x = 0}."""
    ncols = len(m[0])
    rows, pivots = row_reduce(m)
    free = [c for c in range(ncols) if c not in pivots]
    one = PAdic.one(p)
    basis = []
    for f in free:
        x = [PAdic.zero(p)] * ncols
        x[f] = one
        for r, c in enumerate(pivots):
            x[c] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    p = m[0][0].p
    aug = tuple(tuple(row) + ident for row, ident in zip(m, identity(p, n)))
    rows, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise PrecisionError("matrix is singular to working precision")
    return tuple(tuple(r[n:]) for r in rows[:n])


def det(m: Matrix) -> PAdic:
    rows = [list(r) for r in m]
    n = len(rows)
    p = rows[0][0].p
    d = PAdic.one(p)
    for c in range(n):
        i = _pivot(rows, c, c)
        if i is None:
            return PAdic.zero(p, min(x.absprec for r in rows for x in r))
        if i != c:
            rows[c], rows[i] = rows[i], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        inv = piv.inverse()
        for k in range(c + 1, n):
            if not rows[k][c].is_zero():
                f = rows[k][c] * inv
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
    return d
