"""Dense exact linear algebra over Q.

Matrices are lists of rows of ``Rational``.  A matrix with zero rows still
needs a column count, so most helpers take ``ncols`` explicitly.
"""

from __future__ import annotations

from typing import Sequence

from .exact_arith.rational import Rational

Matrix = list[list[Rational]]
Vector = list[Rational]


def zeros(m: int, n: int) -> Matrix:
    return [[Rational(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Rational(1)
    return out


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Rational(x) for x in row] for row in rows]


def transpose(a: Matrix, ncols: int) -> Matrix:
    return [[a[i][j] for i in range(len(a))] for j in range(ncols)]


def matmul(a: Matrix, b: Matrix, inner: int, ncols: int) -> Matrix:
    out = zeros(len(a), ncols)
    for i, row in enumerate(a):
        for k in range(inner):
            x = row[k]
            if x == 0:
                continue
            bk = b[k]
            for j in range(ncols):
                if bk[j] != 0:
                    out[i][j] += x * bk[j]
    return out


def matvec(a: Matrix, v: Vector) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Rational(0)) for row in a]


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(a: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (nonzero rows only) and pivot columns."""
    rows = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a: Matrix, ncols: int) -> int:
    return len(rref(a, ncols)[1])


def nullspace(a: Matrix, ncols: int) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column (that entry is 1)."""
    red, pivots = rref(a, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Rational(0)] * ncols
        v[f] = Rational(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space(vectors: Sequence[Vector], ncols: int) -> tuple[Matrix, list[int]]:
    """Canonical RREF basis of the span of the given vectors."""
    return rref([list(v) for v in vectors], ncols)


def reduce_mod(v: Vector, red: Matrix, pivots: Sequence[int]) -> Vector:
    """Reduce v modulo the span of an RREF basis: zero out pivot entries."""
    out = list(v)
    for row, p in zip(red, pivots):
        c = out[p]
        if c != 0:
            out = [x - c * y for x, y in zip(out, row)]
    return out


def solve_in_span(v: Vector, basis: Sequence[Vector]) -> Vector | None:
    """Coefficients x with sum x_i basis_i = v, or None if v is not in the span.

    The basis must be linearly independent.
    """
    n = len(v)
    k = len(basis)
    # augmented system: columns are basis vectors, last column is v
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    x = [Rational(0)] * k
    for row, p in zip(red, pivots):
        x[p] = row[k]
    return x


def same_span(a: Sequence[Vector], b: Sequence[Vector], ncols: int) -> bool:
    return row_space(a, ncols)[0] == row_space(b, ncols)[0]


def column(a: Matrix, j: int) -> Vector:
    return [row[j] for row in a]


def columns_to_matrix(cols: Sequence[Vector], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]
