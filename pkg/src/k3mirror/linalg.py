"""Small matrix helpers over the exact series and rational-function rings.

Matrices are plain lists of lists; the element type only needs +, -, *
(and .inv() where stated).  Nothing here is numerical.
"""

from __future__ import annotations

from .series import BiSeries


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_theta(a, var: int):
    return [[x.theta(var) for x in row] for row in a]


def mat_map(a, f):
    return [[f(x) for x in row] for row in a]


def series_mat_inv(m: list[list[BiSeries]]) -> list[list[BiSeries]]:
    """Invert a square matrix of BiSeries by Gaussian elimination.

    Requires the constant-term matrix to be invertible; pivots are chosen
    by a nonzero constant term so every division is a series inversion.
    """
    n = len(m)
    order = m[0][0].order
    a = [list(row) for row in m]
    b = [[BiSeries.one(order) if i == j else BiSeries.zero(order) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if a[row][col].coeff(0, 0) != 0:
                pivot = row
                break
        if pivot is None:
            raise ZeroDivisionError("matrix is not invertible at the series origin")
        a[col], a[pivot] = a[pivot], a[col]
        b[col], b[pivot] = b[pivot], b[col]
        piv_inv = a[col][col].inv()
        a[col] = [x * piv_inv for x in a[col]]
        b[col] = [x * piv_inv for x in b[col]]
        for row in range(n):
            if row == col:
                continue
            factor = a[row][col]
            if factor.is_zero():
                continue
            a[row] = [x - factor * y for x, y in zip(a[row], a[col])]
            b[row] = [x - factor * y for x, y in zip(b[row], b[col])]
    return b
