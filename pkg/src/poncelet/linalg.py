"""Small exact linear algebra over the rationals, plus 3x3 helpers.

The exact routines run fraction-free enough for desk-scale sizes (the
largest matrices in this package are on the order of 50 x 50).  The 3x3
helpers work in either scalar mode since they only use field operations.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import EXACT, GeometryError, mode_of


def row_reduce(rows):
    """Gaussian elimination over Q.

    Returns ``(rank, pivot_cols, rref)`` where ``rref`` is the reduced
    row-echelon form as lists of Fractions.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivot_cols = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(col)
        r += 1
        if r == nrows:
            break
    return r, pivot_cols, m


def exact_rank(rows) -> int:
    rank, _, _ = row_reduce(rows)
    return rank


def independent_columns(rows, count=None):
    """Indices of a maximal (or first ``count``) independent column set."""
    _, pivots, _ = row_reduce(rows)
    return pivots if count is None else pivots[:count]


def solve_exact(a_rows, b):
    """Solve the square exact system A x = b; raises if A is singular."""
    n = len(a_rows)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    _, pivots, rref = row_reduce(aug)
    if pivots != list(range(n)):
        raise GeometryError("singular exact system")
    return [rref[i][n] for i in range(n)]


def numeric_rank(matrix, rel_tol: float = 1e-9) -> int:
    """Rank of a float matrix: singular values above ``rel_tol`` * sigma_1."""
    arr = np.asarray(matrix, dtype=complex)
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


# -- tiny dense helpers usable in both modes --------------------------------


def mat_vec3(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))


def mat_mul3(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def transpose3(m):
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate3(m):
    c = lambda i, j: m[i][j]  # noqa: E731
    return (
        (
            c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1),
            c(0, 2) * c(2, 1) - c(0, 1) * c(2, 2),
            c(0, 1) * c(1, 2) - c(0, 2) * c(1, 1),
        ),
        (
            c(1, 2) * c(2, 0) - c(1, 0) * c(2, 2),
            c(0, 0) * c(2, 2) - c(0, 2) * c(2, 0),
            c(0, 2) * c(1, 0) - c(0, 0) * c(1, 2),
        ),
        (
            c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0),
            c(0, 1) * c(2, 0) - c(0, 0) * c(2, 1),
            c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0),
        ),
    )


def inverse3(m):
    d = det3(m)
    if mode_of(d) == EXACT:
        if d == 0:
            raise GeometryError("singular 3x3 matrix")
        adj = adjugate3(m)
        return tuple(tuple(Fraction(x) / d for x in row) for row in adj)
    if d == 0:
        raise GeometryError("singular 3x3 matrix")
    adj = adjugate3(m)
    return tuple(tuple(x / d for x in row) for row in adj)


def cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
