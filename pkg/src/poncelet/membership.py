"""Deciding Poncelet membership and recovering the pencil.

Pulling a degree-c curve back through the tangent-intersection map gives a
symmetric (c, c)-biform G; multiplying by u1 v2 - u2 v1 yields an
antisymmetric (c+2) x (c+2) coefficient matrix M.  The curve is Poncelet
related to the conic exactly when M has rank 2, in which case the column
space of M *is* the pencil.  Exact mode decides rank by elimination over
Q; float mode uses the singular-value ratio sigma_3 / sigma_1, which doubles
as a smooth objective for conic recovery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .binforms import BinaryForm
from .construction import Pencil, SymBiForm, expand_reduced, poncelet_curve, SymReduced
from .linalg import independent_columns
from .projective import ConicFrame
from .scalars import EXACT, GeometryError, to_float
from .ternary import (
    PlaneCurve,
    compose_linear,
    monomials,
    try_divide_exact,
)


@dataclass(frozen=True)
class AntisymMatrix:
    """Antisymmetric coefficient matrix of (u1 v2 - u2 v1) * G."""

    size: int
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise ValueError("entry matrix does not match declared size")
        object.__setattr__(self, "entries", rows)

    def as_array(self) -> np.ndarray:
        return np.array(
            [[to_float(x) for x in row] for row in self.entries], dtype=complex
        )


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a Poncelet membership test.

    ``residual`` is sigma_3 / sigma_1 in float mode (0.0 for exact
    verdicts).  When ``is_poncelet`` holds, ``pencil`` regenerates the
    input curve up to canonical scale.
    """

    is_poncelet: bool
    rank: int
    residual: float
    pencil: Pencil | None
    reason: str = ""


def _pullback_matrix(frame: ConicFrame):
    """Column map (q, p, r) |-> T . (2q, p, 2r) fed to the curve."""
    t = frame.transform
    two = Fraction(2) if frame.mode == EXACT else 2.0
    one = Fraction(1) if frame.mode == EXACT else 1.0
    scale = (two, one, two)
    return tuple(tuple(t[i][j] * scale[j] for j in range(3)) for i in range(3))


def pullback_biform(frame: ConicFrame, curve: PlaneCurve) -> SymBiForm:
    """G(t1, t2) = C(tangent_meet(t1, t2)) as a symmetric (c, c)-biform."""
    if curve.chart != frame.chart:
        raise GeometryError("chart mismatch between curve and frame")
    qpr = compose_linear(curve.degree, curve.coeffs, _pullback_matrix(frame))
    return expand_reduced(SymReduced(curve.degree, qpr))


def antisym_matrix(bi: SymBiForm) -> AntisymMatrix:
    """Coefficient matrix of (u1 v2 - u2 v1) * G, of size c + 2."""
    if not bi.is_symmetric():
        raise GeometryError("biform is not symmetric")
    n = bi.c + 1
    zero = bi.b[0][0] - bi.b[0][0]
    m = [[zero] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        for l in range(n + 1):
            val = zero
            if 1 <= k <= n and l < n:
                val = val + bi.b[k - 1][l]
            if 1 <= l <= n and k < n:
                val = val - bi.b[k][l - 1]
            m[k][l] = val
    return AntisymMatrix(n + 1, tuple(tuple(row) for row in m))


def _exact_rank_and_columns(mat: AntisymMatrix):
    rows = [[Fraction(x) for x in row] for row in mat.entries]
    pivots = independent_columns(rows)
    cols = [tuple(rows[i][j] for i in range(mat.size)) for j in pivots]
    return len(pivots), cols


def is_poncelet(frame: ConicFrame, curve: PlaneCurve, tol: float = 1e-8) -> MembershipVerdict:
    """Decide whether the curve is Poncelet related to the framed conic.

    Exact mode computes the exact rank of the antisymmetric matrix and, on
    rank 2, extracts the pencil from two independent columns.  Float mode
    accepts when sigma_3 / sigma_1 < tol and reads the pencil off the top
    two singular directions.
    """
    if curve.chart != frame.chart:
        raise GeometryError("chart mismatch between curve and frame")
    mat = antisym_matrix(pullback_biform(frame, curve))
    exact = frame.mode == EXACT and curve.mode == EXACT
    if exact:
        rank, cols = _exact_rank_and_columns(mat)
        if rank == 0:
            return MembershipVerdict(False, 0, 0.0, None, "degenerate: zero pullback")
        if rank > 2:
            if _contains_conic(frame, curve):
                return MembershipVerdict(
                    False, rank, 0.0, None, "degenerate: contains the conic as a component"
                )
            return MembershipVerdict(False, rank, 0.0, None, "rank exceeds 2")
        f = BinaryForm(curve.degree + 1, cols[0])
        g = BinaryForm(curve.degree + 1, cols[1])
        pencil = Pencil(f, g)
        regen = poncelet_curve(frame, pencil)
        if regen.coeffs != curve.coeffs:
            return MembershipVerdict(False, rank, 0.0, None, "round trip failed")
        return MembershipVerdict(True, rank, 0.0, pencil)
    arr = mat.as_array()
    scale = np.abs(arr).max()
    if scale == 0.0:
        return MembershipVerdict(False, 0, 0.0, None, "degenerate: zero pullback")
    u, s, _ = np.linalg.svd(arr / scale)
    residual = float(s[2] / s[0]) if s[0] > 0 else 0.0
    rank = int(np.sum(s > 1e-12 * s[0]))
    if residual >= tol:
        return MembershipVerdict(False, rank, residual, None, "rank exceeds 2 numerically")
    f = BinaryForm(curve.degree + 1, tuple(map(complex, u[:, 0])))
    g = BinaryForm(curve.degree + 1, tuple(map(complex, u[:, 1])))
    return MembershipVerdict(True, 2, residual, Pencil(f, g))


def _contains_conic(frame: ConicFrame, curve: PlaneCurve) -> bool:
    if curve.degree < 2:
        return False
    from .projective import conic_matrix

    m = conic_matrix(frame)
    conic_coeffs = {
        (2, 0, 0): m[0][0],
        (0, 2, 0): m[1][1],
        (0, 0, 2): m[2][2],
        (1, 1, 0): 2 * m[0][1],
        (1, 0, 1): 2 * m[0][2],
        (0, 1, 1): 2 * m[1][2],
    }
    vec = [conic_coeffs.get(mono, Fraction(0)) for mono in monomials(2)]
    return try_divide_exact(curve.degree, curve.coeffs, 2, tuple(vec)) is not None


# -- fast float pipeline (shared with the recovery experiments) --------------


@lru_cache(maxsize=None)
def _float_cache(c: int):
    """Per-degree tables for the vectorized float pullback.

    Returns (exponent array, interpolation points transposed, inverse
    Vandermonde, expansion matrix) so that the antisymmetric matrix of a
    (frame, curve) pair costs one 3x3-by-N product, one N^2 solve-by-inverse
    and a scatter.
    """
    monos = monomials(c)
    n_coef = len(monos)
    exps = np.array(monos)  # (N, 3)
    rng = np.random.default_rng(12345 + c)
    pts = rng.normal(size=(n_coef, 3)) + 1j * rng.normal(size=(n_coef, 3))
    vand = _monomial_values(exps, pts)
    vinv = np.linalg.inv(vand)
    expand = np.zeros(((c + 1) * (c + 1), n_coef))
    table_c = _qpr_expansion_float(c)
    for col, mono in enumerate(monos):
        for (i, j), binom in table_c[mono]:
            expand[i * (c + 1) + j, col] += binom
    return exps, pts, vinv, expand


def _monomial_values(exps: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Matrix of monomial values: rows = points, cols = monomials."""
    logs = pts[:, None, :] ** exps[None, :, :]  # (npts, nmono, 3)
    return logs.prod(axis=2)


def _qpr_expansion_float(c: int):
    from .construction import _qpr_expansion

    return _qpr_expansion(c)


def antisym_matrix_float(transform: np.ndarray, degree: int, coeffs: np.ndarray) -> np.ndarray:
    """Vectorized antisymmetric matrix for a float frame transform.

    ``transform`` is the 3x3 frame matrix (complex allowed); ``coeffs``
    the float curve coefficients in monomial order.
    """
    exps, pts, vinv, expand = _float_cache(degree)
    a = np.asarray(transform, dtype=complex) * np.array([2.0, 1.0, 2.0])[None, :]
    imgs = pts @ a.T  # images of the interpolation points
    vals = _monomial_values(exps, imgs) @ np.asarray(coeffs, dtype=complex)
    qpr = vinv @ vals
    biform = (expand @ qpr).reshape(degree + 1, degree + 1)
    n = degree + 1
    m = np.zeros((n + 1, n + 1), dtype=complex)
    m[1:, :n] += biform
    m[:n, 1:] -= biform
    return m


def membership_residual_frame(transform, degree: int, coeffs) -> float:
    """sigma_3 / sigma_1 of the float antisymmetric matrix."""
    m = antisym_matrix_float(transform, degree, coeffs)
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return float("inf")
    return float(s[2] / s[0])
