"""Conic recovery and dimension experiments.

The rank residual sigma_3 / sigma_1 of the membership matrix, viewed as a
function on the 5-dimensional projective space of conics, vanishes exactly
on the conics the curve is Poncelet related to.  Multi-start minimization
of that residual recovers the source conic; for degree >= 5 the minimum is
unique for generic curves (the pair-to-curve projection is birational),
while for degree <= 3 whole positive-dimensional families of conics fit
and the starts scatter across them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from .binforms import BinaryForm, bf_monomial, from_roots, rational_roots
from .construction import Pencil, curve_differential, poncelet_curve
from .linalg import (
    adjugate3,
    cross3,
    det3,
    dot3,
    exact_rank,
    mat_vec3,
    numeric_rank,
    transpose3,
)
from .membership import is_poncelet, membership_residual_frame
from .projective import ConicFrame, ParamPoint, conic_matrix, restrict_line, tangent_line
from .scalars import EXACT, GeometryError, to_float
from .ternary import PlaneCurve

#: monomial order of the conic 6-vector: x^2, y^2, z^2, xy, xz, yz
CONIC_MONOMIALS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))

#: normalized-determinant threshold below which a candidate conic is rejected
DEGENERATE_DET_TOL = 1e-10

_REFERENCE = np.array([[0.0, 0.0, 0.5], [0.0, -1.0, 0.0], [0.5, 0.0, 0.0]])


def conic_vec(frame: ConicFrame) -> np.ndarray:
    """Unit 6-vector (quadratic-form coefficients) of a frame's conic."""
    m = conic_matrix(frame)
    vec = np.array(
        [
            to_float(m[0][0]),
            to_float(m[1][1]),
            to_float(m[2][2]),
            to_float(2 * m[0][1]),
            to_float(2 * m[0][2]),
            to_float(2 * m[1][2]),
        ]
    )
    return _normalize_vec(vec)


def _normalize_vec(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=float)
    n = np.linalg.norm(vec)
    if n == 0:
        raise GeometryError("zero conic vector")
    vec = vec / n
    lead = next(x for x in vec if abs(x) > 1e-14) if np.abs(vec).max() > 0 else 1.0
    return vec if lead > 0 else -vec


def matrix_from_vec(vec) -> np.ndarray:
    a, b, c, d, e, f = (float(x) for x in vec)
    return np.array([[a, d / 2, e / 2], [d / 2, b, f / 2], [e / 2, f / 2, c]])


def projective_distance(v1, v2) -> float:
    """Distance between projective 6-vectors: min over sign of the gap."""
    a = np.asarray(v1, dtype=float)
    b = np.asarray(v2, dtype=float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


_SQRT_REF = None


def _reference_sqrt() -> np.ndarray:
    global _SQRT_REF
    if _SQRT_REF is None:
        lam, q = np.linalg.eigh(_REFERENCE)
        _SQRT_REF = q @ np.diag(np.sqrt(lam.astype(complex))) @ q.T
    return _SQRT_REF


def frame_from_vec(vec) -> np.ndarray | None:
    """Complex frame transform for a float conic 6-vector, or None.

    Ingestion of matrix-only conics is float mode by design: the symmetric
    square root via the eigendecomposition gives T = S^-1 S0 with
    T^-T M0 T^-1 proportional to the conic matrix.  Near-degenerate conics
    (normalized |det| below the sentinel) return None.
    """
    m = matrix_from_vec(vec)
    scale = np.linalg.norm(m)
    if scale == 0:
        return None
    m = m / scale
    if abs(np.linalg.det(m)) < DEGENERATE_DET_TOL:
        return None
    lam, q = np.linalg.eigh(m)
    # deterministic eigenvector signs: largest-magnitude entry positive
    for k in range(3):
        col = q[:, k]
        piv = np.argmax(np.abs(col))
        if col[piv] < 0:
            q[:, k] = -col
    s = q @ np.diag(np.sqrt(lam.astype(complex))) @ q.T
    return np.linalg.solve(s, _reference_sqrt())


def float_frame_from_vec(vec, chart: str = "primal") -> ConicFrame | None:
    t = frame_from_vec(vec)
    if t is None:
        return None
    return ConicFrame(tuple(tuple(complex(x) for x in row) for row in t), chart)


def membership_residual(conic, curve: PlaneCurve) -> float:
    """sigma_3 / sigma_1 of the membership matrix for a conic candidate.

    ``conic`` is either a ConicFrame or a 6-vector of quadratic-form
    coefficients; near-degenerate candidates get an infinite sentinel.
    """
    coeffs = np.array([complex(to_float(x)) for x in curve.coeffs])
    if isinstance(conic, ConicFrame):
        t = np.array([[complex(to_float(x)) for x in row] for row in conic.transform])
        return membership_residual_frame(t, curve.degree, coeffs)
    t = frame_from_vec(np.asarray(conic, dtype=float))
    if t is None:
        return float("inf")
    return membership_residual_frame(t, curve.degree, coeffs)


def _residual_vector(t_mat, degree: int, coeffs) -> np.ndarray:
    from .membership import antisym_matrix_float

    m = antisym_matrix_float(t_mat, degree, coeffs)
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return np.full(max(len(s) - 2, 1), np.inf)
    return s[2:] / s[0]


@dataclass(frozen=True)
class Candidate:
    """One recovered conic: unit 6-vector, verified residual, basin size."""

    params: tuple
    residual: float
    basin_count: int


@dataclass(frozen=True)
class RecoveryResult:
    candidates: tuple
    target_matched: bool | None
    starts: int
    seed: int


def _gauss_newton_polish(vec: np.ndarray, degree: int, coeffs, max_iter: int = 30):
    """Damped Gauss-Newton on the singular-value tail, finite differences."""
    x = _normalize_vec(vec)

    def rvec(v):
        t = frame_from_vec(v)
        if t is None:
            return None
        return _residual_vector(t, degree, coeffs)

    r = rvec(x)
    if r is None or not np.all(np.isfinite(r)):
        return x, float("inf")
    best = float(np.linalg.norm(r, np.inf))
    stall = 0
    h = 1e-7
    for _ in range(max_iter):
        jac = np.zeros((len(r), 6))
        bad = False
        for k in range(6):
            xp = x.copy()
            xp[k] += h
            rp = rvec(xp)
            if rp is None or not np.all(np.isfinite(rp)):
                bad = True
                break
            jac[:, k] = (rp - r) / h
        if bad:
            break
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        alpha = 1.0
        improved = False
        for _ in range(25):
            xn = _normalize_vec(x + alpha * step)
            rn = rvec(xn)
            if rn is not None and np.all(np.isfinite(rn)):
                norm_n = float(np.linalg.norm(rn, np.inf))
                if norm_n < best:
                    x, r, best = xn, rn, norm_n
                    improved = True
                    break
            alpha *= 0.5
        if not improved:
            stall += 1
            if stall >= 2:
                break
        else:
            stall = 0
        if best < 1e-14:
            break
    return x, best


def recover_conics(
    curve: PlaneCurve,
    n_starts: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
    cluster_radius: float = 1e-4,
    target: ConicFrame | None = None,
    target_distance: float = 1e-6,
) -> RecoveryResult:
    """Multi-start recovery of conics the curve is Poncelet related to.

    Each start runs a derivative-free simplex descent on the rank residual
    over normalized conic 6-vectors, then a damped Gauss-Newton polish on
    the singular-value tail.  Hits below ``tol`` are clustered by
    projective distance.  Identical seeds give identical results.
    """
    rng = np.random.default_rng(seed)
    coeffs = np.array([complex(to_float(x)) for x in curve.to_float().coeffs])
    degree = curve.degree

    def objective(v):
        n = np.linalg.norm(v)
        if n == 0 or not np.all(np.isfinite(v)):
            return 1e6
        t = frame_from_vec(v / n)
        if t is None:
            return 1e6
        r = membership_residual_frame(t, degree, coeffs)
        return r if np.isfinite(r) else 1e6

    hits = []
    for _ in range(n_starts):
        v0 = rng.standard_normal(6)
        res = minimize(
            objective,
            v0,
            method="Nelder-Mead",
            options={"maxfev": 400, "xatol": 1e-10, "fatol": 1e-14},
        )
        vec, residual = _gauss_newton_polish(np.asarray(res.x, dtype=float), degree, coeffs)
        final = membership_residual(vec, curve)
        if final < tol:
            hits.append((_normalize_vec(vec), float(final)))

    hits.sort(key=lambda h: h[1])
    clusters: list[list] = []  # [vec, residual, count]
    for vec, residual in hits:
        for cl in clusters:
            if projective_distance(vec, cl[0]) < cluster_radius:
                cl[2] += 1
                if residual < cl[1]:
                    cl[0], cl[1] = vec, residual
                break
        else:
            clusters.append([vec, residual, 1])
    clusters.sort(key=lambda cl: cl[1])
    candidates = tuple(
        Candidate(tuple(map(float, cl[0])), float(cl[1]), int(cl[2])) for cl in clusters
    )
    matched = None
    if target is not None:
        tvec = conic_vec(target)
        matched = any(
            projective_distance(cand.params, tvec) < target_distance for cand in candidates
        )
    return RecoveryResult(candidates, matched, n_starts, seed)


# -- dimension experiments ----------------------------------------------------


@dataclass(frozen=True)
class DimensionReport:
    """Recorded tangent-space figures for a dimension experiment."""

    c: int
    sample_count: int
    ranks: tuple
    expected: int


def tangent_space_rank(frame: ConicFrame, pencil: Pencil) -> int:
    """Rank of the pencil-to-curve differential modulo gauge and scale.

    Computed exactly; the overall curve-scale direction is quotiented out,
    so the generic answer is 2c, the dimension of the Poncelet variety of
    the conic.
    """
    jac = curve_differential(pencil, frame)
    return exact_rank(jac) - 1


def common_tangent_quartic(frame_s: ConicFrame, frame_s2: ConicFrame) -> BinaryForm:
    """Binary quartic on S's parameters cutting the common tangents.

    The tangent at t is a tangent of the second conic iff it lies on the
    dual conic of S2, a quadratic condition on the line, hence quartic in t.
    """
    dual2 = adjugate3(conic_matrix(frame_s2))
    inv_t = transpose3(frame_s.inverse_transform())
    mode_exact = frame_s.mode == EXACT and frame_s2.mode == EXACT
    zero = Fraction(0) if mode_exact else 0.0
    one = Fraction(1) if mode_exact else 1.0
    base = (
        BinaryForm(2, (one, zero, zero)),  # v^2
        BinaryForm(2, (zero, -2 * one, zero)),  # -2uv
        BinaryForm(2, (zero, zero, one)),  # u^2
    )
    line = [None, None, None]
    for i in range(3):
        acc = BinaryForm(2, (zero, zero, zero))
        for j in range(3):
            if inv_t[i][j] != 0:
                acc = acc + base[j].scale(inv_t[i][j])
        line[i] = acc
    quartic = BinaryForm(4, (zero,) * 5)
    for i in range(3):
        for j in range(3):
            if dual2[i][j] != 0:
                quartic = quartic + (line[i] * line[j]).scale(dual2[i][j])
    return quartic


def _double_root(quad: BinaryForm) -> ParamPoint:
    gamma, beta, alpha = quad.coeffs  # alpha u^2 + beta uv + gamma v^2
    if alpha != 0:
        one = alpha / alpha
        return ParamPoint(-beta / (2 * alpha), one)
    # a double root with alpha = 0 forces beta = 0: the root is (1 : 0)
    one = gamma / gamma
    return ParamPoint(one, 0 * one)


def common_tangents(frame_s: ConicFrame, frame_s2: ConicFrame):
    """Common tangent lines of two conics with their tangency parameters.

    Returns a list of (line, t_on_S, t_on_S2).  Exact frames whose quartic
    splits rationally give exact parameters; otherwise roots are found
    numerically (float output).
    """
    quartic = common_tangent_quartic(frame_s, frame_s2)
    exact = quartic.mode == EXACT
    if exact:
        roots = rational_roots(quartic)
        if len(roots) < 4:
            from .binforms import roots_float

            roots = roots_float(quartic.to_float())
            frame_s = frame_s.to_float()
            frame_s2 = frame_s2.to_float()
    else:
        from .binforms import roots_float

        roots = roots_float(quartic)
    out = []
    for pair in roots:
        t = ParamPoint(*pair)
        line = tangent_line(frame_s, t)
        quad2 = restrict_line(frame_s2, line)
        t2 = _double_root(quad2)
        out.append((line, t, t2))
    return out


def product_pencil(params) -> Pencil:
    """Pencil (h u, h v) whose curve is the product of the tangent lines.

    ``params`` are the tangency parameters (with repetition allowed); the
    base-point form h contributes each tangent line with its multiplicity
    and the residual pencil (u, v) contributes the constant curve.
    """
    h = from_roots([t.pair for t in params])
    one = Fraction(1) if h.mode == EXACT else 1.0
    return Pencil(h * bf_monomial(1, 1, one), h * bf_monomial(1, 0, one))


def intersection_probe(
    frame_s: ConicFrame,
    frame_s2: ConicFrame,
    c: int,
    seed: int = 0,
    sample_count: int = 10,
) -> DimensionReport:
    """Probe the intersection of two Poncelet varieties along common curves.

    Builds ``sample_count`` degree-c products of common tangent lines of
    the two conics, verifies each is Poncelet related to both (exactly when
    the frames and tangents are exact), and records the dimension of the
    intersection of the two tangent spaces at the curve.  The figures are
    reported, not asserted: tangent-space dimensions at these special
    points may exceed the generic variety bound.
    """
    tangents = common_tangents(frame_s, frame_s2)
    if len(tangents) < 4:
        raise GeometryError("fewer than 4 common tangents: degenerate conic pair")
    exact = all(t.mode == EXACT for _, t, _ in tangents) and frame_s.mode == EXACT
    rng = random.Random(seed)
    ranks = []
    for _ in range(sample_count):
        picks = [rng.randrange(len(tangents)) for _ in range(c)]
        params_s = [tangents[i][1] for i in picks]
        params_s2 = [tangents[i][2] for i in picks]
        pencil_s = product_pencil(params_s)
        pencil_s2 = product_pencil(params_s2)
        curve = poncelet_curve(frame_s, pencil_s)
        verdict_1 = is_poncelet(frame_s, curve)
        curve_2 = poncelet_curve(frame_s2, pencil_s2)
        if exact and curve_2.coeffs != curve.coeffs:
            raise GeometryError("common-tangent product disagrees between the frames")
        verdict_2 = is_poncelet(frame_s2, curve)
        if not (verdict_1.is_poncelet and verdict_2.is_poncelet):
            raise GeometryError("membership verification failed on a probe curve")
        d1 = np.array(
            [[to_float(x) for x in row] for row in curve_differential(pencil_s, frame_s)]
        )
        d2 = np.array(
            [[to_float(x) for x in row] for row in curve_differential(pencil_s2, frame_s2)]
        )
        r1 = numeric_rank(d1)
        r2 = numeric_rank(d2)
        r12 = numeric_rank(np.hstack([d1, d2]))
        ranks.append(r1 + r2 - r12 - 1)  # projective dimension of the meet
    return DimensionReport(c=c, sample_count=sample_count, ranks=tuple(ranks), expected=c)


# -- exact generator for conic pairs with rational common tangents ------------


def random_conic_pair(seed: int):
    """Two exact frames whose four common tangents are rational lines.

    Draws four random integer lines in general position; the conics
    tangent to all four form a pencil in the dual space (spanned by the
    two degenerate point-pair duals), and any two smooth rational members
    pull back to rational point conics with rational tangency points, so
    both get exact frames.
    """
    rng = random.Random(seed)
    while True:
        lines = []
        while len(lines) < 4:
            cand = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
            if all(x == 0 for x in cand):
                continue
            if any(all(x == 0 for x in cross3(cand, l)) for l in lines):
                continue
            lines.append(cand)
        # no three concurrent
        if any(
            det3((lines[i], lines[j], lines[k])) == 0
            for i in range(4)
            for j in range(i + 1, 4)
            for k in range(j + 1, 4)
        ):
            continue
        p12 = cross3(lines[0], lines[1])
        p34 = cross3(lines[2], lines[3])
        p13 = cross3(lines[0], lines[2])
        p24 = cross3(lines[1], lines[3])
        n_a = tuple(
            tuple(p12[i] * p34[j] + p34[i] * p12[j] for j in range(3)) for i in range(3)
        )
        n_b = tuple(
            tuple(p13[i] * p24[j] + p24[i] * p13[j] for j in range(3)) for i in range(3)
        )
        frames = []
        for s in (Fraction(rng.randint(1, 6)), -Fraction(rng.randint(1, 6))):
            n = tuple(
                tuple(n_a[i][j] + s * n_b[i][j] for j in range(3)) for i in range(3)
            )
            if det3(n) == 0:
                break
            m = adjugate3(n)
            pole = mat_vec3(n, lines[0])
            try:
                frames.append(frame_from_matrix_point(m, pole))
            except GeometryError:
                break
        if len(frames) == 2:
            quartic = common_tangent_quartic(frames[0], frames[1])
            if len(rational_roots(quartic)) == 4:
                return frames[0], frames[1]


def frame_from_matrix_point(m, point) -> ConicFrame:
    """Exact frame of a rational conic through a known rational point.

    Parametrizes by residual intersections of lines through the point:
    X(u, v) = (w^T M w) P - 2 (P^T M w) w with w = u v1 + v v2, which is
    quadratic in (u, v) with rational matrix columns.
    """
    p = tuple(Fraction(x) for x in point)
    mm = tuple(tuple(Fraction(x) for x in row) for row in m)
    if dot3(p, mat_vec3(mm, p)) != 0:
        raise GeometryError("point does not lie on the conic")
    basis = (
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    )
    for i in range(3):
        for j in range(i + 1, 3):
            v1, v2 = basis[i], basis[j]
            if det3((p, v1, v2)) == 0:
                continue
            mv1 = mat_vec3(mm, v1)
            mv2 = mat_vec3(mm, v2)
            q11 = dot3(v1, mv1)
            q12 = dot3(v1, mv2)
            q22 = dot3(v2, mv2)
            pv1 = dot3(p, mv1)
            pv2 = dot3(p, mv2)
            col_a = tuple(q11 * p[k] - 2 * pv1 * v1[k] for k in range(3))
            col_b = tuple(2 * q12 * p[k] - 2 * pv1 * v2[k] - 2 * pv2 * v1[k] for k in range(3))
            col_c = tuple(q22 * p[k] - 2 * pv2 * v2[k] for k in range(3))
            t = tuple((col_a[k], col_b[k], col_c[k]) for k in range(3))
            if det3(t) != 0:
                return ConicFrame(t)
    raise GeometryError("could not build a frame from the point")
