"""Dynamic verification of the Darboux property by polygon traversal.

Starting from a parameter t on the conic, intersect the tangent at t with
the curve; every intersection point lies on exactly one other tangent, and
the tangent line at t is itself parametrized by that second tangency
parameter, so the intersections hand back new parameters directly.  For a
Poncelet curve the parameter set stabilizes at the c + 1 roots of the
pencil member through t; otherwise it escapes.  The traversal runs over
complex floats throughout since tangent polygons generally have complex
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binforms import BinaryForm, chordal_distance, roots_float
from .construction import Pencil, split_base_points
from .projective import ConicFrame, ParamPoint, ProjVec, tangent_meet
from .scalars import EXACT, GeometryError, canonical_coeffs, to_float
from .ternary import PlaneCurve, restrict_to_span

#: relative chordal tolerance for identifying parameters on P^1
PARAM_TOL = 1e-7


@dataclass(frozen=True)
class Member:
    """A member of the pencil through a prescribed parameter."""

    form: BinaryForm
    at_base_point: bool = False


def member_through(pencil: Pencil, t0: ParamPoint) -> Member:
    """The unique member g(t0) f - f(t0) g vanishing at t0.

    At a base point every member vanishes; the member of the base-point
    reduced pencil is returned instead, flagged.
    """
    fv = pencil.f(t0.u, t0.v)
    gv = pencil.g(t0.u, t0.v)
    if pencil.mode == EXACT:
        base = fv == 0 and gv == 0
    else:
        scale = max(max(abs(c) for c in pencil.f.coeffs), max(abs(c) for c in pencil.g.coeffs))
        base = abs(fv) <= 1e-10 * scale and abs(gv) <= 1e-10 * scale
    if base:
        split = split_base_points(pencil)
        if split.h.degree == 0:
            raise GeometryError("member evaluation vanished on a base-point-free pencil")
        inner = member_through(split.reduced, t0)
        return Member(inner.form, at_base_point=True)
    form = pencil.f.scale(gv) - pencil.g.scale(fv)
    return Member(BinaryForm(form.degree, canonical_coeffs(form.coeffs)))


def polygon_vertices(frame: ConicFrame, roots) -> list[ProjVec]:
    """All pairwise tangent intersections of the given parameters, i < j."""
    roots = list(roots)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            cross = roots[i].u * roots[j].v - roots[j].u * roots[i].v
            if cross == 0 or (
                roots[i].mode != EXACT and abs(cross) <= 1e-12
            ):
                raise GeometryError("repeated root: split multiplicities before traversal")
    return [
        tangent_meet(frame, roots[i], roots[j])
        for i in range(len(roots))
        for j in range(i + 1, len(roots))
    ]


@dataclass(frozen=True)
class ClosureReport:
    """Outcome of one tangent-polygon traversal."""

    start: ParamPoint
    params_found: tuple
    closed: bool
    polygon_size: int
    max_vertex_residual: float
    iterations: int
    diagnostic: str | None = None


def _tangent_restriction(t_mat, degree, coeffs, t: ParamPoint):
    """Binary form cutting curve ^ tangent_line(t), in the second tangency
    parameter: the tangent at t is s |-> T . (2 u u_s, u v_s + u_s v, 2 v v_s)."""
    u, v = complex(t.u), complex(t.v)
    col0 = tuple(t_mat[i][0] * 2 * u + t_mat[i][1] * v for i in range(3))
    col1 = tuple(t_mat[i][1] * u + t_mat[i][2] * 2 * v for i in range(3))
    return restrict_to_span(degree, coeffs, col0, col1)


def closure_traverse(
    frame: ConicFrame,
    curve: PlaneCurve,
    start: ParamPoint,
    tol: float = 1e-8,
    param_tol: float = PARAM_TOL,
) -> ClosureReport:
    """Traverse tangent polygons of (conic, curve) from a start parameter.

    Runs in complex float arithmetic; exact inputs are converted.  The
    traversal closes when the parameter set stabilizes at <= c + 1 values
    whose pairwise tangent intersections all lie on the curve within the
    normalized residual ``tol``.
    """
    frame_f = frame.to_float()
    curve_f = curve.to_float() if curve.mode == EXACT else curve
    start_f = start.to_float()
    c = curve_f.degree
    t_mat = [[complex(to_float(x)) for x in row] for row in frame_f.transform]
    coeffs = [complex(to_float(x)) for x in curve_f.coeffs]
    coeff_scale = float(np.linalg.norm(np.abs(np.asarray(coeffs))))

    params: list[ParamPoint] = [start_f]
    frontier = [start_f]
    iterations = 0
    diagnostic = None
    cap = c + 1
    while frontier and len(params) <= cap:
        iterations += 1
        next_frontier: list[ParamPoint] = []
        for t in frontier:
            phi = _tangent_restriction(t_mat, c, coeffs, t)
            mags = [abs(x) for x in phi]
            if max(mags) <= 1e-10 * coeff_scale:
                diagnostic = "tangent line at start is a curve component"
                frontier = []
                next_frontier = []
                break
            try:
                found = roots_float(BinaryForm(c, tuple(phi)))
            except Exception as exc:  # noqa: BLE001 - report, don't raise
                diagnostic = f"root finding failed: {exc}"
                frontier = []
                next_frontier = []
                break
            for pair in found:
                cand = ParamPoint(*pair)
                if all(chordal_distance(cand.pair, q.pair) > param_tol for q in params):
                    params.append(cand)
                    next_frontier.append(cand)
            if len(params) > cap:
                break
        frontier = next_frontier

    escaped = len(params) > cap
    max_residual = float("inf")
    if not escaped and diagnostic is None and len(params) >= 2:
        max_residual = 0.0
        for i in range(len(params)):
            for j in range(i + 1, len(params)):
                vertex = tangent_meet(frame_f, params[i], params[j])
                val = abs(curve_f(vertex.coords))
                vm = max(abs(x) for x in vertex.coords)
                max_residual = max(max_residual, val / (coeff_scale * vm**c))
    closed = (
        not escaped
        and diagnostic is None
        and len(params) >= 2
        and max_residual <= tol
    )
    return ClosureReport(
        start=start_f,
        params_found=tuple(params),
        closed=closed,
        polygon_size=len(params),
        max_vertex_residual=max_residual,
        iterations=iterations,
        diagnostic=diagnostic,
    )
