"""Dual conics and jumping-line curves.

For a base-point-free pencil on the conic, the rank-2 kernel bundle of
O^2 -> O_S((c+1)/2) has first Chern class -2 and second Chern class c + 1,
and its jumping lines are exactly the lines joining the two conic points
of a common member.  That locus is computed here purely geometrically: a
line with restriction alpha u^2 + beta uv + gamma v^2 meets the conic at
the parameter pair with (q : p : r) = (gamma : -beta : alpha), so
substituting into the reduced Bezout form gives a degree-c curve in line
coordinates.  It is Poncelet related to the dual conic; the parity
restriction of the bundle picture is not needed for the locus, so even c
is accepted with a warning.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .construction import Pencil, bezout_form, reduce_symmetric
from .linalg import mat_mul3, transpose3
from .membership import MembershipVerdict, is_poncelet
from .projective import DUAL, PRIMAL, ConicFrame
from .scalars import EXACT
from .ternary import PlaneCurve, compose_linear

#: fixed map sending (u^2, uv, v^2) to (v^2, -2uv, u^2)
_J = (
    (Fraction(0), Fraction(0), Fraction(1)),
    (Fraction(0), Fraction(-2), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(0)),
)


def _j_matrix(mode: str):
    if mode == EXACT:
        return _J
    return tuple(tuple(float(x) for x in row) for row in _J)


def dual_conic(frame: ConicFrame) -> ConicFrame:
    """Frame of the dual conic: its points are the tangent lines of the input.

    The transform is T* = T^-T . J, so conic_point(T*, t) equals
    tangent_line(T, t) exactly for every parameter; applying dual_conic
    twice returns the original transform on the nose.
    """
    t_star = mat_mul3(transpose3(frame.inverse_transform()), _j_matrix(frame.mode))
    chart = DUAL if frame.chart == PRIMAL else PRIMAL
    return ConicFrame(t_star, chart)


def jumping_curve(frame: ConicFrame, pencil: Pencil) -> PlaneCurve:
    """Locus of lines whose two conic points lie in a common member.

    Returned in the dual chart.  Defined for every degree; for even c the
    kernel-bundle interpretation breaks down, so a warning is emitted.
    """
    if pencil.c % 2 == 0:
        warnings.warn(
            "jumping curve of even degree: the geometric locus is fine but the "
            "kernel-bundle interpretation needs odd degree",
            stacklevel=2,
        )
    red = reduce_symmetric(bezout_form(pencil))
    tt = transpose3(frame.transform)
    # (q, p, r) = (gamma, -beta, alpha) with (alpha, beta, gamma) = T^T l
    matrix = (tt[2], tuple(-x for x in tt[1]), tt[0])
    coeffs = compose_linear(pencil.c, red.coeffs, matrix)
    chart = DUAL if frame.chart == PRIMAL else PRIMAL
    return PlaneCurve(pencil.c, coeffs, chart)


def duality_check(frame: ConicFrame, pencil: Pencil, tol: float = 1e-8) -> MembershipVerdict:
    """Check that the jumping curve is Poncelet related to the dual conic."""
    return is_poncelet(dual_conic(frame), jumping_curve(frame, pencil), tol)
