"""Projective plane primitives: points, lines, parameters, conic frames.

A smooth conic is always carried as a *frame*: an invertible 3x3 transform
T applied to the reference conic xz = y^2 with its standard parametrization
t = (u : v) |-> (u^2, uv, v^2).  This keeps every incidence and tangency
identity exact in exact mode; conics given only by a symmetric matrix are
ingested in float mode (see :mod:`poncelet.recovery`) or exactly when a
rational point is known.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binforms import BinaryForm
from .linalg import det3, inverse3, mat_mul3, mat_vec3, transpose3
from .scalars import (
    EXACT,
    FLOAT_ZERO_REL,
    GeometryError,
    common_mode,
    exact_sqrt,
    mode_of,
    to_float,
)

PRIMAL = "primal"
DUAL = "dual"

#: matrix of the reference conic xz - y^2 (as a quadratic form)
REFERENCE_CONIC = (
    (Fraction(0), Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(-1), Fraction(0)),
    (Fraction(1, 2), Fraction(0), Fraction(0)),
)


class CoincidentParametersError(GeometryError):
    """Two parameters that must differ coincide (tangency degeneration)."""


def _canonical_triple(coords):
    mode = common_mode(coords)
    if all(c == 0 for c in coords):
        raise GeometryError("projective coordinates must not all vanish")
    if mode == EXACT:
        coords = tuple(Fraction(c) for c in coords)
        last = next(c for c in reversed(coords) if c != 0)
        return tuple(c / last for c in coords)
    mags = [abs(c) for c in coords]
    piv = max(range(3), key=lambda i: mags[i])
    p = coords[piv]
    return tuple(c / p for c in coords)


@dataclass(frozen=True)
class ProjVec:
    """A point or line of P^2, stored scale-canonically.

    Exact vectors are divided by their last nonzero coordinate, float ones
    by the max-magnitude coordinate, so equal projective objects compare
    equal as dataclasses.
    """

    coords: tuple
    kind: str = "point"
    chart: str = PRIMAL

    def __post_init__(self):
        if self.kind not in ("point", "line"):
            raise ValueError("kind must be 'point' or 'line'")
        if self.chart not in (PRIMAL, DUAL):
            raise ValueError("chart must be 'primal' or 'dual'")
        object.__setattr__(self, "coords", _canonical_triple(tuple(self.coords)))

    @property
    def mode(self) -> str:
        return common_mode(self.coords)

    def to_float(self) -> "ProjVec":
        return ProjVec(tuple(to_float(c) for c in self.coords), self.kind, self.chart)


@dataclass(frozen=True)
class ParamPoint:
    """A point (u : v) of the parameter line P^1."""

    u: object
    v: object

    def __post_init__(self):
        u, v = self.u, self.v
        mode = common_mode((u, v))
        if u == 0 and v == 0:
            raise GeometryError("(0 : 0) is not a parameter")
        if mode == EXACT:
            u, v = Fraction(u), Fraction(v)
            if v != 0:
                u, v = u / v, Fraction(1)
            else:
                u, v = Fraction(1), Fraction(0)
        else:
            # float: divide by the max-magnitude coordinate for stability
            if abs(v) >= abs(u):
                u, v = u / v, v / v
            else:
                u, v = u / u, v / u
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def mode(self) -> str:
        return common_mode((self.u, self.v))

    @property
    def pair(self):
        return (self.u, self.v)

    def to_float(self) -> "ParamPoint":
        return ParamPoint(complex(to_float(self.u)), complex(to_float(self.v)))


@dataclass(frozen=True)
class ConicFrame:
    """A smooth conic as an invertible transform of the reference conic."""

    transform: tuple
    chart: str = PRIMAL

    def __post_init__(self):
        t = tuple(tuple(row) for row in self.transform)
        if len(t) != 3 or any(len(r) != 3 for r in t):
            raise ValueError("transform must be 3x3")
        common_mode([x for row in t for x in row])
        d = det3(t)
        if d == 0:
            raise GeometryError("conic frame transform must be invertible")
        if self.chart not in (PRIMAL, DUAL):
            raise ValueError("chart must be 'primal' or 'dual'")
        object.__setattr__(self, "transform", t)

    @property
    def mode(self) -> str:
        return common_mode([x for row in self.transform for x in row])

    def inverse_transform(self):
        return inverse3(self.transform)

    def to_float(self) -> "ConicFrame":
        t = tuple(tuple(to_float(x) for x in row) for row in self.transform)
        return ConicFrame(t, self.chart)


def identity_frame(mode: str = EXACT, chart: str = PRIMAL) -> ConicFrame:
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    t = ((one, zero, zero), (zero, one, zero), (zero, zero, one))
    return ConicFrame(t, chart)


def conic_matrix(frame: ConicFrame):
    """Symmetric matrix of the conic carried by the frame: T^-T M0 T^-1."""
    inv = frame.inverse_transform()
    ref = REFERENCE_CONIC
    if frame.mode != EXACT:
        ref = tuple(tuple(to_float(x) for x in row) for row in ref)
    return mat_mul3(transpose3(inv), mat_mul3(ref, inv))


def conic_quadratic_value(frame: ConicFrame, point) -> object:
    coords = point.coords if isinstance(point, ProjVec) else tuple(point)
    m = conic_matrix(frame)
    return sum(coords[i] * sum(m[i][j] * coords[j] for j in range(3)) for i in range(3))


def conic_point(frame: ConicFrame, t: ParamPoint) -> ProjVec:
    """The conic's point at parameter t: T . (u^2, uv, v^2)."""
    u, v = t.pair
    return ProjVec(mat_vec3(frame.transform, (u * u, u * v, v * v)), "point", frame.chart)


def tangent_line(frame: ConicFrame, t: ParamPoint) -> ProjVec:
    """Tangent line of the conic at parameter t: T^-T . (v^2, -2uv, u^2)."""
    u, v = t.pair
    inv_t = transpose3(frame.inverse_transform())
    return ProjVec(mat_vec3(inv_t, (v * v, -2 * u * v, u * u)), "line", frame.chart)


def tangent_meet(frame: ConicFrame, t1: ParamPoint, t2: ParamPoint) -> ProjVec:
    """Intersection of the tangents at two distinct parameters."""
    if _params_coincide(t1, t2):
        raise CoincidentParametersError("coincident parameters")
    return ProjVec(tangent_meet_raw(frame, t1, t2), "point", frame.chart)


def tangent_meet_raw(frame: ConicFrame, t1: ParamPoint, t2: ParamPoint):
    u1, v1 = t1.pair
    u2, v2 = t2.pair
    return mat_vec3(frame.transform, (2 * u1 * u2, u1 * v2 + u2 * v1, 2 * v1 * v2))


def _params_coincide(t1: ParamPoint, t2: ParamPoint) -> bool:
    cross = t1.u * t2.v - t2.u * t1.v
    if mode_of(cross) == EXACT:
        return cross == 0
    return abs(cross) <= FLOAT_ZERO_REL  # canonical pairs have magnitude ~1


@dataclass(frozen=True)
class Tangency:
    """Parameters of the tangents through an exterior point.

    ``quadratic`` always holds the binary form cutting the two tangency
    parameters.  ``params`` carries the roots when available: always in
    float mode, in exact mode only when the quadratic splits over Q.
    ``on_conic`` flags a double root (the point lies on the conic).
    """

    quadratic: BinaryForm
    params: tuple | None
    on_conic: bool


def tangency_params(frame: ConicFrame, p: ProjVec) -> Tangency:
    """Invert tangent_meet: the tangency parameters of the point p."""
    x1, y1, z1 = mat_vec3(frame.inverse_transform(), p.coords)
    quad = BinaryForm(2, (x1, -2 * y1, z1))  # z' t^2 - 2 y' ts + x' s^2
    mode = quad.mode
    disc = 4 * y1 * y1 - 4 * x1 * z1
    if mode == EXACT:
        on_conic = disc == 0
        root = exact_sqrt(Fraction(disc))
        if root is None:
            return Tangency(quad, None, on_conic)
        if z1 != 0:
            r1 = ParamPoint((2 * y1 + root) / (2 * z1), Fraction(1))
            r2 = ParamPoint((2 * y1 - root) / (2 * z1), Fraction(1))
        elif y1 != 0:
            # z' = 0: one root at infinity, the other at x'/(2 y')
            r1 = ParamPoint(Fraction(1), Fraction(0))
            r2 = ParamPoint(x1, 2 * y1)
        else:
            r1 = r2 = ParamPoint(Fraction(1), Fraction(0))
        return Tangency(quad, (r1, r2), on_conic)
    from .binforms import roots_float

    scale = max(abs(x1), abs(y1), abs(z1))
    on_conic = abs(disc) <= 1e-10 * scale * scale
    roots = roots_float(quad)
    r1, r2 = (ParamPoint(*roots[0]), ParamPoint(*roots[1]))
    return Tangency(quad, (r1, r2), on_conic)


def restrict_line(frame: ConicFrame, line: ProjVec) -> BinaryForm:
    """Binary quadratic cutting line ^ conic on the parameter line.

    Coefficients (alpha, beta, gamma) of alpha u^2 + beta uv + gamma v^2
    are returned as a BinaryForm; its roots are the parameters of the two
    intersection points.
    """
    lt = mat_vec3(transpose3(frame.transform), line.coords)
    alpha, beta, gamma = lt
    assert not (alpha == 0 and beta == 0 and gamma == 0), "zero restriction on smooth conic"
    return BinaryForm(2, (gamma, beta, alpha))


def line_through(p1: ProjVec, p2: ProjVec) -> ProjVec:
    from .linalg import cross3

    if p1.chart != p2.chart:
        raise GeometryError("chart mismatch in line_through")
    return ProjVec(cross3(p1.coords, p2.coords), "line", p1.chart)


def incident(v1: ProjVec, v2: ProjVec):
    """Incidence pairing <point, line>; exact zero means incidence."""
    from .linalg import dot3

    return dot3(v1.coords, v2.coords)
