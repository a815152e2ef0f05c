"""Poncelet curves of smooth conics.

Construction of the degree-c curve swept by the tangent polygons of a
pencil of degree-(c+1) divisors on a conic, the exact inverse (membership
and pencil recovery), Darboux closure traversal, jumping-line duality, and
desk-scale conic-recovery experiments.
"""

from .scalars import (
    EXACT,
    FLOAT,
    DegeneratePencilError,
    GeometryError,
    ModeMismatchError,
    canonical_coeffs,
    format_rational,
    parse_rational,
)
from .binforms import (
    BinaryForm,
    bf_monomial,
    chordal_distance,
    from_roots,
    gcd_approx,
    gcd_exact,
    linear_form,
    rational_roots,
    roots_float,
)
from .projective import (
    DUAL,
    PRIMAL,
    CoincidentParametersError,
    ConicFrame,
    ParamPoint,
    ProjVec,
    Tangency,
    conic_matrix,
    conic_point,
    identity_frame,
    restrict_line,
    tangency_params,
    tangent_line,
    tangent_meet,
)
from .ternary import PlaneCurve, curve_from_map, divides_exactly, monomials
from .construction import (
    BasePointSplit,
    Pencil,
    SymBiForm,
    SymReduced,
    bezout_form,
    compose_pencil,
    curve_differential,
    expand_reduced,
    plucker_coords,
    plucker_matrix,
    poncelet_curve,
    raw_curve_coeffs,
    reduce_symmetric,
    split_base_points,
)
from .membership import (
    AntisymMatrix,
    MembershipVerdict,
    antisym_matrix,
    is_poncelet,
    pullback_biform,
)
from .closure import ClosureReport, Member, closure_traverse, member_through, polygon_vertices
from .duality import dual_conic, duality_check, jumping_curve
from .recovery import (
    Candidate,
    DimensionReport,
    RecoveryResult,
    common_tangents,
    conic_vec,
    frame_from_matrix_point,
    intersection_probe,
    membership_residual,
    product_pencil,
    projective_distance,
    random_conic_pair,
    recover_conics,
    tangent_space_rank,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
