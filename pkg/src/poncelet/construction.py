"""The pencil-to-curve construction and its linear-algebraic structure.

A pencil of degree-(c+1) divisors on the conic is a pair of independent
binary forms (f, g).  The symmetric Bezout biform

    B(t1, t2) = (f(t1) g(t2) - f(t2) g(t1)) / (u1 v2 - u2 v1)

rewritten in the invariants q = u1 u2, p = u1 v2 + u2 v1, r = v1 v2 and
evaluated at the tangent-intersection point (2q : p : 2r) (transported by
the frame) yields the degree-c curve swept by the tangent polygons of the
pencil's members.  Everything here is linear in the 2x2 minors of (f, g),
which is what makes the map coincide with a Pluecker embedding in suitable
coordinates: the change of coordinates is materialized once per degree as
the matrix returned by :func:`plucker_matrix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .binforms import BinaryForm, div_exact, gcd_approx, gcd_exact, substitute_pair
from .linalg import exact_rank, numeric_rank
from .projective import ConicFrame
from .scalars import DegeneratePencilError, EXACT, GeometryError, common_mode, to_float
from .ternary import PlaneCurve, compose_linear, monomial_index, monomials


@dataclass(frozen=True)
class Pencil:
    """Two independent binary forms of degree c + 1 spanning a pencil."""

    f: BinaryForm
    g: BinaryForm

    def __post_init__(self):
        if self.f.degree != self.g.degree:
            raise DegeneratePencilError("pencil members must share a degree")
        if self.f.degree < 1:
            raise DegeneratePencilError("pencil degree must be at least 1")
        common_mode(self.f.coeffs + self.g.coeffs)
        if not _independent(self.f, self.g):
            raise DegeneratePencilError("degenerate pencil: dependent forms")

    @property
    def c(self) -> int:
        """Degree of the associated curve."""
        return self.f.degree - 1

    @property
    def mode(self) -> str:
        return self.f.mode

    def to_float(self) -> "Pencil":
        return Pencil(self.f.to_float(), self.g.to_float())

    def member(self, lam, mu) -> BinaryForm:
        return self.f.scale(lam) + self.g.scale(mu)


def _independent(f: BinaryForm, g: BinaryForm) -> bool:
    if common_mode(f.coeffs + g.coeffs) == EXACT:
        return any(
            f.coeffs[i] * g.coeffs[j] - f.coeffs[j] * g.coeffs[i] != 0
            for i in range(len(f.coeffs))
            for j in range(i + 1, len(f.coeffs))
        )
    return numeric_rank([list(f.coeffs), list(g.coeffs)], rel_tol=1e-12) == 2


@dataclass(frozen=True)
class SymBiForm:
    """Symmetric bihomogeneous form of bidegree (c, c).

    ``b[i][j]`` multiplies u1^i v1^(c-i) u2^j v2^(c-j).
    """

    c: int
    b: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.b)
        if len(rows) != self.c + 1 or any(len(r) != self.c + 1 for r in rows):
            raise ValueError("biform matrix must be (c+1) x (c+1)")
        object.__setattr__(self, "b", rows)

    @property
    def mode(self) -> str:
        return common_mode([x for row in self.b for x in row])

    def is_symmetric(self) -> bool:
        n = self.c + 1
        return all(self.b[i][j] == self.b[j][i] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class SymReduced:
    """Degree-c polynomial in the invariants (q, p, r).

    Coefficients align with :func:`poncelet.ternary.monomials` read as
    exponent triples (a, b, d) of q^a p^b r^d.
    """

    c: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != (self.c + 1) * (self.c + 2) // 2:
            raise ValueError("coefficient count must be (c+1)(c+2)/2")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def mode(self) -> str:
        return common_mode(self.coeffs)


def _divide_by_diagonal(a):
    """Solve (u1 v2 - u2 v1) * B = A for B, given an antisymmetric A.

    ``a`` is the (n+1) x (n+1) coefficient matrix of a bidegree-(n, n)
    form vanishing on the diagonal; the quotient has bidegree (n-1, n-1).
    The recurrence A[k][l] = B[k-1][l] - B[k][l-1] only ever adds, so it
    is exact in both modes.
    """
    n = len(a) - 1
    zero = a[0][0] - a[0][0]
    b = [[zero] * n for _ in range(n)]
    for l in range(n):
        for i in range(n):
            val = a[i + 1][l]
            if l > 0 and i + 1 < n:
                val = val + b[i + 1][l - 1]
            b[i][l] = val
    return b


def bezout_form(pencil: Pencil) -> SymBiForm:
    """Divide f(t1) g(t2) - f(t2) g(t1) by u1 v2 - u2 v1, exactly.

    The quotient is symmetric of bidegree (c, c) and its entries are
    integer combinations of the 2x2 minors of the pencil.
    """
    f, g = pencil.f.coeffs, pencil.g.coeffs
    n = pencil.f.degree  # B is n x n with n = c + 1
    a = [[f[i] * g[j] - f[j] * g[i] for j in range(n + 1)] for i in range(n + 1)]
    b = _divide_by_diagonal(a)
    out = SymBiForm(pencil.c, tuple(tuple(row) for row in b))
    if pencil.mode == EXACT:
        _assert_bezout_identity(a, out)
    return out


def _assert_bezout_identity(a, bi: SymBiForm):
    n = bi.c + 1
    for k in range(n + 1):
        for l in range(n + 1):
            lhs = 0
            if 1 <= k:
                if k - 1 < n and l < n:
                    lhs = lhs + bi.b[k - 1][l]
            if 1 <= l:
                if k < n and l - 1 < n:
                    lhs = lhs - bi.b[k][l - 1]
            if lhs != a[k][l]:
                raise GeometryError("bezout division failed to verify")


@lru_cache(maxsize=None)
def _qpr_expansion(c: int):
    """Per monomial q^a p^b r^d, the biform entries it expands to."""
    table = {}
    for (aa, bb, dd) in monomials(c):
        entries = []
        for k in range(bb + 1):
            entries.append(((aa + k, aa + bb - k), math.comb(bb, k)))
        table[(aa, bb, dd)] = tuple(entries)
    return table


def reduce_symmetric(bi: SymBiForm) -> SymReduced:
    """Rewrite a symmetric (c, c)-biform as a polynomial in (q, p, r)."""
    if not bi.is_symmetric():
        raise GeometryError("biform is not symmetric")
    c = bi.c
    table = _qpr_expansion(c)
    residual = [list(row) for row in bi.b]
    zero = residual[0][0] - residual[0][0]
    idx = monomial_index(c)
    coeffs = [zero] * len(monomials(c))
    for b_exp in range(c, -1, -1):
        for a_exp in range(c - b_exp + 1):
            d_exp = c - b_exp - a_exp
            coeff = residual[a_exp][a_exp + b_exp]
            if coeff == 0:
                continue
            coeffs[idx[(a_exp, b_exp, d_exp)]] = coeff
            for (i, j), binom in table[(a_exp, b_exp, d_exp)]:
                residual[i][j] -= coeff * binom
    if any(x != 0 for row in residual for x in row):
        raise GeometryError("symmetric reduction left a residue")
    return SymReduced(c, tuple(coeffs))


def expand_reduced(red: SymReduced) -> SymBiForm:
    """Inverse of :func:`reduce_symmetric`: expand back into a biform."""
    c = red.c
    table = _qpr_expansion(c)
    zero = red.coeffs[0] - red.coeffs[0]
    b = [[zero] * (c + 1) for _ in range(c + 1)]
    for mono, coeff in zip(monomials(c), red.coeffs):
        if coeff == 0:
            continue
        for (i, j), binom in table[mono]:
            b[i][j] += coeff * binom
    return SymBiForm(c, tuple(tuple(row) for row in b))


def _substitution_matrix(frame: ConicFrame):
    """(q, p, r) = diag(1/2, 1, 1/2) . T^-1 . (x, y, z)."""
    inv = frame.inverse_transform()
    half = Fraction(1, 2) if frame.mode == EXACT else 0.5
    one = Fraction(1) if frame.mode == EXACT else 1.0
    scale = (half, one, half)
    return tuple(tuple(scale[i] * inv[i][j] for j in range(3)) for i in range(3))


def raw_curve_coeffs(frame: ConicFrame, pencil: Pencil):
    """Non-canonicalized curve coefficients; exactly linear in the minors."""
    red = reduce_symmetric(bezout_form(pencil))
    return compose_linear(pencil.c, red.coeffs, _substitution_matrix(frame))


def poncelet_curve(frame: ConicFrame, pencil: Pencil) -> PlaneCurve:
    """The degree-c curve swept by tangent intersections of the pencil."""
    return PlaneCurve(pencil.c, raw_curve_coeffs(frame, pencil), frame.chart)


@dataclass(frozen=True)
class BasePointSplit:
    """gcd factor and residual pencil of a base-point reduction."""

    h: BinaryForm
    reduced: Pencil
    approximate: bool


def split_base_points(pencil: Pencil) -> BasePointSplit:
    """Split off the base points: h = gcd(f, g) and the residual pencil.

    The associated curve factors exactly as the product of the tangent
    lines at the roots of h (with multiplicity) times the residual curve.
    Float pencils use an approximate gcd (Sylvester singular values at
    relative threshold 1e-8) and the result is flagged approximate.
    """
    if pencil.mode == EXACT:
        h = gcd_exact(pencil.f, pencil.g)
        if h.degree == 0:
            return BasePointSplit(h, pencil, False)
        reduced = Pencil(div_exact(pencil.f, h), div_exact(pencil.g, h))
        return BasePointSplit(h, reduced, False)
    h, cof_f, cof_g = gcd_approx(pencil.f, pencil.g)
    if h.degree == 0:
        return BasePointSplit(h, pencil, True)
    return BasePointSplit(h, Pencil(cof_f, cof_g), True)


@lru_cache(maxsize=None)
def minor_pairs(n_coeffs: int):
    """Index pairs (a, b), a < b, in lex order, for the Pluecker minors."""
    return tuple((a, b) for a in range(n_coeffs) for b in range(a + 1, n_coeffs))


def plucker_coords(pencil: Pencil):
    """All 2x2 minors f_a g_b - f_b g_a of the pencil, in fixed order."""
    f, g = pencil.f.coeffs, pencil.g.coeffs
    return tuple(f[a] * g[b] - f[b] * g[a] for a, b in minor_pairs(len(f)))


@lru_cache(maxsize=None)
def plucker_matrix(c: int):
    """The invertible map L_c with raw curve coeffs = L_c . minors.

    Built by evaluating the construction on the monomial basis pencils
    (u^a v^(c+1-a), u^b v^(c+1-b)); verified invertible once per degree.
    """
    from .projective import identity_frame

    n = c + 2
    frame = identity_frame()
    cols = []
    for a, b in minor_pairs(n):
        fa = [Fraction(0)] * n
        ga = [Fraction(0)] * n
        fa[a] = Fraction(1)
        ga[b] = Fraction(1)
        pen = Pencil(BinaryForm(c + 1, tuple(fa)), BinaryForm(c + 1, tuple(ga)))
        cols.append(raw_curve_coeffs(frame, pen))
    matrix = tuple(tuple(col[rowi] for col in cols) for rowi in range(len(cols[0])))
    if exact_rank(matrix) != len(cols):
        raise GeometryError(f"plucker change of coordinates not invertible at degree {c}")
    return matrix


def apply_plucker_matrix(c: int, minors):
    lc = plucker_matrix(c)
    return tuple(sum(row[j] * minors[j] for j in range(len(minors))) for row in lc)


def compose_pencil(inner: Pencil, outer) -> Pencil:
    """Substitute the inner pencil into a pair of degree-k outer forms.

    The result is the pencil (h1(f, g), h2(f, g)); the inner curve divides
    the composed curve exactly.
    """
    h1, h2 = outer
    if h1.degree != h2.degree or h1.degree < 1:
        raise DegeneratePencilError("outer pair must share a positive degree")
    if not _independent(h1, h2):
        raise DegeneratePencilError("degenerate outer pair")
    return Pencil(
        substitute_pair(h1, inner.f, inner.g), substitute_pair(h2, inner.f, inner.g)
    )


def _raw_from_pair_matrix(frame: ConicFrame, c: int, a):
    """Raw curve coefficients from a (c+2) x (c+2) antisymmetric pair matrix."""
    b = _divide_by_diagonal(a)
    red = reduce_symmetric(SymBiForm(c, tuple(tuple(row) for row in b)))
    return compose_linear(c, red.coeffs, _substitution_matrix(frame))


def curve_differential(pencil: Pencil, frame: ConicFrame | None = None):
    """Exact Jacobian of (f, g) |-> raw curve coefficients for a frame.

    Columns are indexed by the 2(c+2) coefficient perturbations (delta f
    first).  The curve is linear in the pair matrix f g^T - g f^T, so each
    column is the construction run on the perturbed pair matrix.
    """
    from .projective import identity_frame

    if pencil.mode != EXACT:
        raise GeometryError("curve differential is computed exactly")
    if frame is None:
        frame = identity_frame()
    c = pencil.c
    n = c + 2
    f, g = pencil.f.coeffs, pencil.g.coeffs
    zero = Fraction(0)
    cols = []
    for source in ("f", "g"):
        for m in range(n):
            a = [[zero] * n for _ in range(n)]
            if source == "f":  # d/de (f + e e_m) g^T - g (f + e e_m)^T
                for j in range(n):
                    a[m][j] += g[j]
                    a[j][m] -= g[j]
            else:
                for i in range(n):
                    a[i][m] += f[i]
                    a[m][i] -= f[i]
            cols.append(_raw_from_pair_matrix(frame, c, a))
    nrows = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(nrows))
