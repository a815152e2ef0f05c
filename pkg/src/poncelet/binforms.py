"""Homogeneous binary forms in (u, v) and their arithmetic.

Coefficient convention: ``coeffs[i]`` multiplies ``u**i * v**(degree - i)``.
A root "at infinity" (u : v) = (1 : 0) therefore shows up as vanishing top
coefficients, a root at (0 : 1) as vanishing bottom ones.  All exact
routines (gcd, exact division, composition) keep this bookkeeping so the
divisor-at-infinity never gets lost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import EXACT, FLOAT, GeometryError, common_mode, mode_of, to_float


@dataclass(frozen=True)
class BinaryForm:
    """Coefficient vector of a degree-d homogeneous form in (u, v)."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def mode(self) -> str:
        return common_mode(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, u, v):
        acc = 0
        up = 1
        # evaluate as sum coeffs[i] * u^i * v^(d-i)
        vs = [1]
        for _ in range(self.degree):
            vs.append(vs[-1] * v)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + c * up * vs[self.degree - i]
            up = up * u
        return acc

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in binary form addition")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in binary form subtraction")
        return BinaryForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b != 0:
                        out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, tuple(out))
        return BinaryForm(self.degree, tuple(other * c for c in self.coeffs))

    __rmul__ = __mul__

    def scale(self, s) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(s * c for c in self.coeffs))

    def to_float(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(to_float(c) for c in self.coeffs))


def bf_constant(value) -> BinaryForm:
    return BinaryForm(0, (value,))


def bf_monomial(degree: int, i: int, value=1) -> BinaryForm:
    coeffs = [0] * (degree + 1)
    coeffs[i] = value
    return BinaryForm(degree, tuple(coeffs))


def linear_form(u0, v0) -> BinaryForm:
    """Degree-1 form vanishing at the parameter (u0 : v0): v0*u - u0*v."""
    return BinaryForm(1, (-u0, v0))


def from_roots(roots) -> BinaryForm:
    """Product of the linear forms of the given (u, v) parameter pairs."""
    acc = bf_constant(_one_like(roots))
    for u0, v0 in roots:
        acc = acc * linear_form(u0, v0)
    return acc


def _one_like(roots):
    for u0, v0 in roots:
        if mode_of(u0) == FLOAT or mode_of(v0) == FLOAT:
            return 1.0
    return Fraction(1)


def bf_pow(f: BinaryForm, e: int) -> BinaryForm:
    acc = bf_constant(Fraction(1) if f.mode == EXACT else 1.0)
    for _ in range(e):
        acc = acc * f
    return acc


def substitute_pair(h: BinaryForm, f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """h(f, g): substitute the pair (f, g) for (u, v) in the form h."""
    if f.degree != g.degree:
        raise ValueError("substituted forms must share a degree")
    k = h.degree
    out = None
    for i, c in enumerate(h.coeffs):
        if c == 0:
            continue
        term = (bf_pow(f, i) * bf_pow(g, k - i)).scale(c)
        out = term if out is None else out + term
    if out is None:
        raise ValueError("zero outer form in substitution")
    return out


# -- exact gcd and division --------------------------------------------------


def _dehom(f: BinaryForm):
    """Coefficients of f(u, 1) plus the multiplicity of the root at infinity."""
    coeffs = [Fraction(c) for c in f.coeffs]
    top = len(coeffs) - 1
    while top > 0 and coeffs[top] == 0:
        top -= 1
    inf_mult = f.degree - top
    if coeffs[top] == 0:
        return [Fraction(0)], f.degree  # zero form: treat as v^degree formally
    return coeffs[: top + 1], inf_mult


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a, b):
    """Remainder of a mod b for rational coefficient lists, lowest first."""
    r = _poly_trim([Fraction(x) for x in a])
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and any(c != 0 for c in r):
        q = r[-1] / lb
        shift = len(r) - 1 - db
        for i, c in enumerate(b):
            r[shift + i] -= q * c
        r = _poly_trim(r)
        if r[-1] == 0:
            break
    return r


def _poly_gcd_exact(a, b):
    """Monic gcd of two rational coefficient lists (lowest degree first)."""
    a = _poly_trim([Fraction(x) for x in a])
    b = _poly_trim([Fraction(x) for x in b])
    while not (len(b) == 1 and b[0] == 0):
        a, b = b, _poly_rem(a, b)
    lead = a[-1]
    return [c / lead for c in a] if lead != 0 else a


def gcd_exact(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact gcd of two binary forms, infinity roots included."""
    if f.is_zero() or g.is_zero():
        raise ValueError("gcd of a zero form")
    pf, f_inf = _dehom(f)
    pg, g_inf = _dehom(g)
    d = _poly_gcd_exact(pf, pg)
    inf_mult = min(f_inf, g_inf)
    deg = (len(d) - 1) + inf_mult
    coeffs = [Fraction(0)] * (deg + 1)
    for i, c in enumerate(d):
        coeffs[i] = c
    return BinaryForm(deg, tuple(coeffs))


def div_exact(f: BinaryForm, h: BinaryForm) -> BinaryForm:
    """Exact quotient f / h of binary forms; raises if h does not divide f."""
    if h.is_zero():
        raise ZeroDivisionError("division by the zero form")
    dq = f.degree - h.degree
    if dq < 0:
        raise GeometryError("exact division failed: degree of divisor too large")
    a0 = next(i for i, c in enumerate(h.coeffs) if c != 0)
    q = [Fraction(0)] * (dq + 1)
    f_coeffs = [Fraction(c) for c in f.coeffs]
    for i in range(a0, a0 + dq + 1):
        s = f_coeffs[i]
        for j in range(a0 + 1, min(len(h.coeffs), i + 1)):
            if i - j <= dq:
                s -= Fraction(h.coeffs[j]) * q[i - j]
        q[i - a0] = s / Fraction(h.coeffs[a0])
    quotient = BinaryForm(dq, tuple(q))
    if (quotient * h).coeffs != tuple(Fraction(c) for c in f.coeffs):
        raise GeometryError("exact division failed: nonzero remainder")
    return quotient


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(f: BinaryForm):
    """All rational projective roots of an exact binary form, with multiplicity.

    Uses the rational root theorem on the primitive integer model after
    splitting off the roots at (0 : 1) and (1 : 0).  Irrational roots are
    simply not returned, so the result may be shorter than the degree.
    """
    from fractions import Fraction as _F

    coeffs = [_F(c) for c in f.coeffs]
    if all(c == 0 for c in coeffs):
        raise ValueError("zero form")
    roots = []
    top = len(coeffs) - 1
    while top > 0 and coeffs[top] == 0:
        roots.append((_F(1), _F(0)))
        top -= 1
    bottom = 0
    while bottom < top and coeffs[bottom] == 0:
        roots.append((_F(0), _F(1)))
        bottom += 1
    core = coeffs[bottom : top + 1]
    if len(core) == 1:
        return roots
    denom_lcm = 1
    for c in core:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in core]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    ints = [c // g for c in ints]
    candidates = []
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            candidates.append(_F(p, q))
            candidates.append(_F(-p, q))
    candidates = sorted(set(candidates))
    poly = [_F(c) for c in ints]
    for cand in candidates:
        while len(poly) > 1:
            val = _F(0)
            for c in reversed(poly):
                val = val * cand + c
            if val != 0:
                break
            # deflate by (u - cand)
            new = [_F(0)] * (len(poly) - 1)
            carry = poly[-1]
            for i in range(len(poly) - 2, -1, -1):
                new[i] = carry
                carry = poly[i] + carry * cand
            poly = new
            roots.append((cand, _F(1)))
    return roots


# -- float-mode roots and approximate gcd ------------------------------------


def roots_float(f: BinaryForm, polish_steps: int = 1):
    """All projective roots of a float binary form as (u, v) pairs.

    Uses companion-matrix eigenvalues (numpy.roots) followed by Newton
    polishing; roots at infinity are read off vanishing top coefficients.
    """
    coeffs = np.asarray([to_float(c) for c in f.coeffs], dtype=complex)
    scale = np.abs(coeffs).max()
    if scale == 0.0:
        raise GeometryError("zero form has no well-defined roots")
    coeffs = coeffs / scale
    top = len(coeffs) - 1
    while top > 0 and abs(coeffs[top]) <= 1e-13:
        top -= 1
    inf_mult = f.degree - top
    bottom = 0
    while bottom < top and abs(coeffs[bottom]) <= 1e-13:
        bottom += 1
    zero_mult = bottom
    core = coeffs[bottom : top + 1]
    roots = []
    if len(core) > 1:
        monic = core[::-1]  # numpy.roots wants highest degree first
        rs = np.roots(monic)
        dcore = np.polyder(monic)
        for r in rs:
            z = r
            for _ in range(polish_steps):
                dp = np.polyval(dcore, z)
                if dp == 0:
                    break
                z = z - np.polyval(monic, z) / dp
            roots.append((complex(z), 1.0 + 0.0j))
    roots.extend([(0.0 + 0.0j, 1.0 + 0.0j)] * zero_mult)
    roots.extend([(1.0 + 0.0j, 0.0 + 0.0j)] * inf_mult)
    return roots


def chordal_distance(t1, t2) -> float:
    """Chordal metric on P^1 for (u, v) pairs, in [0, 1]."""
    u1, v1 = complex(t1[0]), complex(t1[1])
    u2, v2 = complex(t2[0]), complex(t2[1])
    n1 = abs(u1) ** 2 + abs(v1) ** 2
    n2 = abs(u2) ** 2 + abs(v2) ** 2
    if n1 == 0 or n2 == 0:
        raise ValueError("(0, 0) is not a parameter")
    return abs(u1 * v2 - u2 * v1) / np.sqrt(n1 * n2)


def gcd_approx(f: BinaryForm, g: BinaryForm, sv_tol: float = 1e-8):
    """Approximate gcd of float binary forms via Sylvester-matrix rank.

    Returns ``(h, cofactor_f, cofactor_g)`` with f ~ h * cofactor_f.  The
    degree of h is the rank deficiency of the Sylvester matrix of the two
    forms at relative singular-value threshold ``sv_tol``; the result is
    always to be treated as approximate.
    """
    fa = np.asarray([to_float(c) for c in f.coeffs], dtype=complex)
    ga = np.asarray([to_float(c) for c in g.coeffs], dtype=complex)
    fa = fa / np.abs(fa).max()
    ga = ga / np.abs(ga).max()
    m, n = f.degree, g.degree
    size = m + n
    syl = np.zeros((size, size), dtype=complex)
    for k in range(n):  # rows u^k * f
        syl[k, k : k + m + 1] = fa
    for k in range(m):
        syl[n + k, k : k + n + 1] = ga
    s = np.linalg.svd(syl, compute_uv=False)
    gcd_deg = int(np.sum(s <= sv_tol * s[0]))
    if gcd_deg == 0:
        one = bf_constant(1.0 + 0.0j)
        return one, BinaryForm(f.degree, tuple(map(complex, fa))), BinaryForm(
            g.degree, tuple(map(complex, ga))
        )
    # deflated Sylvester system: f * q - g * p = 0 with
    # deg q = n - gcd_deg, deg p = m - gcd_deg
    dq, dp = n - gcd_deg, m - gcd_deg
    rows = m + n - gcd_deg + 1
    cols = (dq + 1) + (dp + 1)
    sys = np.zeros((rows, cols), dtype=complex)
    for k in range(dq + 1):
        sys[k : k + m + 1, k] = fa
    for k in range(dp + 1):
        sys[k : k + n + 1, dq + 1 + k] -= ga
    _, _, vh = np.linalg.svd(sys)
    null = vh[-1].conj()
    qco, pco = null[: dq + 1], null[dq + 1 :]
    # recover h by least-squares deconvolution of f by p (and g by q)
    h_deg = gcd_deg
    conv = np.zeros((m + 1, h_deg + 1), dtype=complex)
    for k in range(h_deg + 1):
        conv[k : k + dp + 1, k] = pco
    h, *_ = np.linalg.lstsq(conv, fa, rcond=None)
    hform = BinaryForm(h_deg, tuple(map(complex, h)))
    return hform, BinaryForm(dp, tuple(map(complex, pco))), BinaryForm(dq, tuple(map(complex, qco)))
