"""Homogeneous ternary forms: plane curves and their polynomial machinery.

Monomials of degree c are kept in ascending lexicographic order on the
exponent triple (i, j, k) of x^i y^j z^k, i.e. z^c first and x^c last; the
"first nonzero coefficient" of the canonical scale rule refers to this
order.  The same machinery doubles for polynomials in the symmetric
invariants (q, p, r) of pairs of parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import EXACT, GeometryError, canonical_coeffs, common_mode, to_float
from .projective import DUAL, PRIMAL


@lru_cache(maxsize=None)
def monomials(degree: int):
    """Exponent triples (i, j, k), i+j+k = degree, ascending lex order."""
    out = []
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            out.append((i, j, degree - i - j))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def monomial_index(degree: int):
    return {m: i for i, m in enumerate(monomials(degree))}


def coeff_count(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


@dataclass(frozen=True)
class PlaneCurve:
    """A degree-c plane curve as a scale-canonical ternary form.

    ``coeffs`` aligns with :func:`monomials`.  The chart flag records
    whether the coordinates are primal (points) or dual (lines).
    """

    degree: int
    coeffs: tuple
    chart: str = PRIMAL

    def __post_init__(self):
        if len(self.coeffs) != coeff_count(self.degree):
            raise ValueError("coefficient count does not match the degree")
        if self.chart not in (PRIMAL, DUAL):
            raise ValueError("chart must be 'primal' or 'dual'")
        canon = canonical_coeffs(self.coeffs)
        if all(c == 0 for c in canon):
            raise GeometryError("zero ternary form is not a curve")
        object.__setattr__(self, "coeffs", canon)

    @property
    def mode(self) -> str:
        return common_mode(self.coeffs)

    def coeff(self, i: int, j: int, k: int):
        return self.coeffs[monomial_index(self.degree)[(i, j, k)]]

    def coeff_map(self) -> dict:
        return {m: c for m, c in zip(monomials(self.degree), self.coeffs) if c != 0}

    def to_float(self) -> "PlaneCurve":
        return PlaneCurve(self.degree, tuple(to_float(c) for c in self.coeffs), self.chart)

    def __call__(self, point):
        coords = getattr(point, "coords", point)
        return eval_form(self.degree, self.coeffs, coords)


def curve_from_map(degree: int, coeff_map: dict, chart: str = PRIMAL) -> PlaneCurve:
    idx = monomial_index(degree)
    mode_probe = next(iter(coeff_map.values()))
    zero = Fraction(0) if common_mode([mode_probe]) == EXACT else 0.0
    coeffs = [zero] * coeff_count(degree)
    for mono, c in coeff_map.items():
        coeffs[idx[tuple(mono)]] = c
    return PlaneCurve(degree, tuple(coeffs), chart)


def eval_form(degree: int, coeffs, coords):
    x, y, z = coords
    xp = [1]
    yp = [1]
    zp = [1]
    for _ in range(degree):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
        zp.append(zp[-1] * z)
    acc = 0
    for (i, j, k), c in zip(monomials(degree), coeffs):
        if c != 0:
            acc = acc + c * xp[i] * yp[j] * zp[k]
    return acc


# -- sparse dict-based polynomial core ---------------------------------------


def _dict_mul(d1: dict, d2: dict) -> dict:
    out = {}
    for (a, b, c), x in d1.items():
        for (i, j, k), y in d2.items():
            key = (a + i, b + j, c + k)
            v = out.get(key)
            out[key] = x * y if v is None else v + x * y
    return {k: v for k, v in out.items() if v != 0}


def to_dict(degree: int, coeffs) -> dict:
    return {m: c for m, c in zip(monomials(degree), coeffs) if c != 0}


def from_dict(degree: int, d: dict, zero):
    idx = monomial_index(degree)
    coeffs = [zero] * coeff_count(degree)
    for m, c in d.items():
        coeffs[idx[m]] = c
    return tuple(coeffs)


def compose_linear(degree: int, coeffs, matrix):
    """Coefficients of C(A . v): substitute three linear forms for (x, y, z).

    ``matrix`` rows give the linear forms; works for any scalar mode.  The
    same routine serves (x, y, z) -> (q, p, r) style substitutions.
    """
    mode = common_mode([x for row in matrix for x in row])
    zero = Fraction(0) if mode == EXACT else 0.0
    one = Fraction(1) if mode == EXACT else 1.0
    lin = []
    for row in matrix:
        d = {}
        for pos, val in enumerate(row):
            if val != 0:
                key = tuple(1 if p == pos else 0 for p in range(3))
                d[key] = val
        lin.append(d)
    # cache powers of each linear form
    pows = []
    for d in lin:
        plist = [{(0, 0, 0): one}]
        for _ in range(degree):
            plist.append(_dict_mul(plist[-1], d) if d else {})
        pows.append(plist)
    acc: dict = {}
    for (i, j, k), c in zip(monomials(degree), coeffs):
        if c == 0:
            continue
        term = pows[0][i]
        term = _dict_mul(term, pows[1][j]) if term else {}
        term = _dict_mul(term, pows[2][k]) if term else {}
        for m, v in term.items():
            prev = acc.get(m)
            acc[m] = c * v if prev is None else prev + c * v
    acc = {k: v for k, v in acc.items() if v != 0}
    return from_dict(degree, acc, zero)


def multiply(deg1: int, coeffs1, deg2: int, coeffs2):
    d = _dict_mul(to_dict(deg1, coeffs1), to_dict(deg2, coeffs2))
    mode = common_mode(list(coeffs1) + list(coeffs2))
    zero = Fraction(0) if mode == EXACT else 0.0
    return from_dict(deg1 + deg2, d, zero)


def try_divide_exact(deg_num: int, num_coeffs, deg_den: int, den_coeffs):
    """Exact quotient of homogeneous ternary forms, or None.

    Multivariate reduction with the ascending-lex leading monomial; since
    lex order is multiplicative, exact divisibility guarantees every
    leading term cancels and the remainder reaches zero.
    """
    num = {m: Fraction(c) for m, c in to_dict(deg_num, num_coeffs).items()}
    den = {m: Fraction(c) for m, c in to_dict(deg_den, den_coeffs).items()}
    if not den:
        raise ZeroDivisionError("division by the zero form")
    dq = deg_num - deg_den
    if dq < 0:
        return None
    lead_den = max(den)
    quotient: dict = {}
    while num:
        lead = max(num)
        qm = tuple(a - b for a, b in zip(lead, lead_den))
        if any(e < 0 for e in qm):
            return None
        qc = num[lead] / den[lead_den]
        quotient[qm] = qc
        for m, c in den.items():
            key = tuple(a + b for a, b in zip(qm, m))
            v = num.get(key, Fraction(0)) - qc * c
            if v == 0:
                num.pop(key, None)
            else:
                num[key] = v
    return from_dict(dq, quotient, Fraction(0))


def divides_exactly(inner: PlaneCurve, outer: PlaneCurve) -> bool:
    """Whether the inner curve's form divides the outer's exactly."""
    if inner.mode != EXACT or outer.mode != EXACT:
        raise GeometryError("exact divisibility requires exact curves")
    return try_divide_exact(outer.degree, outer.coeffs, inner.degree, inner.coeffs) is not None


def compose_curve(curve: PlaneCurve, matrix) -> PlaneCurve:
    """The curve pulled back along the linear map: x |-> matrix . x."""
    return PlaneCurve(curve.degree, compose_linear(curve.degree, curve.coeffs, matrix), curve.chart)


def restrict_to_span(degree: int, coeffs, p0, p1):
    """Binary form cut out on the line spanned by two points.

    Substitutes (x, y, z) = u * p0 + v * p1; the result's roots are the
    parameters of the curve's intersections with that line.
    """
    matrix = tuple((p0[i], p1[i], 0 * p0[i]) for i in range(3))
    full = compose_linear(degree, coeffs, matrix)
    out = [c for (i, j, k), c in zip(monomials(degree), full) if k == 0]
    # monomials with k = 0 appear in ascending i, i.e. u-power order
    return tuple(out)
