"""Dual-mode scalars: exact arbitrary-precision rationals or binary64 floats.

Every geometric object in this package is tagged with a mode inferred from
its scalar entries.  Exact objects hold :class:`fractions.Fraction` (plain
``int`` is accepted and treated as exact); float objects hold ``float`` or
``complex``.  Exact arithmetic is carried out without rounding, so all
algebraic identities hold on the nose.  The two modes never mix inside one
computation: :func:`common_mode` raises :class:`ModeMismatchError` on any
attempt.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

EXACT = "exact"
FLOAT = "float"

#: relative magnitude below which a float coefficient counts as zero
FLOAT_ZERO_REL = 1e-12


class ModeMismatchError(TypeError):
    """Exact and float scalars were combined in one computation."""


class GeometryError(ValueError):
    """Invalid geometric input (degenerate frame, coincident parameters, ...)."""


class DegeneratePencilError(GeometryError):
    """The two binary forms of a pencil are linearly dependent."""


_EXACT_TYPES = (int, Fraction)
_FLOAT_TYPES = (float, complex, np.floating, np.complexfloating)


def mode_of(x) -> str:
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, _EXACT_TYPES):
        return EXACT
    if isinstance(x, _FLOAT_TYPES):
        return FLOAT
    raise TypeError(f"not a scalar: {x!r} of type {type(x).__name__}")


def common_mode(values) -> str:
    """Mode shared by all scalars in ``values``; mixing modes is rejected."""
    mode = None
    for v in values:
        m = mode_of(v)
        if mode is None:
            mode = m
        elif m != mode:
            raise ModeMismatchError("exact and float scalars mixed in one computation")
    if mode is None:
        raise ValueError("empty scalar collection has no mode")
    return mode


def to_float(x):
    """Lossy conversion of any scalar to the float domain."""
    if isinstance(x, Fraction):
        return x.numerator / x.denominator
    if isinstance(x, (complex, np.complexfloating)):
        return complex(x)
    return float(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational."""
    return Fraction(text.strip())


def format_rational(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def is_zero(x, scale=1) -> bool:
    """Zero test: exact equality in exact mode, relative threshold in float."""
    if mode_of(x) == EXACT:
        return x == 0
    return abs(x) <= FLOAT_ZERO_REL * max(abs(scale), 1e-300)


def exact_sqrt(x: Fraction):
    """Square root of a nonnegative rational if it is rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    sn = math.isqrt(x.numerator)
    sd = math.isqrt(x.denominator)
    if sn * sn == x.numerator and sd * sd == x.denominator:
        return Fraction(sn, sd)
    return None


def canonical_coeffs(coeffs, mode=None):
    """Scale-canonical representative of a coefficient vector.

    Exact: primitive integer entries with the first nonzero one positive.
    Float: unit Euclidean norm with the first significant entry rotated to
    the positive real axis (sign-flipped for real vectors).
    """
    coeffs = tuple(coeffs)
    if mode is None:
        mode = common_mode(coeffs)
    if mode == EXACT:
        fracs = [Fraction(c) for c in coeffs]
        if all(c == 0 for c in fracs):
            return tuple(fracs)
        denom_lcm = 1
        for c in fracs:
            denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in fracs]
        g = 0
        for c in ints:
            g = math.gcd(g, abs(c))
        lead = next(c for c in ints if c != 0)
        sign = 1 if lead > 0 else -1
        return tuple(Fraction(sign * c, g) for c in ints)
    arr = np.asarray(coeffs)
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        return tuple(arr.tolist())
    arr = arr / norm
    mags = np.abs(arr)
    lead_idx = next(i for i, m in enumerate(mags) if m > FLOAT_ZERO_REL * mags.max())
    lead = arr[lead_idx]
    arr = arr * (abs(lead) / lead)
    if not np.iscomplexobj(np.asarray(coeffs)):
        arr = arr.real
    return tuple(arr.tolist())
