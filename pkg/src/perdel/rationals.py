"""Exact rational scalars and their canonical string form.

Every number that flows through this package is either a Python int or a
``fractions.Fraction``: arithmetic is exact, no rounding ever happens.
``Fraction`` already stores values in lowest terms with a positive
denominator, which is exactly the scalar contract the rest of the package
relies on.  This module adds the canonical "p/q" serialization used by every
file format, plus a couple of exact helpers (integer square roots of
rationals) that the enumeration code needs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputFormatError

#: Exact rational scalar type used across the package.
ExactScalar = Fraction


def frac(value) -> Fraction:
    """Coerce ints, Fractions or "p/q" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise InputFormatError(
            f"refusing to coerce float {value!r}; supply an int or 'p/q' string"
        )
    raise InputFormatError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "p/q" form ("3", "-7/2")."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad rational literal {text!r}") from exc
    return value

def format_rational(value) -> str:
    """Canonical string form: denominator omitted when it is 1."""
    value = frac(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def isqrt_floor(value: Fraction) -> int:
    """Largest integer n with n*n <= value (value must be >= 0)."""
    if value < 0:
        raise ValueError("isqrt_floor of a negative rational")
    num, den = value.numerator, value.denominator
    # floor(sqrt(num/den)) = floor(sqrt(num*den)/den)
    return math.isqrt(num * den) // den


def isqrt_ceil(value: Fraction) -> int:
    """Smallest integer n with n*n >= value (value must be >= 0)."""
    r = isqrt_floor(value)
    return r if Fraction(r * r) >= value else r + 1


def lcm_denominators(values) -> int:
    """Least common multiple of the denominators of an iterable of rationals."""
    out = 1
    for v in values:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out
