"""Exact rational values.

Probabilities and LP data are `fractions.Fraction` throughout: always in
lowest terms, positive denominator, exact arithmetic. This module holds the
conversion helpers shared by constructors and file readers. Floats are
rejected everywhere a probability or an exact coefficient is expected; the
factorization and zero-constraint checks in this package are only meaningful
at the exact level.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidProbability

Rational = Fraction

_RAT_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rational(value, *, what="value") -> Fraction:
    """Convert ``value`` to an exact Fraction, rejecting floats.

    Accepted: Fraction, int, ``(num, den)`` pair, and strings ``"num/den"``
    or ``"num"``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidProbability(f"{what} must be an exact rational, got bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidProbability(
            f"{what} must be an exact rational, got float {value!r}; "
            "pass a string 'num/den', an int, or a Fraction")
    if isinstance(value, tuple) and len(value) == 2:
        num, den = value
        if isinstance(num, int) and isinstance(den, int):
            return Fraction(num, den)
        raise InvalidProbability(f"{what} pair must contain ints, got {value!r}")
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if not m:
            raise InvalidProbability(f"{what} string {value!r} is not 'num/den'")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise InvalidProbability(f"{what} has zero denominator: {value!r}")
        return Fraction(num, den)
    raise InvalidProbability(f"{what} must be an exact rational, got {type(value).__name__}")


def rational_str(value: Fraction) -> str:
    """Render a Fraction as ``"num/den"`` (always with the denominator)."""
    return f"{value.numerator}/{value.denominator}"
