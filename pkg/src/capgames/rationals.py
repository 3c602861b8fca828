"""Strict parsing and rendering of exact rationals.

Only integer literals and p/q fractions are accepted; decimal notation is
rejected on purpose so no value ever passes through binary floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer literal into a Fraction.

    Raises ValueError for anything else, including decimals like "0.5".
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal (use p/q or an integer): {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(x: Fraction, decimal: bool = False) -> str:
    """Render a Fraction as "p/q" (bare integer when q == 1), or decimal on request."""
    if decimal:
        return repr(float(x))
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to Fraction; refuse floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")
