"""Exact rational scalars.

``Rational`` is :class:`fractions.Fraction`: unbounded integers, sign kept in
the numerator, always reduced. This module only adds the strict ``p/q`` text
codec used in JSON/CSV output and on the command line.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"(-?)(\d+)(?:/(\d+))?")


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    """Exact quotient; raises :class:`ZeroDivisionError` when ``b == 0``."""
    if b == 0:
        raise ZeroDivisionError("rational division by zero")
    return Fraction(a) / Fraction(b)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"``, ``"-p"``, ``"p/q"`` or ``"-p/q"``.

    Anything else (decimals, exponents, embedded spaces, a zero denominator)
    is rejected with :class:`ValueError`.
    """
    m = _RATIONAL_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    q = int(den) if den is not None else 1
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), q)
    return -value if sign else value


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
