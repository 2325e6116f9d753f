"""Exact generating-function engine for degenerate Daehee, Bernoulli and Stirling families.

Everything is computed in exact arithmetic: rationals, the polynomial ring
Q[lambda, x], and truncated power series in t over that ring.
"""

from .exactnum import Rational, format_rational, parse_rational
from .polyring import BiPoly, LAM, ONE, X, ZERO
from .series import TruncSeries

__all__ = [
    "BiPoly",
    "LAM",
    "ONE",
    "Rational",
    "TruncSeries",
    "X",
    "ZERO",
    "format_rational",
    "parse_rational",
]

__version__ = "0.1.0"
