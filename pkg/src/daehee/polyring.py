"""Dense bivariate polynomials over Q in the variables lambda and x.

Storage is x-major: row ``j`` holds the coefficient of ``x**j`` as a dense
list indexed by the power of lambda. All numerators share one positive
denominator, so arithmetic runs on Python ints and the value is reduced once
per operation. Canonical form: rows and the row list carry no trailing zeros,
``gcd(all numerators, den) == 1``, and zero is the empty row list over 1.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import format_rational, parse_rational

Scalar = int | Fraction

LAMBDA_SYMBOL = "λ"


def _trim(row: list[int]) -> tuple[int, ...]:
    end = len(row)
    while end and row[end - 1] == 0:
        end -= 1
    return tuple(row[:end])


class BiPoly:
    """Immutable element of Q[lambda, x]."""

    __slots__ = ("_rows", "_den", "_hash")

    def __init__(self, coeffs: Iterable[Iterable[Scalar]] = ()):
        rows = [[Fraction(c) for c in row] for row in coeffs]
        den = 1
        for row in rows:
            for c in row:
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [[c.numerator * (den // c.denominator) for c in row] for row in rows]
        self._set(ints, den)

    def _set(self, rows: list[list[int]], den: int) -> None:
        trimmed = [_trim(r) for r in rows]
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        if not trimmed:
            self._rows: tuple[tuple[int, ...], ...] = ()
            self._den = 1
        else:
            g = den
            for r in trimmed:
                for c in r:
                    if c:
                        g = math.gcd(g, c)
                        if g == 1:
                            break
                if g == 1:
                    break
            if g != 1:
                trimmed = [tuple(c // g for c in r) for r in trimmed]
                den //= g
            self._rows = tuple(trimmed)
            self._den = den
        self._hash: int | None = None

    @classmethod
    def _raw(cls, rows: list[list[int]], den: int) -> BiPoly:
        obj = cls.__new__(cls)
        obj._set(rows, den)
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> BiPoly:
        c = Fraction(c)
        return cls._raw([[c.numerator]], c.denominator)

    @classmethod
    def monomial(cls, c: Scalar, lam_deg: int = 0, x_deg: int = 0) -> BiPoly:
        c = Fraction(c)
        rows = [[] for _ in range(x_deg)] + [[0] * lam_deg + [c.numerator]]
        return cls._raw(rows, c.denominator)

    @classmethod
    def coerce(cls, value: BiPoly | Scalar) -> BiPoly:
        if isinstance(value, BiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to BiPoly")

    # -- structure ------------------------------------------------------

    @property
    def coeffs(self) -> tuple[tuple[Fraction, ...], ...]:
        """Nested ``Fraction`` coefficients, ``coeffs[j][i]`` of ``lambda**i * x**j``."""
        d = self._den
        return tuple(tuple(Fraction(c, d) for c in row) for row in self._rows)

    def coefficient(self, lam_deg: int, x_deg: int) -> Fraction:
        if x_deg < len(self._rows) and lam_deg < len(self._rows[x_deg]):
            return Fraction(self._rows[x_deg][lam_deg], self._den)
        return Fraction(0)

    @property
    def deg_x(self) -> int:
        """Degree in x; -1 for the zero polynomial."""
        return len(self._rows) - 1

    @property
    def deg_lambda(self) -> int:
        """Degree in lambda; -1 for the zero polynomial."""
        return max((len(r) for r in self._rows), default=0) - 1

    def is_zero(self) -> bool:
        return not self._rows

    def is_constant(self) -> bool:
        return len(self._rows) <= 1 and all(len(r) <= 1 for r in self._rows)

    def constant_value(self) -> Fraction:
        """The rational value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coefficient(0, 0)

    def terms(self) -> Iterable[tuple[int, int, Fraction]]:
        """Yield ``(lam_deg, x_deg, coeff)`` for nonzero terms, ordered by (x_deg, lam_deg)."""
        for j, row in enumerate(self._rows):
            for i, c in enumerate(row):
                if c:
                    yield i, j, Fraction(c, self._den)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: BiPoly | Scalar) -> BiPoly:
        try:
            other = BiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._rows:
            return self
        if not self._rows:
            return other
        d1, d2 = self._den, other._den
        den = d1 * d2 // math.gcd(d1, d2)
        s1, s2 = den // d1, den // d2
        n = max(len(self._rows), len(other._rows))
        rows = []
        for j in range(n):
            a = self._rows[j] if j < len(self._rows) else ()
            b = other._rows[j] if j < len(other._rows) else ()
            m = max(len(a), len(b))
            row = [0] * m
            for i, c in enumerate(a):
                row[i] = c * s1
            for i, c in enumerate(b):
                row[i] += c * s2
            rows.append(row)
        return BiPoly._raw(rows, den)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        obj = BiPoly.__new__(BiPoly)
        obj._rows = tuple(tuple(-c for c in r) for r in self._rows)
        obj._den = self._den
        obj._hash = None
        return obj

    def __sub__(self, other: BiPoly | Scalar) -> BiPoly:
        try:
            other = BiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> BiPoly:
        return BiPoly.coerce(other) - self

    def __mul__(self, other: BiPoly | Scalar) -> BiPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self._rows or not other._rows:
            return ZERO
        out: list[list[int]] = [[] for _ in range(len(self._rows) + len(other._rows) - 1)]
        for j1, a in enumerate(self._rows):
            if not a:
                continue
            for j2, b in enumerate(other._rows):
                if not b:
                    continue
                target = out[j1 + j2]
                need = len(a) + len(b) - 1
                if len(target) < need:
                    target.extend([0] * (need - len(target)))
                for i1, ca in enumerate(a):
                    if ca:
                        for i2, cb in enumerate(b):
                            target[i1 + i2] += ca * cb
        return BiPoly._raw(out, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> BiPoly:
        c = Fraction(c)
        if c == 0 or not self._rows:
            return ZERO
        rows = [[v * c.numerator for v in r] for r in self._rows]
        return BiPoly._raw(rows, self._den * c.denominator)

    def __truediv__(self, c: Scalar) -> BiPoly:
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("BiPoly division by zero")
        return self.scale(1 / Fraction(c))

    def __pow__(self, e: int) -> BiPoly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("BiPoly exponent must be a nonnegative int")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def div_lambda(self) -> BiPoly:
        """Exact division by lambda; raises if any term is lambda-free."""
        if any(r and r[0] for r in self._rows):
            raise ValueError(f"{self} is not divisible by λ")
        return BiPoly._raw([list(r[1:]) for r in self._rows], self._den)

    # -- specialization -------------------------------------------------

    def eval_lambda(self, v: Scalar) -> BiPoly:
        """Substitute lambda := v."""
        v = Fraction(v)
        rows = []
        for r in self._rows:
            acc = Fraction(0)
            for c in reversed(r):
                acc = acc * v + c
            rows.append([acc / self._den])
        return BiPoly(rows)

    def eval_x(self, v: Scalar) -> BiPoly:
        """Substitute x := v."""
        v = Fraction(v)
        width = self.deg_lambda + 1
        acc = [Fraction(0)] * width
        for r in reversed(self._rows):
            acc = [a * v for a in acc]
            for i, c in enumerate(r):
                acc[i] += c
        return BiPoly([[a / self._den for a in acc]])

    # -- protocol -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._den == other._den and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rows, self._den))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Canonical text, terms ordered by (x degree, lambda degree).

        A term reads ``c*λ^i*x^j``; unit coefficients and zero/one exponents
        are elided, e.g. ``-1/2 + 1/2*λ + x^2``.
        """
        parts: list[str] = []
        for i, j, c in self.terms():
            factors = []
            if i:
                factors.append(LAMBDA_SYMBOL if i == 1 else f"{LAMBDA_SYMBOL}^{i}")
            if j:
                factors.append("x" if j == 1 else f"x^{j}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, format_rational(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(parts) if parts else "0"

    @classmethod
    def from_text(cls, text: str) -> BiPoly:
        """Parse the output of :meth:`to_text` (whitespace-insensitive).

        ``lambda`` and ``l`` are accepted as spellings of the lambda symbol.
        """
        s = re.sub(r"\s+", "", text)
        if not s:
            raise ValueError("empty polynomial text")
        if s == "0":
            return ZERO
        acc: dict[tuple[int, int], Fraction] = {}
        pos = 0
        for m in _TERM_RE.finditer(s):
            if m.start() != pos:
                break
            pos = m.end()
            sign, body = m.groups()
            coeff = Fraction(-1 if sign == "-" else 1)
            i = j = 0
            for factor in body.split("*"):
                fm = _FACTOR_RE.fullmatch(factor)
                if fm is None:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                num, var, exp = fm.groups()
                if num is not None:
                    coeff *= parse_rational(num)
                else:
                    e = int(exp) if exp else 1
                    if var == "x":
                        j += e
                    else:
                        i += e
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + coeff
        if pos != len(s):
            raise ValueError(f"cannot parse polynomial {text!r}")
        result = ZERO
        for (i, j), c in acc.items():
            result = result + cls.monomial(c, i, j)
        return result


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"(\d+(?:/\d+)?)|(x|λ|lambda|l)(?:\^(\d+))?")

ZERO = BiPoly()
ONE = BiPoly.const(1)
LAM = BiPoly.monomial(1, 1, 0)
X = BiPoly.monomial(1, 0, 1)


def poly_add(p: BiPoly, q: BiPoly) -> BiPoly:
    return p + q


def poly_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return p * q


def poly_eval_lambda(p: BiPoly, v: Scalar) -> BiPoly:
    return p.eval_lambda(v)


def poly_eval_x(p: BiPoly, v: Scalar) -> BiPoly:
    return p.eval_x(v)


def falling_factorial(n: int) -> BiPoly:
    """(x)_n = x(x-1)...(x-n+1), with (x)_0 = 1."""
    result = ONE
    for i in range(n):
        result = result * (X - i)
    return result


def degenerate_falling_factorial(n: int) -> BiPoly:
    """(x)_{n,lambda} = x(x-lambda)...(x-(n-1)lambda), with (x)_{0,lambda} = 1."""
    result = ONE
    for i in range(n):
        result = result * (X - LAM * i)
    return result


def binomial_x(n: int) -> BiPoly:
    """The polynomial binom(x, n) = (x)_n / n!."""
    return falling_factorial(n) / math.factorial(n)


def lambda_poly(coeffs: Sequence[Scalar]) -> BiPoly:
    """Polynomial in lambda alone from its coefficient list."""
    return BiPoly([coeffs])
