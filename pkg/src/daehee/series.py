"""Truncated power series in t with coefficients in Q[lambda, x].

A :class:`TruncSeries` of order N stores the coefficients of t^0..t^N and
nothing else; every operation is exact modulo t^(N+1).
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import LAM, ONE, X, ZERO, BiPoly, Scalar, degenerate_falling_factorial, falling_factorial

DEFAULT_ORDER = 16


class SeriesError(ValueError):
    pass


class OrderMismatchError(SeriesError):
    pass


class NonUnitConstantTermError(SeriesError):
    pass


class NonzeroConstantTermError(SeriesError):
    pass


class NonzeroLowCoefficientError(SeriesError):
    pass


class Convention(str, enum.Enum):
    """How the t^n coefficient maps to the n-th sequence term."""

    EXPONENTIAL = "exponential"  # a_n = n! * coeff[n]
    ORDINARY = "ordinary"  # a_n = coeff[n]

    def term(self, coeff: BiPoly, n: int) -> BiPoly:
        if self is Convention.EXPONENTIAL:
            return coeff * math.factorial(n)
        return coeff

    def coeff(self, term: BiPoly, n: int) -> BiPoly:
        if self is Convention.EXPONENTIAL:
            return term / math.factorial(n)
        return term


class TruncSeries:
    """Immutable truncated series sum(coeff[n] * t^n, n = 0..order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[BiPoly | Scalar], order: int | None = None):
        cs = [BiPoly.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise SeriesError("series order must be nonnegative")
        cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs: tuple[BiPoly, ...] = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> TruncSeries:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls([ONE], order)

    @classmethod
    def t(cls, order: int) -> TruncSeries:
        """The series variable itself."""
        return cls([ZERO, ONE], order)

    def __getitem__(self, n: int) -> BiPoly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        shown = ", ".join(c.to_text() for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"TruncSeries(order={self.order}, [{shown}{more}])"

    def __add__(self, other: TruncSeries) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return series_add(self, other)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return series_add(self, other.scale(-1))

    def __neg__(self) -> TruncSeries:
        return self.scale(-1)

    def __mul__(self, other: TruncSeries | BiPoly | Scalar) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        if isinstance(other, (BiPoly, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncSeries:
        return series_pow(self, e)

    def scale(self, c: BiPoly | Scalar) -> TruncSeries:
        return TruncSeries([a * c for a in self.coeffs], self.order)

    def add_constant(self, c: BiPoly | Scalar) -> TruncSeries:
        cs = list(self.coeffs)
        cs[0] = cs[0] + c
        return TruncSeries(cs, self.order)

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} series to {order}")
        return TruncSeries(self.coeffs, order)

    def map(self, fn) -> TruncSeries:
        return TruncSeries([fn(c) for c in self.coeffs], self.order)

    def eval_lambda(self, v: Scalar) -> TruncSeries:
        return self.map(lambda c: c.eval_lambda(v))

    def eval_x(self, v: Scalar) -> TruncSeries:
        return self.map(lambda c: c.eval_x(v))

    def reciprocal(self) -> TruncSeries:
        return series_reciprocal(self)

    def compose(self, inner: TruncSeries) -> TruncSeries:
        return series_compose(self, inner)

    def shift_div(self, k: int) -> TruncSeries:
        return series_shift_div(self, k)

    def terms(self, convention: Convention = Convention.EXPONENTIAL) -> list[BiPoly]:
        """Sequence terms a_0..a_N under the given convention."""
        return [convention.term(c, n) for n, c in enumerate(self.coeffs)]

    def to_json(self, convention: Convention = Convention.EXPONENTIAL) -> dict:
        return {
            "order": self.order,
            "convention": Convention(convention).value,
            "coeffs": [c.to_text() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> TruncSeries:
        return cls([BiPoly.from_text(s) for s in data["coeffs"]], data["order"])


def _check_orders(a: TruncSeries, b: TruncSeries) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"series orders differ: {a.order} vs {b.order}")


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    _check_orders(a, b)
    return TruncSeries([p + q for p, q in zip(a.coeffs, b.coeffs)], a.order)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product, truncated at the common order."""
    _check_orders(a, b)
    n = a.order
    # skip zero coefficients on both sides; shifted kernels are often sparse
    nz_a = [(i, c) for i, c in enumerate(a.coeffs) if not c.is_zero()]
    nz_b = [(j, c) for j, c in enumerate(b.coeffs) if not c.is_zero()]
    out = [ZERO] * (n + 1)
    for i, ca in nz_a:
        for j, cb in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + ca * cb
    return TruncSeries(out, n)


def series_pow(a: TruncSeries, e: int) -> TruncSeries:
    if e < 0:
        return series_pow(series_reciprocal(a), -e)
    result = TruncSeries.one(a.order)
    for _ in range(e):
        result = series_mul(result, a)
    return result


def series_reciprocal(a: TruncSeries) -> TruncSeries:
    """1/a for a series whose constant term is a nonzero rational."""
    c0 = a.coeffs[0]
    if not c0.is_constant() or c0.is_zero():
        raise NonUnitConstantTermError(f"constant term {c0} is not a nonzero rational")
    inv = 1 / c0.constant_value()
    out = [BiPoly.const(inv)]
    for n in range(1, a.order + 1):
        acc = ZERO
        for j in range(1, n + 1):
            if not a.coeffs[j].is_zero():
                acc = acc + a.coeffs[j] * out[n - j]
        out.append(acc.scale(-inv))
    return TruncSeries(out, a.order)


def series_compose(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """a(b(t)) by Horner's rule; b must have zero constant term."""
    _check_orders(a, b)
    if not b.coeffs[0].is_zero():
        raise NonzeroConstantTermError(f"inner series has constant term {b.coeffs[0]}")
    result = TruncSeries([a.coeffs[-1]], a.order)
    for c in reversed(a.coeffs[:-1]):
        result = series_mul(result, b).add_constant(c)
    return result


def series_shift_div(a: TruncSeries, k: int) -> TruncSeries:
    """Divide by t^k; the result has order ``a.order - k``."""
    if k < 1:
        raise SeriesError("shift must be a positive integer")
    if k > a.order:
        raise SeriesError(f"cannot divide an order {a.order} series by t^{k}")
    if any(not c.is_zero() for c in a.coeffs[:k]):
        raise NonzeroLowCoefficientError(f"coefficients below t^{k} are not all zero")
    return TruncSeries(a.coeffs[k:], a.order - k)


# -- named generating functions -------------------------------------------


def gf_log1p(order: int = DEFAULT_ORDER) -> TruncSeries:
    """log(1+t)."""
    return TruncSeries([0] + [Fraction((-1) ** (n - 1), n) for n in range(1, order + 1)], order)


def gf_exp_minus_1(order: int = DEFAULT_ORDER) -> TruncSeries:
    """e^t - 1."""
    return TruncSeries([0] + [Fraction(1, math.factorial(n)) for n in range(1, order + 1)], order)


def gf_exp_x(order: int = DEFAULT_ORDER) -> TruncSeries:
    """e^(x t), coefficients x^n / n!."""
    return TruncSeries([X**n / math.factorial(n) for n in range(order + 1)], order)


def gf_degenerate_exp(order: int = DEFAULT_ORDER, with_x: bool = True) -> TruncSeries:
    """e_lambda^x(t) = (1 + lambda t)^(x/lambda), or e_lambda(t) when ``with_x`` is false."""
    coeffs = []
    for n in range(order + 1):
        ff = degenerate_falling_factorial(n)
        if not with_x:
            ff = ff.eval_x(1)
        coeffs.append(ff / math.factorial(n))
    return TruncSeries(coeffs, order)


def gf_log_lambda(order: int = DEFAULT_ORDER) -> TruncSeries:
    """log_lambda(1+t) = ((1+t)^lambda - 1)/lambda.

    The t^n coefficient is (lambda-1)(lambda-2)...(lambda-n+1)/n!.
    """
    coeffs = [ZERO]
    p = ONE
    for n in range(1, order + 1):
        if n > 1:
            p = p * (LAM - (n - 1))
        coeffs.append(p / math.factorial(n))
    return TruncSeries(coeffs, order)


def gf_binomial_pow_x(order: int = DEFAULT_ORDER) -> TruncSeries:
    """(1+t)^x, coefficients (x)_n / n!."""
    return TruncSeries([falling_factorial(n) / math.factorial(n) for n in range(order + 1)], order)


def gf_polyexponential(k: int, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Ei_k(t) = sum_{n>=1} t^n / ((n-1)! n^k), for any integer k."""
    coeffs: list[Scalar] = [0]
    for n in range(1, order + 1):
        coeffs.append(Fraction(1, math.factorial(n - 1)) / Fraction(n) ** k)
    return TruncSeries(coeffs, order)


def cube_moment(r: int, m: int) -> Fraction:
    """Integral of (x_1 + ... + x_r)^m over the unit r-cube.

    Expanding multinomially and integrating monomials gives
    sum over l_1+...+l_r = m of multinomial(m; l) / prod(l_i + 1), which is
    m! times the t^m coefficient of ((e^t - 1)/t)^r.
    """
    if r < 1 or m < 0:
        raise ValueError("cube_moment needs r >= 1 and m >= 0")
    base = [Fraction(1, math.factorial(l + 1)) for l in range(m + 1)]
    acc = base
    for _ in range(r - 1):
        acc = [sum(acc[i] * base[n - i] for i in range(n + 1)) for n in range(m + 1)]
    return acc[m] * math.factorial(m)


def compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All ordered tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multinomial(ks: Sequence[int]) -> int:
    return math.factorial(sum(ks)) // math.prod(math.factorial(k) for k in ks)


def series_from_terms(terms: Sequence[BiPoly | Scalar], convention: Convention = Convention.EXPONENTIAL) -> TruncSeries:
    """Inverse of :meth:`TruncSeries.terms`."""
    conv = Convention(convention)
    return TruncSeries([conv.coeff(BiPoly.coerce(a), n) for n, a in enumerate(terms)])


__all__ = [
    "Convention",
    "DEFAULT_ORDER",
    "NonUnitConstantTermError",
    "NonzeroConstantTermError",
    "NonzeroLowCoefficientError",
    "OrderMismatchError",
    "SeriesError",
    "TruncSeries",
    "compositions",
    "cube_moment",
    "gf_binomial_pow_x",
    "gf_degenerate_exp",
    "gf_exp_minus_1",
    "gf_exp_x",
    "gf_log1p",
    "gf_log_lambda",
    "gf_polyexponential",
    "multinomial",
    "series_add",
    "series_compose",
    "series_from_terms",
    "series_mul",
    "series_pow",
    "series_reciprocal",
    "series_shift_div",
]
