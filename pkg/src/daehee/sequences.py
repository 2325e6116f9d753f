"""Sequence families: Stirling triangles, Bernoulli/Daehee families and their degenerate versions.

Each family has a series path (coefficient extraction from its generating
function) and, where one exists, an independent closed form. Values are
always returned as :class:`BiPoly`, even when they are plain numbers.
Generators are memoized; they return fresh lists so callers may mutate them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence

from .polyring import LAM, ONE, X, ZERO, BiPoly, binomial_x, degenerate_falling_factorial
from .series import (
    Convention,
    TruncSeries,
    gf_binomial_pow_x,
    gf_degenerate_exp,
    gf_exp_minus_1,
    gf_exp_x,
    gf_log1p,
    gf_log_lambda,
    gf_polyexponential,
    series_compose,
)

Argument = Literal["number", "polynomial"]

# Degenerate Stirling recurrences are checked against their generating
# functions up to this index before any table is handed out.
GATE_N = 16


class StirlingKind(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"
    FIRST_DEGENERATE = "first_degenerate"
    SECOND_DEGENERATE = "second_degenerate"


@dataclass(frozen=True)
class StirlingTable:
    kind: StirlingKind
    nmax: int
    rows: tuple[tuple[BiPoly, ...], ...]

    def entry(self, n: int, l: int) -> BiPoly:
        if n > self.nmax:
            raise IndexError(f"row {n} beyond table nmax={self.nmax}")
        if l < 0 or l > n:
            return ZERO
        return self.rows[n][l]

    __call__ = entry

    def eval_lambda(self, v) -> StirlingTable:
        rows = tuple(tuple(e.eval_lambda(v) for e in row) for row in self.rows)
        return StirlingTable(self.kind, self.nmax, rows)

    def to_rows(self) -> list[dict]:
        return [
            {"n": n, "l": l, "value": e.to_text()}
            for n, row in enumerate(self.rows)
            for l, e in enumerate(row)
        ]


def _recurrence_table(kind: StirlingKind, nmax: int) -> StirlingTable:
    """Build the triangle from its three-term recurrence.

    first:             S(n+1,k) = S(n,k-1) - n S(n,k)
    second:            S(n+1,k) = S(n,k-1) + k S(n,k)
    first_degenerate:  S(n+1,k) = S(n,k-1) + (k lambda - n) S(n,k)
    second_degenerate: S(n+1,k) = S(n,k-1) + (k - n lambda) S(n,k)
    """
    weight = {
        StirlingKind.FIRST: lambda n, k: BiPoly.const(-n),
        StirlingKind.SECOND: lambda n, k: BiPoly.const(k),
        StirlingKind.FIRST_DEGENERATE: lambda n, k: LAM * k - n,
        StirlingKind.SECOND_DEGENERATE: lambda n, k: k - LAM * n,
    }[kind]
    rows = [(ONE,)]
    for n in range(nmax):
        prev = rows[-1]
        row = []
        for k in range(n + 2):
            below = prev[k - 1] if k >= 1 else ZERO
            same = prev[k] if k <= n else ZERO
            row.append(below + weight(n, k) * same)
        rows.append(tuple(row))
    return StirlingTable(kind, nmax, tuple(rows))


@lru_cache(maxsize=None)
def _gate(kind: StirlingKind) -> None:
    """Compare a degenerate recurrence against (1/k!) f(t)^k up to GATE_N.

    f is e_lambda(t) - 1 for the second kind, log_lambda(1+t) for the first.
    """
    if kind is StirlingKind.SECOND_DEGENERATE:
        f = gf_degenerate_exp(GATE_N, with_x=False).add_constant(-1)
    else:
        f = gf_log_lambda(GATE_N)
    table = _recurrence_table(kind, GATE_N)
    power = TruncSeries.one(GATE_N)
    for k in range(GATE_N + 1):
        terms = power.terms()
        for n in range(GATE_N + 1):
            expected = terms[n] / math.factorial(k)
            if table.entry(n, k) != expected:
                raise RuntimeError(
                    f"{kind.value} Stirling recurrence disagrees with its generating function at ({n}, {k})"
                )
        power = power * f


@lru_cache(maxsize=None)
def stirling_table(kind: StirlingKind | str, nmax: int) -> StirlingTable:
    kind = StirlingKind(kind)
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if kind in (StirlingKind.FIRST_DEGENERATE, StirlingKind.SECOND_DEGENERATE):
        _gate(kind)
    return _recurrence_table(kind, nmax)


def stirling_first(nmax: int) -> StirlingTable:
    return stirling_table(StirlingKind.FIRST, nmax)


def stirling_second(nmax: int) -> StirlingTable:
    return stirling_table(StirlingKind.SECOND, nmax)


def stirling_first_degenerate(nmax: int) -> StirlingTable:
    return stirling_table(StirlingKind.FIRST_DEGENERATE, nmax)


def stirling_second_degenerate(nmax: int) -> StirlingTable:
    return stirling_table(StirlingKind.SECOND_DEGENERATE, nmax)


# -- families ---------------------------------------------------------------


class Family(str, enum.Enum):
    BERNOULLI = "bernoulli"
    BERNOULLI_HIGHER = "bernoulli_higher"
    DAEHEE = "daehee"
    DAEHEE_HIGHER = "daehee_higher"
    DEGEN_BERNOULLI = "degen_bernoulli"
    DEGEN_BERNOULLI_HIGHER = "degen_bernoulli_higher"
    DEGEN_DAEHEE = "degen_daehee"
    DEGEN_DAEHEE_HIGHER = "degen_daehee_higher"
    MULTIPLE_DEGEN_DAEHEE = "multiple_degen_daehee"
    NORLUND_SECOND = "norlund_second"


@dataclass(frozen=True)
class SeqFamily:
    """A family plus its parameters.

    ``order`` is the power r (or alpha, k) for higher families and the index k
    for the multiple family. ``exponent`` is only used by the Norlund family:
    a rational or ``None`` for the symbolic exponent x.
    """

    family: Family
    order: int = 1
    argument: Argument = "polynomial"
    exponent: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.argument not in ("number", "polynomial"):
            raise ValueError(f"argument must be 'number' or 'polynomial', not {self.argument!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")

    @property
    def convention(self) -> Convention:
        if self.family is Family.NORLUND_SECOND:
            return Convention.ORDINARY
        return Convention.EXPONENTIAL

    @property
    def is_degenerate(self) -> bool:
        return self.family.value.startswith(("degen_", "multiple_"))


def _check_argument(argument: str) -> None:
    if argument not in ("number", "polynomial"):
        raise ValueError(f"argument must be 'number' or 'polynomial', not {argument!r}")


def _working_order(nmax: int, shift: int, order: int | None) -> int:
    """Raw truncation order for a generating function that gets divided by t^shift."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if order is None:
        return nmax + shift
    if order - shift < nmax:
        raise ValueError(f"series order {order} too small for nmax={nmax} after dividing by t^{shift}")
    return order


def _egf_prefix(s: TruncSeries, nmax: int) -> tuple[BiPoly, ...]:
    return tuple(s.terms()[: nmax + 1])


@lru_cache(maxsize=None)
def _bernoulli_kernel(n: int) -> TruncSeries:
    """t / (e^t - 1) to order n."""
    return gf_exp_minus_1(n + 1).shift_div(1).reciprocal()


@lru_cache(maxsize=None)
def _degen_bernoulli_kernel(n: int) -> TruncSeries:
    """t / (e_lambda(t) - 1) to order n."""
    return gf_degenerate_exp(n + 1, with_x=False).add_constant(-1).shift_div(1).reciprocal()


@lru_cache(maxsize=None)
def _daehee_kernel(n: int) -> TruncSeries:
    """log(1+t) / t to order n."""
    return gf_log1p(n + 1).shift_div(1)


@lru_cache(maxsize=None)
def _degen_daehee_kernel(n: int) -> TruncSeries:
    """log_lambda(1+t) / t to order n."""
    return gf_log_lambda(n + 1).shift_div(1)


@lru_cache(maxsize=None)
def _bernoulli_poly(alpha: int, nmax: int, argument: str, order: int) -> tuple[BiPoly, ...]:
    s = _bernoulli_kernel(order - 1) ** alpha
    if argument == "polynomial":
        s = s * gf_exp_x(order - 1)
    return _egf_prefix(s, nmax)


def bernoulli_poly(alpha: int, nmax: int, argument: Argument = "polynomial", order: int | None = None) -> list[BiPoly]:
    """B_n^(alpha)(x) from (t/(e^t - 1))^alpha e^(xt)."""
    _check_argument(argument)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    return list(_bernoulli_poly(alpha, nmax, argument, _working_order(nmax, 1, order)))


@lru_cache(maxsize=None)
def _degen_bernoulli(r: int, nmax: int, argument: str, order: int) -> tuple[BiPoly, ...]:
    s = _degen_bernoulli_kernel(order - 1) ** r
    if argument == "polynomial":
        s = s * gf_degenerate_exp(order - 1, with_x=True)
    return _egf_prefix(s, nmax)


def degen_bernoulli(r: int, nmax: int, argument: Argument = "polynomial", order: int | None = None) -> list[BiPoly]:
    """beta_{n,lambda}^(r)(x) from (t/(e_lambda(t) - 1))^r e_lambda^x(t)."""
    _check_argument(argument)
    if r < 1:
        raise ValueError("r must be >= 1")
    return list(_degen_bernoulli(r, nmax, argument, _working_order(nmax, 1, order)))


@lru_cache(maxsize=None)
def _daehee_poly(k: int, nmax: int, argument: str, order: int) -> tuple[BiPoly, ...]:
    s = _daehee_kernel(order - 1) ** k
    if argument == "polynomial":
        s = s * gf_binomial_pow_x(order - 1)
    return _egf_prefix(s, nmax)


def daehee_poly(k: int, nmax: int, argument: Argument = "polynomial", order: int | None = None) -> list[BiPoly]:
    """D_n^(k)(x) from (log(1+t)/t)^k (1+t)^x."""
    _check_argument(argument)
    if k < 1:
        raise ValueError("k must be >= 1")
    return list(_daehee_poly(k, nmax, argument, _working_order(nmax, 1, order)))


@lru_cache(maxsize=None)
def _degen_daehee_higher(r: int, nmax: int, argument: str, order: int) -> tuple[BiPoly, ...]:
    s = _degen_daehee_kernel(order - 1) ** r
    if argument == "polynomial":
        s = s * gf_binomial_pow_x(order - 1)
    return _egf_prefix(s, nmax)


def degen_daehee(nmax: int, argument: Argument = "polynomial", order: int | None = None) -> list[BiPoly]:
    """D_{n,lambda}(x) from (log_lambda(1+t)/t) (1+t)^x."""
    _check_argument(argument)
    return list(_degen_daehee_higher(1, nmax, argument, _working_order(nmax, 1, order)))


def higher_degen_daehee(r: int, nmax: int, argument: Argument = "polynomial", order: int | None = None) -> list[BiPoly]:
    """D_{n,lambda}^(r)(x) from (log_lambda(1+t)/t)^r (1+t)^x."""
    _check_argument(argument)
    if r < 1:
        raise ValueError("r must be >= 1")
    return list(_degen_daehee_higher(r, nmax, argument, _working_order(nmax, 1, order)))


@lru_cache(maxsize=None)
def _multiple_degen_daehee(k: int, nmax: int, order: int) -> tuple[BiPoly, ...]:
    inner = gf_log1p(order) * LAM
    composed = series_compose(gf_polyexponential(k, order), inner)
    # every coefficient of Ei_k(lambda L) carries at least one factor lambda
    s = composed.map(BiPoly.div_lambda).shift_div(1)
    return _egf_prefix(s, nmax)


def multiple_degen_daehee(k: int, nmax: int, order: int | None = None) -> list[BiPoly]:
    """hat D_{n,lambda}^(k) from Ei_k(lambda log(1+t)) / (lambda t)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return list(_multiple_degen_daehee(k, nmax, _working_order(nmax, 1, order)))


# -- closed forms -------------------------------------------------------------


def daehee_numbers_closed(nmax: int) -> list[BiPoly]:
    """D_n = (-1)^n n! / (n+1)."""
    return [BiPoly.const(Fraction((-1) ** n * math.factorial(n), n + 1)) for n in range(nmax + 1)]


@lru_cache(maxsize=None)
def _bernoulli_numbers_recurrence(nmax: int) -> tuple[Fraction, ...]:
    out: list[Fraction] = [Fraction(1)]
    for n in range(1, nmax + 1):
        s = sum(math.comb(n + 1, j) * out[j] for j in range(n))
        out.append(-s / (n + 1))
    return tuple(out)


def bernoulli_numbers_recurrence(nmax: int) -> list[Fraction]:
    """B_0..B_nmax from sum_{j<=n} binom(n+1, j) B_j = 0, so B_1 = -1/2."""
    return list(_bernoulli_numbers_recurrence(nmax))


def degen_daehee_closed(nmax: int, argument: Argument = "polynomial") -> list[BiPoly]:
    """D_{n,lambda}(x) = 1/(n+1) sum_m (m+1) (x)_{m,lambda} S_{1,lambda}(n+1, m+1)."""
    _check_argument(argument)
    s1 = stirling_first_degenerate(nmax + 1)
    out = []
    for n in range(nmax + 1):
        acc = ZERO
        for m in range(n + 1):
            ff = degenerate_falling_factorial(m)
            if argument == "number":
                ff = ff.eval_x(0)
            acc = acc + ff * s1(n + 1, m + 1) * (m + 1)
        out.append(acc / (n + 1))
    return out


def multiple_degen_daehee_closed(k: int, nmax: int) -> list[BiPoly]:
    """hat D_{n,lambda}^(k) = 1/(n+1) sum_{m=1}^{n+1} lambda^(m-1) m^(1-k) S_1(n+1, m)."""
    s1 = stirling_first(nmax + 1)
    out = []
    for n in range(nmax + 1):
        acc = ZERO
        for m in range(1, n + 2):
            acc = acc + BiPoly.monomial(Fraction(m) ** (1 - k), m - 1) * s1(n + 1, m)
        out.append(acc / (n + 1))
    return out


def higher_degen_daehee_closed(r: int, nmax: int) -> list[BiPoly]:
    """D_{n,lambda}^(r) = S_{1,lambda}(n+r, r) / binom(n+r, n)."""
    s1 = stirling_first_degenerate(nmax + r)
    return [s1(n + r, r) / math.comb(n + r, n) for n in range(nmax + 1)]


# -- Norlund numbers of the second kind -----------------------------------------


@lru_cache(maxsize=None)
def _norlund_integer(e: int, nmax: int) -> tuple[BiPoly, ...]:
    # log(1+t)/t has constant term 1, so any integer power is polynomial
    kernel = _daehee_kernel(nmax)
    s = kernel ** (-e)
    return tuple(s.coeffs)


@lru_cache(maxsize=None)
def _norlund_symbolic(nmax: int) -> tuple[BiPoly, ...]:
    """b_n^(x) as polynomials in x via Newton interpolation at x = 0..n.

    b_n^(x) has degree <= n in x. Values at x = 0..2n are computed by direct
    powering; the first n+1 fix the interpolant and the rest validate it.
    """
    npts = 2 * nmax + 1
    kernel = _daehee_kernel(nmax).reciprocal()
    powers = [TruncSeries.one(nmax)]
    for _ in range(npts - 1):
        powers.append(powers[-1] * kernel)
    out = []
    for n in range(nmax + 1):
        values = [powers[e][n].constant_value() for e in range(2 * n + 1)]
        diffs = values[: n + 1]
        newton = []
        for _ in range(n + 1):
            newton.append(diffs[0])
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        poly = ZERO
        for j, c in enumerate(newton):
            if c:
                poly = poly + binomial_x(j) * c
        for e, v in enumerate(values):
            if poly.eval_x(e) != v:
                raise RuntimeError(f"Norlund interpolant for n={n} fails validation at x={e}")
        out.append(poly)
    return tuple(out)


def norlund_second(exponent: int | Fraction | str | BiPoly | None, nmax: int) -> list[BiPoly]:
    """Ordinary coefficients b_n^(e) of (t/log(1+t))^e.

    ``exponent`` is an integer or rational, or the symbol ``"x"`` (also
    ``None`` or the polynomial ``X``) for the result as polynomials in x.
    """
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if exponent is None or (isinstance(exponent, str) and exponent == "x") or (
        isinstance(exponent, BiPoly) and exponent == X
    ):
        return list(_norlund_symbolic(nmax))
    if isinstance(exponent, BiPoly) and exponent.is_constant():
        exponent = exponent.constant_value()
    if isinstance(exponent, bool) or not isinstance(exponent, (int, Fraction)):
        raise ValueError(f"Norlund exponent must be rational or the symbol x, not {exponent!r}")
    e = Fraction(exponent)
    if e.denominator == 1:
        return list(_norlund_integer(e.numerator, nmax))
    return [p.eval_x(e) for p in _norlund_symbolic(nmax)]


# -- the printed Eq.-(6)-type right-hand side ---------------------------------


def eldesouky_mustafa_rhs(k: int, m: int) -> tuple[BiPoly, BiPoly]:
    """Both index readings of m! sum_{n=0}^m binom(z, m-n) b^(-k), with z as x.

    Reading (a) keeps b_m^(-k) fixed inside the sum, as printed.
    Reading (b) lets it vary as b_n^(-k).
    """
    b = norlund_second(-k, m)
    fact = math.factorial(m)
    binoms = [binomial_x(m - n) for n in range(m + 1)]
    reading_a = sum(binoms, ZERO) * b[m] * fact
    reading_b = sum((bz * b[n] for n, bz in enumerate(binoms)), ZERO) * fact
    return reading_a, reading_b


def clear_caches() -> None:
    """Drop every memoized table and family (for cold-start timing)."""
    for fn in (
        stirling_table, _bernoulli_kernel, _degen_bernoulli_kernel, _daehee_kernel, _degen_daehee_kernel,
        _bernoulli_poly, _degen_bernoulli, _daehee_poly, _degen_daehee_higher, _multiple_degen_daehee,
        _bernoulli_numbers_recurrence, _norlund_integer, _norlund_symbolic,
    ):
        fn.cache_clear()


# -- dispatcher -------------------------------------------------------------------


def generate(fam: SeqFamily, nmax: int, order: int | None = None) -> list[BiPoly]:
    """Series-path terms 0..nmax of a family."""
    f, r, arg = fam.family, fam.order, fam.argument
    if f is Family.BERNOULLI:
        return bernoulli_poly(1, nmax, arg, order)
    if f is Family.BERNOULLI_HIGHER:
        return bernoulli_poly(r, nmax, arg, order)
    if f is Family.DAEHEE:
        return daehee_poly(1, nmax, arg, order)
    if f is Family.DAEHEE_HIGHER:
        return daehee_poly(r, nmax, arg, order)
    if f is Family.DEGEN_BERNOULLI:
        return degen_bernoulli(1, nmax, arg, order)
    if f is Family.DEGEN_BERNOULLI_HIGHER:
        return degen_bernoulli(r, nmax, arg, order)
    if f is Family.DEGEN_DAEHEE:
        return degen_daehee(nmax, arg, order)
    if f is Family.DEGEN_DAEHEE_HIGHER:
        return higher_degen_daehee(r, nmax, arg, order)
    if f is Family.MULTIPLE_DEGEN_DAEHEE:
        return multiple_degen_daehee(r, nmax, order)
    if f is Family.NORLUND_SECOND:
        terms = norlund_second(fam.exponent, nmax)
        if arg == "number":
            terms = [p.eval_x(0) for p in terms]
        return terms
    raise ValueError(f"unknown family {f!r}")


def multiply_stirling(a: StirlingTable, b: StirlingTable, nmax: int) -> list[list[BiPoly]]:
    """Lower-triangular matrix product (A B)(n, m) = sum_l A(n, l) B(l, m)."""
    return [
        [sum((a(n, l) * b(l, m) for l in range(m, n + 1)), ZERO) for m in range(nmax + 1)]
        for n in range(nmax + 1)
    ]


def stirling_transform(values: Sequence[BiPoly], table: StirlingTable) -> list[BiPoly]:
    """out_n = sum_{m<=n} values_m * table(n, m)."""
    return [sum((values[m] * table(n, m) for m in range(n + 1)), ZERO) for n in range(len(values))]


__all__ = [
    "Argument",
    "Family",
    "SeqFamily",
    "StirlingKind",
    "StirlingTable",
    "bernoulli_numbers_recurrence",
    "bernoulli_poly",
    "clear_caches",
    "daehee_numbers_closed",
    "daehee_poly",
    "degen_bernoulli",
    "degen_daehee",
    "degen_daehee_closed",
    "eldesouky_mustafa_rhs",
    "generate",
    "higher_degen_daehee",
    "higher_degen_daehee_closed",
    "multiple_degen_daehee",
    "multiple_degen_daehee_closed",
    "multiply_stirling",
    "norlund_second",
    "stirling_first",
    "stirling_first_degenerate",
    "stirling_second",
    "stirling_second_degenerate",
    "stirling_table",
    "stirling_transform",
]
