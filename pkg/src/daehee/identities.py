"""Exact verification of the degenerate Daehee identities over finite parameter grids.

Each check puts a series-path value next to a closed-form or transformed
value and compares the two as canonical :class:`BiPoly` objects. Failures
are returned as data, never raised. Where a printed statement admits more
than one reading, every reading is evaluated and the report names the one
that holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import sequences as seq
from .polyring import LAM, ONE, ZERO, BiPoly
from .series import compositions, cube_moment, multinomial

PASS = "pass"
FAIL = "fail"
VARIANT_MATCHED = "variant_matched"


@dataclass
class CheckReport:
    identity_id: str
    status: str
    params: dict
    first_failure: dict | None = None
    variant: str | None = None
    note: str | None = None
    cases: int = 0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        out: dict = {"id": self.identity_id, "status": self.status, "params": self.params}
        if self.variant is not None:
            out["variant"] = self.variant
        if self.note is not None:
            out["note"] = self.note
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        out["cases"] = self.cases
        return out


class _Tally:
    """Collects comparisons; remembers the first mismatch."""

    def __init__(self):
        self.cases = 0
        self.first_failure: dict | None = None

    def compare(self, params: dict, lhs: BiPoly, rhs: BiPoly) -> bool:
        self.cases += 1
        if lhs == rhs:
            return True
        if self.first_failure is None:
            self.first_failure = {"params": dict(params), "lhs": lhs.to_text(), "rhs": rhs.to_text()}
        return False

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def report(self, identity_id: str, params: dict, note: str | None = None) -> CheckReport:
        return CheckReport(
            identity_id,
            PASS if self.passed else FAIL,
            params,
            first_failure=self.first_failure,
            note=note,
            cases=self.cases,
        )


def _grid(**ranges: tuple[int, int]) -> dict:
    return {k: list(v) for k, v in ranges.items()}


def _sum(values: Iterable[BiPoly]) -> BiPoly:
    return sum(values, ZERO)


def theorem1_rhs(nmax: int) -> list[BiPoly]:
    """1/(n+1) sum_{m=1}^{n+1} lambda^(m-1) S_1(n+1, m)."""
    s1 = seq.stirling_first(nmax + 1)
    return [
        _sum(LAM ** (m - 1) * s1(n + 1, m) for m in range(1, n + 2)) / (n + 1)
        for n in range(nmax + 1)
    ]


def check_T1(nmax: int = 12) -> CheckReport:
    tally = _Tally()
    lhs = seq.degen_daehee(nmax, "number")
    rhs = theorem1_rhs(nmax)
    for n in range(nmax + 1):
        tally.compare({"n": n}, lhs[n], rhs[n])
    return tally.report("T1", _grid(n=(0, nmax)))


def check_T2(nmax: int = 12) -> CheckReport:
    """beta_{n,lambda}(x) = sum_m D_{m,lambda}(x) S_{2,lambda}(n, m)."""
    tally = _Tally()
    beta = seq.degen_bernoulli(1, nmax, "polynomial")
    d = seq.degen_daehee(nmax, "polynomial")
    rhs = seq.stirling_transform(d, seq.stirling_second_degenerate(nmax))
    for n in range(nmax + 1):
        tally.compare({"n": n}, beta[n], rhs[n])
    note = (
        "generating function of beta_{n,lambda}(x) taken with t^n/n! normalization; "
        "the printed t^n/n in the second form of that expansion is a typo"
    )
    return tally.report("T2", _grid(n=(0, nmax)), note=note)


def check_T3(nmax: int = 12) -> CheckReport:
    """D_{n,lambda}(x) = sum_m beta_{m,lambda}(x) S_{1,lambda}(n, m), plus the T2 -> T3 round trip."""
    tally = _Tally()
    beta = seq.degen_bernoulli(1, nmax, "polynomial")
    d = seq.degen_daehee(nmax, "polynomial")
    s1 = seq.stirling_first_degenerate(nmax)
    s2 = seq.stirling_second_degenerate(nmax)
    rhs = seq.stirling_transform(beta, s1)
    for n in range(nmax + 1):
        tally.compare({"n": n}, d[n], rhs[n])
    round_trip = seq.stirling_transform(seq.stirling_transform(d, s2), s1)
    for n in range(nmax + 1):
        tally.compare({"n": n, "round_trip": True}, d[n], round_trip[n])
    return tally.report("T3", _grid(n=(0, nmax)))


def check_C2(nmax: int = 12) -> CheckReport:
    """Classical lambda -> 0 corollaries.

    B_n(x) = sum D_m(x) S_2(n, m) and D_n(x) = sum B_m(x) S_1(n, m); plus the
    lambda = 0 specializations of the degenerate families and of the T1/T4
    closed forms against the classical series.
    """
    tally = _Tally()
    b = seq.bernoulli_poly(1, nmax, "polynomial")
    d = seq.daehee_poly(1, nmax, "polynomial")
    s1 = seq.stirling_first(nmax)
    s2 = seq.stirling_second(nmax)
    via_d = seq.stirling_transform(d, s2)
    via_b = seq.stirling_transform(b, s1)
    beta0 = [p.eval_lambda(0) for p in seq.degen_bernoulli(1, nmax, "polynomial")]
    dl0 = [p.eval_lambda(0) for p in seq.degen_daehee(nmax, "polynomial")]
    t1_0 = [p.eval_lambda(0) for p in theorem1_rhs(nmax)]
    t4_0 = [p.eval_lambda(0) for p in seq.degen_daehee_closed(nmax, "polynomial")]
    for n in range(nmax + 1):
        tally.compare({"n": n, "form": "B=sum D S2"}, b[n], via_d[n])
        tally.compare({"n": n, "form": "D=sum B S1"}, d[n], via_b[n])
        tally.compare({"n": n, "form": "beta|lambda=0"}, beta0[n], b[n])
        tally.compare({"n": n, "form": "D_lambda|lambda=0"}, dl0[n], d[n])
        tally.compare({"n": n, "form": "T1|lambda=0"}, t1_0[n], d[n].eval_x(0))
        tally.compare({"n": n, "form": "T4|lambda=0"}, t4_0[n], d[n])
    return tally.report("C2'", _grid(n=(0, nmax)))


def check_T4(nmax: int = 12) -> CheckReport:
    """Theorem 4 closed form, and its x = 0 reduction against the Theorem 1 closed form."""
    tally = _Tally()
    d = seq.degen_daehee(nmax, "polynomial")
    closed = seq.degen_daehee_closed(nmax, "polynomial")
    closed0 = seq.degen_daehee_closed(nmax, "number")
    t1 = theorem1_rhs(nmax)
    for n in range(nmax + 1):
        tally.compare({"n": n}, d[n], closed[n])
        tally.compare({"n": n, "x": 0}, closed0[n], t1[n])
    return tally.report("T4", _grid(n=(0, nmax)))


def check_T5(kmax: int = 4, nmax: int = 12) -> CheckReport:
    tally = _Tally()
    t1 = theorem1_rhs(nmax)
    d = seq.degen_daehee(nmax, "number")
    for k in range(1, kmax + 1):
        series = seq.multiple_degen_daehee(k, nmax)
        closed = seq.multiple_degen_daehee_closed(k, nmax)
        for n in range(nmax + 1):
            tally.compare({"k": k, "n": n}, series[n], closed[n])
            if k == 1:
                tally.compare({"k": 1, "n": n, "form": "closed form = T1 closed form"}, closed[n], t1[n])
                tally.compare({"k": 1, "n": n, "form": "hat D^(1) = D_lambda"}, series[n], d[n])
    return tally.report("T5", _grid(k=(1, kmax), n=(0, nmax)))


def check_T6(kmax: int = 4, nmax: int = 12) -> CheckReport:
    """sum_m hatD^(k)_m S_2(n, m) = sum_l binom(n, l) lambda^(n-l) B_l / (n-l+1)^k."""
    tally = _Tally()
    s2 = seq.stirling_second(nmax)
    bern = seq.bernoulli_numbers_recurrence(nmax)
    for k in range(1, kmax + 1):
        lhs = seq.stirling_transform(seq.multiple_degen_daehee(k, nmax), s2)
        for n in range(nmax + 1):
            rhs = _sum(
                BiPoly.monomial(math.comb(n, l) * bern[l] / Fraction(n - l + 1) ** k, n - l)
                for l in range(n + 1)
            )
            tally.compare({"k": k, "n": n}, lhs[n], rhs)
    return tally.report("T6", _grid(k=(1, kmax), n=(0, nmax)))


def theorem7_sum(dhat: Sequence[BiPoly], s2: seq.StirlingTable, n: int, upper: int) -> BiPoly:
    """1/(n+1) sum_{m=1}^{upper} m hatD_{m-1} S_2(n+1, m)."""
    return _sum(dhat[m - 1] * s2(n + 1, m) * m for m in range(1, upper + 1)) / (n + 1)


def check_T7(kmax: int = 4, nmax: int = 10) -> CheckReport:
    """Compare the printed range m = 1..n with the derivation's m = 1..n+1."""
    s2 = seq.stirling_second(nmax + 1)
    readings = {"m=1..n (as printed)": lambda n: n, "m=1..n+1 (from the derivation)": lambda n: n + 1}
    tallies = {name: _Tally() for name in readings}
    for k in range(1, kmax + 1):
        dhat = seq.multiple_degen_daehee(k, nmax)
        for n in range(nmax + 1):
            target = BiPoly.monomial(Fraction(1, (n + 1) ** k), n)
            for name, upper in readings.items():
                tallies[name].compare({"k": k, "n": n}, target, theorem7_sum(dhat, s2, n, upper(n)))
    params = _grid(k=(1, kmax), n=(0, nmax))
    matched = [name for name, t in tallies.items() if t.passed]
    failed = {name: t.first_failure for name, t in tallies.items() if not t.passed}
    cases = sum(t.cases for t in tallies.values())
    if len(matched) == 1:
        note = "; ".join(f"{name} fails first at {ff['params']}" for name, ff in failed.items()) or None
        return CheckReport("T7", VARIANT_MATCHED, params, variant=matched[0], note=note, cases=cases)
    if matched:
        return CheckReport("T7", PASS, params, note="both summation ranges agree on this grid", cases=cases)
    first = next(iter(failed.values()))
    return CheckReport("T7", FAIL, params, first_failure=first, cases=cases)


def check_T8(rmax: int = 4, nmax: int = 10) -> CheckReport:
    tally = _Tally()
    for r in range(1, rmax + 1):
        series = seq.higher_degen_daehee(r, nmax, "number")
        closed = seq.higher_degen_daehee_closed(r, nmax)
        for n in range(nmax + 1):
            tally.compare({"r": r, "n": n}, series[n], closed[n])
    return tally.report("T8", _grid(r=(1, rmax), n=(0, nmax)))


def check_T9(rmax: int = 4, nmax: int = 12) -> CheckReport:
    """beta^(r)_{n,lambda}(x) = sum_k D^(r)_{k,lambda}(x) S_{2,lambda}(n, k)."""
    tally = _Tally()
    s2 = seq.stirling_second_degenerate(nmax)
    for r in range(1, rmax + 1):
        beta = seq.degen_bernoulli(r, nmax, "polynomial")
        rhs = seq.stirling_transform(seq.higher_degen_daehee(r, nmax, "polynomial"), s2)
        for n in range(nmax + 1):
            tally.compare({"r": r, "n": n}, beta[n], rhs[n])
    return tally.report("T9", _grid(r=(1, rmax), n=(0, nmax)))


def check_T10(rmax: int = 4, nmax: int = 12) -> CheckReport:
    """D^(r)_{n,lambda}(x) = sum_k beta^(r)_{k,lambda}(x) S_{1,lambda}(n, k), plus the T9 -> T10 round trip."""
    tally = _Tally()
    s1 = seq.stirling_first_degenerate(nmax)
    s2 = seq.stirling_second_degenerate(nmax)
    for r in range(1, rmax + 1):
        d = seq.higher_degen_daehee(r, nmax, "polynomial")
        rhs = seq.stirling_transform(seq.degen_bernoulli(r, nmax, "polynomial"), s1)
        round_trip = seq.stirling_transform(seq.stirling_transform(d, s2), s1)
        for n in range(nmax + 1):
            tally.compare({"r": r, "n": n}, d[n], rhs[n])
            tally.compare({"r": r, "n": n, "round_trip": True}, d[n], round_trip[n])
    return tally.report("T10", _grid(r=(1, rmax), n=(0, nmax)))


def theorem11_convolution(d: Sequence[BiPoly], r: int, n: int) -> BiPoly:
    """sum over l_1+...+l_r = n of multinomial(n; l) D_{l_1} ... D_{l_r}."""
    total = ZERO
    for ls in compositions(n, r):
        term = ONE
        for l in ls:
            term = term * d[l]
        total = total + term * multinomial(ls)
    return total


def theorem11_expansion(r: int, n: int, s1: seq.StirlingTable) -> BiPoly:
    """sum_m lambda^m C(r, m) S_1(n+r, m+r) binom(m+r, r) / binom(n+r, r), C the cube moment."""
    return _sum(
        BiPoly.monomial(cube_moment(r, m) * Fraction(math.comb(m + r, r), math.comb(n + r, r)), m)
        * s1(n + r, m + r)
        for m in range(n + 1)
    )


def check_T11(rmax: int = 4, nmax: int = 10) -> CheckReport:
    tally = _Tally()
    d1 = seq.degen_daehee(nmax, "number")
    s1 = seq.stirling_first(nmax + rmax)
    for r in range(1, rmax + 1):
        d = seq.higher_degen_daehee(r, nmax, "number")
        for n in range(nmax + 1):
            tally.compare({"r": r, "n": n, "form": "convolution"}, d[n], theorem11_convolution(d1, r, n))
            tally.compare({"r": r, "n": n, "form": "cube-moment expansion"}, d[n], theorem11_expansion(r, n, s1))
    note = (
        "first sum read over l_1+...+l_r = n (printed '= m' leaves m unbound); "
        "printed '(1_r+1)' read as (l_r+1); multinomial in the expansion taken over m"
    )
    return tally.report("T11", _grid(r=(1, rmax), n=(0, nmax)), note=note)


def check_E6(kmax: int = 3, mmax: int = 8) -> CheckReport:
    """Probe the printed formula for D_m^(k)(z) in terms of b^(-k) under both index readings."""
    names = ("(a) b_m^(-k) fixed, as printed", "(b) b_n^(-k) varying with the summation index")
    tallies = [_Tally(), _Tally()]
    for k in range(1, kmax + 1):
        oracle = seq.daehee_poly(k, mmax, "polynomial")
        for m in range(mmax + 1):
            for tally, value in zip(tallies, seq.eldesouky_mustafa_rhs(k, m)):
                tally.compare({"k": k, "m": m}, oracle[m], value)
    params = _grid(k=(1, kmax), m=(0, mmax))
    cases = sum(t.cases for t in tallies)
    verdict = "; ".join(
        f"{name}: {'match' if t.passed else 'mismatch at ' + str(t.first_failure['params'])}"
        for name, t in zip(names, tallies)
    )
    matched = [name for name, t in zip(names, tallies) if t.passed]
    if len(matched) == 1:
        return CheckReport("E6", VARIANT_MATCHED, params, variant=matched[0], note=verdict, cases=cases)
    if len(matched) == 2:
        return CheckReport("E6", PASS, params, note=verdict, cases=cases)
    return CheckReport("E6", FAIL, params, first_failure=tallies[1].first_failure, note=verdict, cases=cases)


@dataclass(frozen=True)
class RunConfig:
    """Grid bounds for :func:`run_all`.

    ``nmax`` drives T1-T6, T9, T10 and C2'; ``nmax_higher`` drives T7, T8, T11.
    """

    nmax: int = 12
    nmax_higher: int = 10
    rmax: int = 4
    kmax: int = 4
    e6_kmax: int = 3
    e6_mmax: int = 8
    ids: tuple[str, ...] | None = None

    def __post_init__(self):
        if min(self.nmax, self.nmax_higher, self.e6_mmax) < 0:
            raise ValueError("grid bounds must be nonnegative")
        if min(self.rmax, self.kmax, self.e6_kmax) < 1:
            raise ValueError("rmax, kmax and e6_kmax must be >= 1")


REGISTRY: dict[str, Callable[[RunConfig], CheckReport]] = {
    "T1": lambda c: check_T1(c.nmax),
    "T2": lambda c: check_T2(c.nmax),
    "T3": lambda c: check_T3(c.nmax),
    "C2'": lambda c: check_C2(c.nmax),
    "T4": lambda c: check_T4(c.nmax),
    "T5": lambda c: check_T5(c.kmax, c.nmax),
    "T6": lambda c: check_T6(c.kmax, c.nmax),
    "T7": lambda c: check_T7(c.kmax, c.nmax_higher),
    "T8": lambda c: check_T8(c.rmax, c.nmax_higher),
    "T9": lambda c: check_T9(c.rmax, c.nmax),
    "T10": lambda c: check_T10(c.rmax, c.nmax),
    "T11": lambda c: check_T11(c.rmax, c.nmax_higher),
    "E6": lambda c: check_E6(c.e6_kmax, c.e6_mmax),
}


def resolve_id(name: str) -> str:
    """Case-insensitive lookup; ``C2`` is accepted for ``C2'``."""
    key = name.strip().upper()
    if key == "C2":
        key = "C2'"
    if key not in REGISTRY:
        raise KeyError(f"unknown identity id {name!r}; known: {', '.join(REGISTRY)}")
    return key


def run_all(config: RunConfig = RunConfig()) -> list[CheckReport]:
    ids = REGISTRY if config.ids is None else [resolve_id(i) for i in config.ids]
    return [REGISTRY[i](config) for i in ids]


def all_ok(reports: Iterable[CheckReport]) -> bool:
    return all(r.ok for r in reports)
