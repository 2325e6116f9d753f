import math
from fractions import Fraction

import pytest
import sympy

from daehee import sequences as seq
from daehee.polyring import LAM, ONE, X, ZERO, BiPoly, degenerate_falling_factorial, falling_factorial
from daehee.sequences import Family, SeqFamily, StirlingKind

from test_series import SLAM, SX, T, sympy_coeffs

F = Fraction
N = 12


def egf_terms(expr, order):
    return [c * math.factorial(n) for n, c in enumerate(sympy_coeffs(expr, order))]


# -- Stirling triangles ------------------------------------------------------


def test_stirling_first_examples():
    s1 = seq.stirling_first(6)
    assert s1(2, 1) == -1
    assert s1(3, 1) == 2
    assert all(s1(n, n) == 1 for n in range(7))
    assert s1(0, 0) == 1 and s1(2, 3) == 0


def test_stirling_second_examples():
    s2 = seq.stirling_second(6)
    assert s2(3, 2) == 3
    assert all(s2(n, n) == 1 for n in range(7))
    assert all(s2(n, 1) == 1 for n in range(1, 7))


def test_stirling_second_degenerate_examples():
    s = seq.stirling_second_degenerate(6)
    assert s(2, 1) == 1 - LAM
    assert all(s(n, n) == 1 for n in range(7))
    assert s.eval_lambda(0).rows == seq.stirling_second(6).rows


def test_stirling_first_degenerate_examples():
    s = seq.stirling_first_degenerate(6)
    assert s(2, 1) == LAM - 1
    assert all(s(n, n) == 1 for n in range(7))
    assert s.eval_lambda(0).rows == seq.stirling_first(6).rows


@pytest.mark.parametrize("n", range(N + 1))
def test_stirling_definitions(n):
    """The four basis changes, expanded directly in Q[lambda, x]."""
    s1, s2 = seq.stirling_first(n), seq.stirling_second(n)
    s1l, s2l = seq.stirling_first_degenerate(n), seq.stirling_second_degenerate(n)
    assert falling_factorial(n) == sum((s1(n, l) * X**l for l in range(n + 1)), ZERO)
    assert X**n == sum((s2(n, l) * falling_factorial(l) for l in range(n + 1)), ZERO)
    assert degenerate_falling_factorial(n) == sum((s2l(n, l) * falling_factorial(l) for l in range(n + 1)), ZERO)
    assert falling_factorial(n) == sum((s1l(n, l) * degenerate_falling_factorial(l) for l in range(n + 1)), ZERO)


def test_stirling_inversion():
    s1l, s2l = seq.stirling_first_degenerate(N), seq.stirling_second_degenerate(N)
    for a, b in ((s1l, s2l), (s2l, s1l)):
        prod = seq.multiply_stirling(a, b, N)
        for n in range(N + 1):
            for m in range(N + 1):
                assert prod[n][m] == (ONE if n == m else ZERO)


def test_gate_catches_a_wrong_recurrence(monkeypatch):
    real = seq._recurrence_table

    def broken(kind, nmax):
        table = real(kind, nmax)
        rows = list(table.rows)
        rows[5] = rows[5][:2] + (rows[5][2] + LAM,) + rows[5][3:]
        return seq.StirlingTable(kind, nmax, tuple(rows))

    monkeypatch.setattr(seq, "_recurrence_table", broken)
    with pytest.raises(RuntimeError, match=r"\(5, 2\)"):
        seq._gate.__wrapped__(StirlingKind.SECOND_DEGENERATE)


def test_table_rows_dump():
    rows = seq.stirling_second_degenerate(2).to_rows()
    assert rows[-2] == {"n": 2, "l": 1, "value": "1 - λ"}
    assert len(rows) == 6


# -- families ------------------------------------------------------------------


def test_bernoulli_examples():
    b = seq.bernoulli_poly(1, 4, "number")
    assert b[:3] == [ONE, BiPoly.const(F(-1, 2)), BiPoly.const(F(1, 6))]
    assert all(seq.bernoulli_poly(a, 3, "number")[0] == 1 for a in range(1, 5))


def test_bernoulli_against_sympy():
    assert seq.bernoulli_poly(1, 7) == egf_terms(T / (sympy.exp(T) - 1) * sympy.exp(SX * T), 7)
    assert seq.bernoulli_poly(3, 5) == egf_terms((T / (sympy.exp(T) - 1)) ** 3 * sympy.exp(SX * T), 5)


def test_bernoulli_numbers_recurrence_matches_series():
    series = [p.constant_value() for p in seq.bernoulli_poly(1, N, "number")]
    assert seq.bernoulli_numbers_recurrence(N) == series


def test_degen_bernoulli_examples():
    beta = seq.degen_bernoulli(1, 4, "number")
    assert beta[0] == ONE
    assert beta[1] == (LAM - 1) / 2
    assert beta[1].eval_lambda(0) == F(-1, 2)


def test_degen_bernoulli_against_sympy():
    kernel = T / ((1 + SLAM * T) ** (1 / SLAM) - 1)
    expected = egf_terms(kernel**2 * (1 + SLAM * T) ** (SX / SLAM), 3)
    assert seq.degen_bernoulli(2, 3) == expected


def test_daehee_examples():
    d = seq.daehee_poly(1, 3, "number")
    assert d == [ONE, BiPoly.const(F(-1, 2)), BiPoly.const(F(2, 3)), BiPoly.const(F(-3, 2))]


def test_daehee_closed_form():
    assert seq.daehee_poly(1, N, "number") == seq.daehee_numbers_closed(N)


def test_daehee_against_sympy():
    expr = (sympy.log(1 + T) / T) ** 2 * (1 + T) ** SX
    assert seq.daehee_poly(2, 5) == egf_terms(expr, 5)


def test_degen_daehee_examples():
    d = seq.degen_daehee(4, "number")
    assert d[0] == ONE
    assert d[1] == (LAM - 1) / 2
    assert [p.eval_lambda(0) for p in seq.degen_daehee(N)] == seq.daehee_poly(1, N)


def test_degen_daehee_against_sympy():
    expr = ((1 + T) ** SLAM - 1) / (SLAM * T) * (1 + T) ** SX
    assert seq.degen_daehee(4) == egf_terms(expr, 4)


def test_degen_daehee_closed_form():
    assert seq.degen_daehee(N) == seq.degen_daehee_closed(N)
    assert seq.degen_daehee(N, "number") == seq.degen_daehee_closed(N, "number")


def test_multiple_degen_daehee_examples():
    for k in range(1, 5):
        assert seq.multiple_degen_daehee(k, 3)[0] == ONE
    assert seq.multiple_degen_daehee(1, N) == seq.degen_daehee(N, "number")
    assert seq.multiple_degen_daehee(2, 3)[1] == LAM / 4 - F(1, 2)


@pytest.mark.parametrize("k", range(1, 5))
def test_multiple_degen_daehee_closed_form(k):
    assert seq.multiple_degen_daehee(k, N) == seq.multiple_degen_daehee_closed(k, N)


def test_higher_degen_daehee_examples():
    for r in range(1, 5):
        assert seq.higher_degen_daehee(r, 3)[0] == ONE
    assert seq.higher_degen_daehee(1, N) == seq.degen_daehee(N)
    assert seq.higher_degen_daehee(2, 2, "number")[1] == LAM - 1


@pytest.mark.parametrize("r", range(1, 5))
def test_higher_degen_daehee_closed_form(r):
    assert seq.higher_degen_daehee(r, N, "number") == seq.higher_degen_daehee_closed(r, N)


def egf_convolution(a, b):
    return [sum((a[l] * b[n - l] * math.comb(n, l) for l in range(n + 1)), ZERO) for n in range(len(a))]


@pytest.mark.parametrize("r", range(1, 5))
def test_higher_is_power_of_first(r):
    d1 = seq.degen_daehee(N, "number")
    acc = [ONE] + [ZERO] * N
    for _ in range(r):
        acc = egf_convolution(acc, d1)
    assert seq.higher_degen_daehee(r, N, "number") == acc


def test_lambda_zero_limits():
    for r in range(1, 5):
        beta0 = [p.eval_lambda(0) for p in seq.degen_bernoulli(r, 10)]
        assert beta0 == seq.bernoulli_poly(r, 10)
        d0 = [p.eval_lambda(0) for p in seq.higher_degen_daehee(r, 10)]
        assert d0 == seq.daehee_poly(r, 10)


def test_series_order_parameter():
    assert seq.degen_daehee(5, order=20) == seq.degen_daehee(5)
    with pytest.raises(ValueError):
        seq.degen_daehee(5, order=5)
    with pytest.raises(ValueError):
        seq.degen_daehee(3, "symbolic")


# -- Norlund numbers ---------------------------------------------------------


def test_norlund_examples():
    b = seq.norlund_second(1, 4)
    assert b[0] == ONE
    assert b[1] == F(1, 2)
    assert b[2] == F(-1, 12)
    assert seq.norlund_second("x", 3)[0] == ONE


def test_norlund_symbolic_against_sympy():
    expr = sympy.exp(SX * sympy.log(T / sympy.log(1 + T)))
    assert seq.norlund_second("x", 4) == sympy_coeffs(expr, 4)


def test_norlund_symbolic_agrees_with_integer_powers():
    sym = seq.norlund_second(None, 8)
    for e in range(-4, 5):
        assert [p.eval_x(e) for p in sym] == seq.norlund_second(e, 8)


def test_norlund_rational_exponent():
    half = seq.norlund_second(F(1, 2), 5)
    squared = [sum((half[i] * half[n - i] for i in range(n + 1)), ZERO) for n in range(6)]
    assert squared == seq.norlund_second(1, 5)


def test_norlund_negative_is_daehee_kernel_power():
    for k in range(1, 4):
        ordinary = seq.norlund_second(-k, 8)
        assert [p * math.factorial(n) for n, p in enumerate(ordinary)] == seq.daehee_poly(k, 8, "number")


@pytest.mark.parametrize("bad", [2 * X, X + 1, "y", 1.5, True])
def test_norlund_rejects(bad):
    with pytest.raises(ValueError):
        seq.norlund_second(bad, 3)


def test_eldesouky_mustafa_readings():
    a, b = seq.eldesouky_mustafa_rhs(1, 0)
    assert a == ONE and b == ONE
    a, b = seq.eldesouky_mustafa_rhs(1, 1)
    assert b == X - F(1, 2) == seq.daehee_poly(1, 1)[1]
    assert a != b


# -- dispatcher --------------------------------------------------------------


def test_generate_dispatch():
    assert seq.generate(SeqFamily(Family.DEGEN_DAEHEE), 4) == seq.degen_daehee(4)
    assert seq.generate(SeqFamily("multiple_degen_daehee", 2), 4) == seq.multiple_degen_daehee(2, 4)
    assert seq.generate(SeqFamily("norlund_second", argument="number", exponent=F(1)), 3) == seq.norlund_second(1, 3)
    assert SeqFamily("norlund_second").convention.value == "ordinary"
    assert SeqFamily("daehee").convention.value == "exponential"
    with pytest.raises(ValueError):
        SeqFamily("daehee_higher", 0)
