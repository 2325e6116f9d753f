import json
from fractions import Fraction

import pytest

from daehee import identities as ids
from daehee import sequences as seq
from daehee.polyring import LAM, ONE

F = Fraction


def test_t1_small_cases():
    rhs = ids.theorem1_rhs(1)
    assert rhs[0] == ONE
    assert rhs[1] == (LAM - 1) / 2
    assert ids.check_T1(12).status == "pass"


def test_t6_small_case():
    # n=1, k=1: left hatD_0 S2(1,0) + hatD_1 S2(1,1) = lambda/2 - 1/2
    d = seq.multiple_degen_daehee(1, 1)
    assert d[1] == LAM / 2 - F(1, 2)
    assert ids.check_T6(1, 1).status == "pass"


def test_t7_reports_derivation_range():
    report = ids.check_T7(4, 10)
    assert report.status == "variant_matched"
    assert "n+1" in report.variant
    s2 = seq.stirling_second(2)
    dhat = seq.multiple_degen_daehee(1, 1)
    assert ids.theorem7_sum(dhat, s2, 0, 1) == ONE
    assert ids.theorem7_sum(dhat, s2, 0, 0) == 0


def test_t8_small_case():
    assert seq.higher_degen_daehee_closed(2, 1)[1] == LAM - 1
    assert ids.check_T8(4, 10).status == "pass"


def test_t11_forms():
    d1 = seq.degen_daehee(1, "number")
    assert ids.theorem11_convolution(d1, 2, 1) == 2 * d1[0] * d1[1] == LAM - 1
    s1 = seq.stirling_first(3)
    assert ids.theorem11_expansion(2, 1, s1) == LAM - 1
    report = ids.check_T11(4, 10)
    assert report.status == "pass" and report.note


def test_e6_decides_reading():
    report = ids.check_E6(3, 8)
    assert report.status == "variant_matched"
    assert report.variant.startswith("(b)")
    assert "(a)" in report.note and "mismatch" in report.note


@pytest.mark.parametrize(
    "check",
    [
        lambda: ids.check_T2(12),
        lambda: ids.check_T3(12),
        lambda: ids.check_T4(12),
        lambda: ids.check_C2(12),
        lambda: ids.check_T5(4, 12),
        lambda: ids.check_T9(4, 12),
        lambda: ids.check_T10(4, 12),
    ],
)
def test_remaining_checks_pass(check):
    report = check()
    assert report.status == "pass", report.first_failure
    assert report.first_failure is None


def test_run_all_default():
    reports = ids.run_all()
    assert [r.identity_id for r in reports] == list(ids.REGISTRY)
    assert len(reports) == 13
    assert ids.all_ok(reports)
    assert {r.status for r in reports if r.identity_id in ("T7", "E6")} == {"variant_matched"}
    assert all(r.status == "pass" for r in reports if r.identity_id not in ("T7", "E6"))


def test_run_all_trivial_grid():
    reports = ids.run_all(ids.RunConfig(nmax=0, nmax_higher=0, e6_mmax=0))
    assert len(reports) == 13
    assert ids.all_ok(reports)


def test_run_all_subset_and_ids():
    reports = ids.run_all(ids.RunConfig(ids=("t8", "c2")))
    assert [r.identity_id for r in reports] == ["T8", "C2'"]
    with pytest.raises(KeyError):
        ids.resolve_id("T12")


def test_report_json_shape():
    doc = ids.check_T1(3).to_json()
    assert doc["id"] == "T1" and doc["status"] == "pass"
    assert "first_failure" not in doc
    json.dumps(doc)


def test_tampered_sequence_fails(monkeypatch):
    real = seq.degen_daehee

    def off_by_one(nmax, argument="polynomial", order=None):
        values = real(nmax, argument, order)
        values[3] = values[3] + 1
        return values

    monkeypatch.setattr(seq, "degen_daehee", off_by_one)
    report = ids.check_T1(6)
    assert report.status == "fail"
    assert report.first_failure["params"] == {"n": 3}
    assert report.first_failure["lhs"] != report.first_failure["rhs"]
    assert not ids.all_ok([report])
    assert ids.check_T4(6).status == "fail"


def test_tampered_stirling_fails(monkeypatch):
    real = seq.stirling_first

    def shifted(nmax):
        t = real(nmax)
        rows = list(t.rows)
        if nmax >= 4:
            rows[4] = rows[4][:2] + (rows[4][2] + 1,) + rows[4][3:]
        return seq.StirlingTable(t.kind, t.nmax, tuple(rows))

    monkeypatch.setattr(seq, "stirling_first", shifted)
    assert ids.check_T5(2, 6).status == "fail"


def test_config_validation():
    with pytest.raises(ValueError):
        ids.RunConfig(nmax=-1)
    with pytest.raises(ValueError):
        ids.RunConfig(rmax=0)
