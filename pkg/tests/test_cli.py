import json
import subprocess
import sys

import pytest

from daehee.cli import main
from daehee.polyring import BiPoly
from daehee import sequences as seq


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_degen_daehee(capsys):
    code, out, _ = run(capsys, "gen", "--family", "degen-daehee", "--nmax", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["family"] == "degen-daehee" and doc["argument"] == "polynomial"
    assert len(doc["terms"]) == 5
    assert BiPoly.from_text(doc["terms"][1]["value"]).eval_x(0) == BiPoly.from_text("-1/2 + 1/2*λ")


def test_gen_daehee_numbers(capsys):
    code, out, _ = run(capsys, "gen", "--family", "daehee", "--nmax", "3", "--x", "0")
    values = [t["value"] for t in json.loads(out)["terms"]]
    assert code == 0 and values == ["1", "-1/2", "2/3", "-3/2"]


def test_gen_lambda_zero_is_classical(capsys):
    _, out, _ = run(capsys, "gen", "--family", "degen-daehee", "--nmax", "2", "--lambda", "0")
    got = [BiPoly.from_text(t["value"]) for t in json.loads(out)["terms"]]
    assert got == seq.daehee_poly(1, 2)


def test_gen_csv(capsys):
    code, out, _ = run(capsys, "gen", "--family", "degen-bernoulli", "--nmax", "2", "--lambda", "1/2", "--x", "0", "--format", "csv")
    expected = [p.eval_lambda(BiPoly.from_text("1/2").constant_value()) for p in seq.degen_bernoulli(1, 2, "number")]
    assert code == 0
    assert out.splitlines() == ["n,value"] + [f"{n},{v.to_text()}" for n, v in enumerate(expected)]


def test_gen_csv_needs_specialization(capsys):
    code, _, err = run(capsys, "gen", "--family", "degen-daehee", "--nmax", "2", "--format", "csv")
    assert code == 2 and "csv" in err


def test_gen_norlund_exponent(capsys):
    _, out, _ = run(capsys, "gen", "--family", "norlund-second", "--nmax", "2", "--x", "-1/2")
    doc = json.loads(out)
    assert doc["convention"] == "ordinary"
    assert [t["value"] for t in doc["terms"]] == ["1", "-1/4", "13/96"]


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--family", "nope"],
        ["gen", "--family", "daehee", "--r", "2"],
        ["gen", "--family", "degen-daehee-higher", "--r", "2", "--nmax", "4", "--series-order", "5"],
        ["gen", "--family", "daehee", "--nmax", "1/2"],
        ["gen", "--family", "daehee", "--nmax", "-1"],
        ["gen", "--family", "daehee", "--x", "1/0"],
        ["gen", "--family", "multiple-degen-daehee", "--k", "0"],
        ["check"],
        ["check", "--all", "--id", "T1"],
        ["check", "--id", "T99"],
        ["check", "--all", "--lambda", "1"],
        ["limit", "--family", "daehee"],
        ["gen", "degen-daehee"],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_check_single(capsys):
    code, out, _ = run(capsys, "check", "--id", "T8", "--r", "3")
    doc = json.loads(out)
    assert code == 0 and len(doc) == 1
    assert doc[0]["id"] == "T8" and doc[0]["params"]["r"] == [1, 3]


def test_check_t7(capsys):
    _, out, _ = run(capsys, "check", "--id", "T7")
    doc = json.loads(out)[0]
    assert doc["status"] == "variant_matched" and "n+1" in doc["variant"]


def test_check_all(capsys, tmp_path):
    path = tmp_path / "reports.json"
    code, out, _ = run(capsys, "check", "--all", "--out", str(path))
    assert code == 0 and out == ""
    assert len(json.loads(path.read_text(encoding="utf-8"))) == 13


def test_check_failure_exit_code(capsys, monkeypatch):
    real = seq.degen_daehee

    def bad(nmax, argument="polynomial", order=None):
        values = real(nmax, argument, order)
        values[-1] = values[-1] * 2
        return values

    monkeypatch.setattr(seq, "degen_daehee", bad)
    code, out, _ = run(capsys, "check", "--id", "T1", "--nmax", "4")
    assert code == 1
    assert json.loads(out)[0]["first_failure"]["params"] == {"n": 4}


def test_limit_degen_bernoulli(capsys):
    code, out, _ = run(capsys, "limit", "--family", "degen-bernoulli", "--nmax", "6")
    doc = json.loads(out)
    assert code == 0 and doc["all_equal"] and len(doc["rows"]) == 7


def test_limit_single_row(capsys):
    _, out, _ = run(capsys, "limit", "--family", "degen-daehee", "--nmax", "0")
    rows = json.loads(out)["rows"]
    assert rows == [{"n": 0, "degenerate": "1", "classical": "1", "equal": True}]


def test_limit_multiple_k1(capsys):
    code, out, _ = run(capsys, "limit", "--family", "multiple-degen-daehee", "--k", "1", "--nmax", "6")
    doc = json.loads(out)
    assert code == 0 and doc["counterpart"] == "degen-daehee"
    expected = [p.eval_lambda(0).to_text() for p in seq.degen_daehee(6, "number")]
    assert [r["classical"] for r in doc["rows"]] == expected


def test_limit_mismatch_exit(capsys):
    code, out, _ = run(capsys, "limit", "--family", "degen-daehee", "--nmax", "3", "--lambda", "1", "--x", "0", "--format", "csv")
    assert code == 1
    assert out.splitlines()[0] == "n,degenerate,classical,equal"


def test_output_is_deterministic(capsys):
    argv = ["gen", "--family", "degen-daehee-higher", "--r", "3", "--nmax", "6"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_round_trip(capsys):
    _, out, _ = run(capsys, "gen", "--family", "degen-bernoulli-higher", "--r", "2", "--nmax", "6")
    parsed = [BiPoly.from_text(t["value"]) for t in json.loads(out)["terms"]]
    assert parsed == seq.degen_bernoulli(2, 6)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "daehee", "gen", "--family", "daehee", "--nmax", "2", "--x", "0", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["n,value", "0,1", "1,-1/2", "2,2/3"]
