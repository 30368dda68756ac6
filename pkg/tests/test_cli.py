import csv
import io
import json

import pytest

from idealizer_lab import checks
from idealizer_lab.cli import main
from idealizer_lab.lie import RingContext, bracket_basis
from idealizer_lab.partitions import bundled_bfile_path
from idealizer_lab.report import ChainReport, build_chain_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_seq_rows(capsys):
    code, out, _ = run(capsys, "seq", "--max", "6")
    assert code == 0
    assert "a: 1 1 2 3 5 7 11" in out.splitlines()
    code, out, _ = run(capsys, "seq", "--max", "4")
    assert "c: 1 3 7 14 26" in out.splitlines()


def test_seq_bfile_match_and_mismatch(capsys, tmp_path):
    code, out, _ = run(capsys, "seq", "--max", "40", "--bfile", str(bundled_bfile_path()))
    assert code == 0 and "bfile: match" in out
    bad = tmp_path / "bad.bfile"
    bad.write_text("0 1\n1 1\n2 2\n3 4\n")
    code, _, err = run(capsys, "seq", "--max", "3", "--bfile", str(bad))
    assert code == 2 and "index 3" in err


def test_seq_bfile_errors(capsys, tmp_path):
    bad = tmp_path / "bad.bfile"
    bad.write_text("x y\n")
    assert run(capsys, "seq", "--bfile", str(bad))[0] == 1
    assert run(capsys, "seq", "--bfile", str(tmp_path / "missing"))[0] == 3


def test_seq_json(capsys):
    code, out, _ = run(capsys, "seq", "--max", "3", "--format", "json")
    assert json.loads(out) == {"max": 3, "a": [1, 1, 2, 3], "b": [1, 2, 4, 7], "c": [1, 3, 7, 14]}


def test_levels(capsys):
    assert run(capsys, "levels", "--n", "5", "--i", "5")[1] == "k=5: x1^6*d5\n"
    out = run(capsys, "levels", "--n", "5", "--i", "6")[1]
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    assert len(lines["k=5"].split(", ")) == 2 and len(lines["k=4"].split(", ")) == 1
    out = run(capsys, "levels", "--n", "3", "--i", "0", "--format", "json")[1]
    payload = json.loads(out)
    assert sum(len(v) for v in payload["by_k"].values()) == 3


def test_bracket_command(capsys):
    assert run(capsys, "bracket", "--n", "3", "x2*d3", "x1*d2")[1] == "x1*d3\n"
    assert run(capsys, "bracket", "--n", "3", "d1", "d2")[1] == "0\n"
    code, _, err = run(capsys, "bracket", "--n", "3", "x3*d2", "d1")
    assert code == 1 and "part exceeds direction bound" in err
    assert run(capsys, "bracket", "--n", "3", "x1*", "d1")[0] == 1


def test_usage_errors(capsys):
    assert run(capsys, "levels", "--n", "2", "--i", "0")[0] == 1
    assert run(capsys, "chain", "--n", "5", "--i-max", "-1")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["chain", "--n", "5"])
    assert info.value.code == 1
    capsys.readouterr()


def test_chain_periodic_totals(capsys):
    code, out, _ = run(capsys, "chain", "--n", "5", "--i-max", "12", "--format", "json")
    assert code == 0
    totals = [lvl["total"] for lvl in json.loads(out)["levels"]]
    assert totals[5:] == [1, 3, 7, 14, 1, 3, 7, 14]


def test_chain_single_level(capsys):
    out = run(capsys, "chain", "--n", "3", "--i-max", "0", "--format", "json")[1]
    levels = json.loads(out)["levels"]
    assert len(levels) == 1 and levels[0]["total"] == 3


def test_chain_both_matches(capsys):
    code, out, _ = run(capsys, "chain", "--n", "4", "--i-max", "9", "--method", "both", "--format", "json")
    assert code == 0
    assert all(lvl["match_oracle"] is True for lvl in json.loads(out)["levels"])


def test_chain_json_schema_and_round_trip(capsys):
    out = run(capsys, "chain", "--n", "5", "--i-max", "8", "--method", "both", "--elements", "--format", "json")[1]
    d = json.loads(out)
    assert list(d) == ["n", "levels"]
    assert list(d["levels"][0]) == [
        "i", "h", "r", "by_k", "total", "predicted_by_k", "predicted_total", "oracle_total", "match_oracle", "elements",
    ]
    assert d["levels"][0]["predicted_total"] is None  # below threshold
    assert d["levels"][5]["predicted_total"] == 1
    assert ChainReport.from_json(out).to_json() == out
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_chain_csv(capsys):
    out = run(capsys, "chain", "--n", "4", "--i-max", "3", "--method", "both", "--format", "csv")[1]
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "i", "h", "r", "k", "count", "predicted", "oracle", "match"]
    assert all(r["match"] == "true" for r in rows)
    assert sum(int(r["count"]) for r in rows if r["i"] == "3") == 7


def test_chain_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    assert run(capsys, "chain", "--n", "4", "--i-max", "4", "--format", "json", "--out", str(target))[0] == 0
    assert json.loads(target.read_text())["n"] == 4
    assert run(capsys, "chain", "--n", "4", "--i-max", "4", "--out", str(tmp_path / "no" / "such" / "dir"))[0] == 3


def test_report_flags_prediction_mismatch():
    rep = build_chain_report(5, 6)
    assert not rep.prediction_mismatch
    rep.levels[6].by_k[5] += 1
    assert rep.prediction_mismatch


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--i-max", "8")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("all checks passed")


def test_verify_json_deterministic(capsys):
    argv = ["verify", "--n", "4", "--i-max", "6", "--seed", "3", "--trials", "200", "--format", "json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first)["passed"] is True


def _sign_flipped(ctx, left, right):
    res = bracket_basis(ctx, left, right)
    if res is not None and right.direction < left.direction:
        return -res[0], res[1]
    return res


def test_tampered_bracket_is_caught():
    report = checks.run_suite(4, 4, trials=200, bracket_fn=_sign_flipped)
    failed = {c.name for c in report.checks if not c.passed}
    assert not report.passed
    assert {"antisymmetry", "jacobi"} & failed
    witness = next(c for c in report.checks if c.name == "antisymmetry").witness
    assert witness and "[" in witness


def test_verify_exit_code_on_failure(capsys, monkeypatch):
    def broken(ctx, left, right):
        res = bracket_basis(ctx, left, right)
        return None if res is None else (2 * res[0], res[1])

    original = checks.run_suite
    monkeypatch.setattr("idealizer_lab.cli.run_suite", lambda *a, **kw: original(*a, bracket_fn=broken, **kw))
    code, out, _ = run(capsys, "verify", "--n", "3", "--i-max", "3", "--trials", "100")
    assert code == 2
    assert "FAIL" in out


def test_report_builder_rejects_bad_method():
    with pytest.raises(ValueError):
        build_chain_report(4, 2, method="guess")
    assert RingContext(4).n == 4
