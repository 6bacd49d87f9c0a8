from __future__ import annotations

import json

import pytest

import qhecke.cli as cli
from qhecke.errors import InexactDivision


def run(capsys, *argv: str) -> tuple[int, str, str]:
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_list(capsys):
    rc, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert rc == 0
    assert lines[-1] == "126 records"
    assert len(lines) == 127
    assert any(line.startswith("HR1 ") for line in lines)
    assert any("[cleared]" in line for line in lines)


def test_verify_single_ok(capsys):
    rc, out, _ = run(capsys, "verify", "--id", "HR1", "--order", "40")
    assert rc == 0
    assert out.splitlines()[0].startswith("ok   HR1  order=40")
    assert out.strip().endswith("1/1 records verified")


def test_verify_reports_first_mismatch(capsys):
    rc, out, _ = run(capsys, "verify", "--id", "MORTID1B-printed", "--order", "20")
    assert rc == 1
    assert "FAIL MORTID1B-printed" in out
    assert "first mismatch at q^3 z^0: lhs=-3 rhs=3" in out


def test_verify_group_forgiveness(capsys):
    rc, out, _ = run(capsys, "verify", "--id", "MORTID1B-*", "--order", "20")
    assert rc == 0
    assert "group MORTID1B: settled by MORTID1B-corrected" in out
    assert "1/2 records verified" in out


def test_verify_glob_and_repeat(capsys):
    rc, out, _ = run(capsys, "verify", "--id", "HR?", "--id", "cor1",
                     "--order", "30")
    assert rc == 0
    ids = [line.split()[1] for line in out.splitlines() if line.startswith("ok")]
    assert ids == ["HR1", "HR2", "HR3", "HR4", "HRf", "cor1"]


def test_verify_unknown_id(capsys):
    rc, _, err = run(capsys, "verify", "--id", "nope-*")
    assert rc == 2
    assert "no identity registered under 'nope-*'" in err


def test_verify_json_schema(capsys):
    rc, out, _ = run(capsys, "verify", "--id", "HR1", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert sorted(doc) == ["config", "results", "version"]
    (res,) = doc["results"]
    assert res["id"] == "HR1"
    assert res["ok"] is True
    assert "first_mismatch" not in res


def test_verify_json_mismatch_included(capsys):
    rc, out, _ = run(capsys, "verify", "--id", "MORTID3-printed",
                     "--order", "12", "--format", "json")
    assert rc == 1
    (res,) = json.loads(out)["results"]
    assert res["first_mismatch"] == {
        "q_power": 0, "z_power": -1, "lhs": 0, "rhs": 1,
    }


def test_verify_parallel_same_records(capsys):
    rc1, out1, _ = run(capsys, "verify", "--id", "fJTP-n?", "--order", "20")
    rc2, out2, _ = run(capsys, "verify", "--id", "fJTP-n?", "--order", "20",
                       "--parallel", "4")
    assert rc1 == rc2 == 0
    trim = lambda s: [line.split("(")[0].rstrip() for line in s.splitlines()]
    assert trim(out1) == trim(out2)


def test_save_then_load_matches(tmp_path, capsys):
    base = tmp_path / "base.json"
    rc, _, _ = run(capsys, "verify", "--id", "HR1", "--order", "30",
                   "--save", str(base))
    assert rc == 0
    saved = json.loads(base.read_text())
    assert sorted(saved) == ["config", "results", "version"]
    rc, out, _ = run(capsys, "verify", "--id", "HR1", "--order", "30",
                     "--load", str(base))
    assert rc == 0
    assert f"report matches baseline {base}" in out


def test_load_detects_divergence(tmp_path, capsys):
    base = tmp_path / "base.json"
    run(capsys, "verify", "--id", "HR1", "--order", "30", "--save", str(base))
    rc, _, err = run(capsys, "verify", "--id", "HR2", "--order", "30",
                     "--load", str(base))
    assert rc == 1
    assert f"report DIFFERS from baseline {base}" in err


def test_load_missing_file(tmp_path, capsys):
    rc, _, err = run(capsys, "verify", "--id", "HR1", "--order", "20",
                     "--load", str(tmp_path / "absent.json"))
    assert rc == 2
    assert "error:" in err


def test_coeff_full_row(capsys):
    rc, out, _ = run(capsys, "coeff", "--series", "R", "--n", "4")
    assert rc == 0
    assert out.strip() == "z^-3 + z^-1 + 1 + z + z^3"


def test_coeff_single_power(capsys):
    rc, out, _ = run(capsys, "coeff", "--series", "R", "--n", "4", "--m", "-3")
    assert rc == 0
    assert out.strip() == "1"
    rc, out, _ = run(capsys, "coeff", "--series", "R", "--n", "4", "--m", "2")
    assert rc == 0
    assert out.strip() == "0"


def test_coeff_order_must_cover_n(capsys):
    rc, _, err = run(capsys, "coeff", "--series", "R", "--n", "10",
                     "--order", "5")
    assert rc == 2
    assert "error:" in err


def test_coeff_unknown_series(capsys):
    rc, _, err = run(capsys, "coeff", "--series", "NOPE", "--n", "2")
    assert rc == 2
    assert "error:" in err


def test_seq_single_value(capsys):
    rc, out, _ = run(capsys, "seq", "spt", "--n", "1000")
    assert rc == 0
    assert out.strip() == "600656570957882248155746472836274"


def test_seq_table(capsys):
    rc, out, _ = run(capsys, "seq", "spt", "--n-max", "5")
    assert rc == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows == [["0", "0"], ["1", "1"], ["2", "3"],
                    ["3", "5"], ["4", "10"], ["5", "14"]]


def test_seq_requires_exactly_one_selector(capsys):
    rc, _, err = run(capsys, "seq", "spt")
    assert rc == 2
    assert "seq needs --n or --n-max" in err
    rc, _, err = run(capsys, "seq", "spt", "--n", "3", "--n-max", "5")
    assert rc == 2
    assert "only one of --n and --n-max" in err


def test_congruence(capsys):
    rc, out, _ = run(capsys, "congruence", "--id", "congs35", "--n-max", "20")
    assert rc == 0
    assert out.splitlines()[0].startswith("ok   congs35  sequence=a  n_max=20")
    rc, _, err = run(capsys, "congruence", "--id", "congs36")
    assert rc == 2
    assert "congs36" in err


def test_report_json_schema(capsys):
    rc, out, _ = run(capsys, "report", "--format", "json", "--parallel", "4")
    assert rc == 0
    doc = json.loads(out)
    assert sorted(doc) == ["config", "congruences", "results", "sequences", "version"]
    assert len(doc["results"]) == 126
    names = sorted(s["name"] for s in doc["sequences"])
    assert names == ["a", "alpha", "beta", "m2spt", "spt", "sptBar"]
    assert all(len(s["values"]) == s["n_max"] + 1 for s in doc["sequences"])
    assert len(doc["congruences"]) == 7
    assert all(c["ok"] for c in doc["congruences"])


def test_internal_error_exit_code(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise InexactDivision("coefficient 3 not divisible by 2 at q^4")

    monkeypatch.setattr(cli, "verify_identity", boom)
    rc, _, err = run(capsys, "verify", "--id", "HR1")
    assert rc == 3
    assert "internal assertion failed:" in err
    assert "coefficient 3 not divisible by 2 at q^4" in err


def test_cli_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run(capsys, "--version")
    assert exc.value.code == 0
