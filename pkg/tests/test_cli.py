from __future__ import annotations

import json

import pytest

from psl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_describe(capsys):
    code, out, _ = run(capsys, "field", "describe", "--field", "Q3(zeta9)")
    info = json.loads(out)
    assert code == 0
    assert info["pe0"] == 9 and info["kstar_mod_p_dimension"] == 8


def test_inline_field(capsys):
    code, out, _ = run(capsys, "units", "basis", "--field", '{"p": 5, "eisenstein": [5, 10, 10, 5, 1]}')
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 6


def test_hilbert_table(capsys):
    code, out, _ = run(capsys, "hilbert", "table", "--field", "Q3(zeta3)", "--format", "csv", "--matrix")
    assert code == 0
    assert out.startswith("m,n,order,predicted,flag")
    assert "FAIL" not in out


def test_curve_analyze(capsys):
    code, out, _ = run(capsys, "curve", "analyze", "--field", "Q3(zeta3,pi^(1/4))", "--a", "0", "0", "0", "1", "0")
    assert code == 0
    assert json.loads(out)["t0"] == 1


def test_mackey_commands(capsys):
    code, out, _ = run(capsys, "mackey", "dims", "--field", "Q3(zeta3)", "--samples", "5", "--witnesses", "1")
    assert code == 0 and "| full | full | 1 |" in out
    code, out, _ = run(capsys, "mackey", "witness", "--field", "Q3(zeta3)", "--level0", "1,1", "--entry", "1,0,0,1")
    assert code == 0 and "empty sum (verified)" in out
    code, _, err = run(capsys, "mackey", "witness", "--field", "Q3(zeta3)", "--level0", "1,1", "--entry", "1,0,1")
    assert code == 1 and "NotANorm" in err


def test_chow_rank(capsys):
    code, out, _ = run(capsys, "chow", "rank", "--curve1", "split y^2=x^3+x^2+3",
                       "--curve2", "ordinary y^2+y=x^3-x^2")
    assert code == 0
    assert json.loads(out)["total"] == 23


def test_config_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "field", "describe", "--field", "Q7(nothing)")
    assert code == 2 and "config error" in err
    bad = tmp_path / "cfg.json"
    bad.write_text(json.dumps({"suites": ["nope"]}))
    code, _, _ = run(capsys, "report", "--config", str(bad))
    assert code == 2
    with pytest.raises(SystemExit):
        main(["field"])


def test_report_subset(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "fields": [{"name": "F", "p": 3, "eisenstein": [3, 3, 1]}],
        "suites": ["graded-pieces", "image-orders"],
        "seed": 1,
    }))
    out_file = tmp_path / "r.json"
    code, _, err = run(capsys, "report", "--config", str(cfg), "--format", "json",
                       "--output", str(out_file), "--timing")
    assert code == 0
    assert json.loads(out_file.read_text())["status"] == "PASS"
    assert "[timing]" in err
