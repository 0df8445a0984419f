import json
import subprocess
import sys

import pytest

from qaffine_verify.cli import main
from qaffine_verify.report import (FAIL, INCONCLUSIVE, PASS, Check, Mismatch, VerificationReport,
                                   emit_report, equality_check, parse_report)
from qaffine_verify.suites import ConfigError, SuiteConfig, run_suite


def sample_report():
    return VerificationReport("ybe", {"weight": 3, "zmin": 0}, [
        Check("a.ok", "x = x", PASS, []),
        Check("b.bad", "y = y", FAIL, [Mismatch((1, -2), "q^2", "q", "entry (1,2)")]),
    ], 12)


def test_json_round_trip():
    r = sample_report()
    data = emit_report(r, "json")
    assert parse_report(data) == r
    d = json.loads(data)
    assert list(d) == ["suite", "params", "checks", "runtime_ms"]
    assert d["checks"][0]["mismatches"] == []
    assert d["checks"][1]["mismatches"][0] == {"location": [1, -2], "where": "entry (1,2)",
                                               "lhs": "q^2", "rhs": "q"}


def test_text_format_is_line_oriented():
    text = emit_report(sample_report(), "text").decode()
    lines = text.splitlines()
    assert lines[0] == "suite: ybe"
    assert any("FAIL" in ln and "b.bad" in ln for ln in lines)
    assert lines[-1].startswith("result: fail (1/2 checks passed)")
    with pytest.raises(ValueError):
        emit_report(sample_report(), "yaml")


def test_status_and_exit_codes():
    ok = VerificationReport("x", {}, [Check("a", "", PASS)])
    assert (ok.status, ok.exit_code) == (PASS, 0)
    assert sample_report().exit_code == 1
    inc = VerificationReport("x", {}, [Check("a", "", PASS), Check("b", "", INCONCLUSIVE)])
    assert (inc.status, inc.exit_code) == (INCONCLUSIVE, 3)
    assert VerificationReport("x", {}, []).status == INCONCLUSIVE
    with pytest.raises(ValueError):
        Check("a", "", "maybe")


def test_mismatch_list_is_capped():
    c = equality_check("n", "a", [((i,), 1, 2) for i in range(80)])
    assert c.status == FAIL and len(c.mismatches) == 50


@pytest.mark.parametrize("kwargs", [dict(suite="nope"), dict(weight=-1), dict(zmin=3, zmax=1),
                                    dict(wmin=1), dict(sign="up"), dict(fmt="xml")])
def test_invalid_configs(kwargs):
    with pytest.raises(ConfigError):
        SuiteConfig(**kwargs)


def test_determinism():
    cfg = SuiteConfig(suite="coproduct-transport", weight=2, zmin=-2, zmax=2)
    a, b = run_suite(cfg), run_suite(cfg)
    a.runtime_ms = b.runtime_ms = 0
    assert emit_report(a, "json") == emit_report(b, "json")


def test_counterexample_suite_passes_with_witness():
    r = run_suite(SuiteConfig(suite="counterexample", weight=2))
    assert r.status == PASS
    assert all(c.mismatches and c.mismatches[0].where == "witness" for c in r.checks)


def test_weight_zero_transport_and_counterexample():
    for suite in ("coproduct-transport", "antipode-transport", "hopf-axioms"):
        assert run_suite(SuiteConfig(suite=suite, weight=0)).status == PASS
    r = run_suite(SuiteConfig(suite="counterexample", weight=0))
    assert {c.status for c in r.checks if "symbolic" in c.name} == {INCONCLUSIVE}


def test_spot_check_agrees_with_exact_run():
    cfg = dict(suite="antipode-transport", weight=2, zmin=-2, zmax=2)
    assert run_suite(SuiteConfig(**cfg, spot_check=11)).status == PASS


def test_cli_json_to_stdout(capsysbinary):
    code = main(["verify", "--suite", "ybe", "--zmin", "0", "--zmax", "2", "--format", "json"])
    out = capsysbinary.readouterr().out
    assert code == 0
    r = parse_report(out)
    assert r.suite == "ybe" and r.params["zmax"] == 2 and r.status == PASS


def test_cli_out_file_and_figure(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify", "--suite", "counterexample", "--weight", "1", "--format", "json",
                 "--out", str(out), "--figures", str(tmp_path / "figs")])
    assert code == 0
    assert parse_report(out.read_bytes()).status == PASS
    assert (tmp_path / "figs" / "summary-counterexample.png").stat().st_size > 0
    assert "figure written" in capsys.readouterr().err


def test_cli_usage_errors(capsys):
    assert main(["verify", "--suite", "bogus"]) == 2
    assert main(["verify", "--zmin", "4", "--zmax", "1"]) == 2
    assert main([]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_inconclusive_exit_code(capsys):
    assert main(["verify", "--suite", "counterexample", "--weight", "0"]) == 3


def test_env_default_weight(monkeypatch, capsysbinary):
    monkeypatch.setenv("QAV_DEFAULT_WEIGHT", "1")
    main(["verify", "--suite", "coproduct-transport", "--format", "json", "--zmin", "-1", "--zmax", "1"])
    assert parse_report(capsysbinary.readouterr().out).params["weight"] == 1
    monkeypatch.setenv("QAV_DEFAULT_WEIGHT", "lots")
    assert main(["verify", "--suite", "ybe"]) == 2


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "qaffine_verify.cli", "verify", "--suite", "ybe",
                           "--zmin", "0", "--zmax", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].startswith("result: pass")
