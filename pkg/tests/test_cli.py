import json

import jsonschema
import pytest
from typer.testing import CliRunner

from conformal_forge.cli import app, run
from conformal_forge.constants import SEED_ENV_VAR
from conformal_forge.reports import ReportWriter, report_schema

runner = CliRunner()


def invoke(*args: str):
    return runner.invoke(app, list(args))


def test_check_axioms_text():
    res = invoke("check-axioms", "--family", "A1", "--window", "-1..2")
    assert res.exit_code == 0, res.output
    assert "== novikov-axioms: PASS" in res.stdout
    assert "== lie-axioms: PASS" in res.stdout
    assert "== gd-compatibility: PASS" in res.stdout


def test_json_output_matches_schema():
    res = invoke("check-axioms", "--family", "CL1", "--c", "2", "--window", "-1..2", "--format", "json")
    assert res.exit_code == 0, res.output
    payload = json.loads(res.stdout)
    jsonschema.validate(payload, report_schema())
    assert [r["check"] for r in payload] == ["novikov-axioms", "lie-axioms", "gd-compatibility"]


def test_tortken_verdicts():
    corrected = invoke("check-tortken", "--family", "A1", "--window", "-1..2")
    assert corrected.exit_code == 0, corrected.output

    printed = invoke("check-tortken", "--family", "A1", "--window", "-1..2", "--variant", "printed")
    assert printed.exit_code == 1
    assert "FAIL [L_0, L_1, L_0, L_0]" in printed.stdout

    expected = invoke("check-tortken", "--family", "A1", "--window", "-1..2",
                      "--variant", "printed", "--expect", "fail")
    assert expected.exit_code == 0


def test_hypothesis_violation_exits_2():
    res = invoke("check-conformal", "--family", "CL2", "--b", "1/2", "--window", "-1..1")
    assert res.exit_code == 2
    assert "2b∉Δ" in res.output

    allowed = invoke("check-conformal", "--family", "CL2", "--b", "1/2", "--allow-2b-in-delta",
                     "--window", "-1..1")
    assert allowed.exit_code == 0, allowed.output


@pytest.mark.parametrize("args", [
    ["no-such-command"],
    ["check-axioms", "--family", "Witt"],
    ["check-axioms", "--family", "A1", "--window", "5..1"],
    ["check-axioms", "--family", "A1", "--format", "yaml"],
    ["check-axioms"],
    ["check-axioms", "--family", "A1", "--bogus"],
    ["check-axioms", "--family", "CL1", "--k", "1"],
    ["check-axioms", "--family", "Vir", "--k", "2"],
])
def test_usage_errors_exit_2(args):
    assert runner.invoke(app, args).exit_code == 2


def test_star_span_predicted_gap():
    res = invoke("star-span", "--family", "A2", "--b", "1/2", "--window", "-3..3", "--format", "json")
    assert res.exit_code == 0, res.output
    report = json.loads(res.stdout)
    assert report["params"]["expected_gaps"] == "x_(-1)"


def test_coeff_crosscheck_and_jacobi():
    res = invoke("coeff-crosscheck", "--family", "CL1", "--c", "2", "--samples", "40")
    assert res.exit_code == 0, res.output
    res = invoke("coeff", "--family", "Vir", "--samples", "20")
    assert res.exit_code == 0, res.output


def test_coeff_export(tmp_path):
    target = tmp_path / "vir.json"
    res = invoke("coeff", "--family", "Vir", "--samples", "5", "--modes", "0..1", "--export", str(target))
    assert res.exit_code == 0, res.output
    rows = json.loads(target.read_text(encoding="utf-8"))
    assert len(rows) == 4


def test_env_seed_overrides_flag(monkeypatch):
    monkeypatch.setenv(SEED_ENV_VAR, "99")
    res = invoke("coeff", "--family", "Vir", "--samples", "5", "--seed", "3", "--format", "json")
    assert res.exit_code == 0, res.output
    assert json.loads(res.stdout)["params"]["seed"] == "99"


def test_simplicity_evidence_is_reproducible():
    args = ("simplicity-evidence", "--family", "Vir", "--trials", "3", "--format", "json")
    first, second = invoke(*args), invoke(*args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout


@pytest.mark.parametrize("args", [
    ("coeff", "--family", "CL2", "--b", "1/3", "--phi", "1/5", "--window", "-1..1", "--samples", "15"),
    ("check-tortken", "--family", "A1", "--window", "-1..1", "--variant", "printed"),
    ("star-span", "--family", "A2", "--b", "1/2", "--window", "-3..3"),
    ("simplicity-evidence", "--family", "CL2", "--b", "1/2", "--allow-2b-in-delta",
     "--window", "-1..1", "--dpow-bound", "1", "--trials", "2"),
])
def test_reports_are_byte_identical(args):
    first, second = invoke(*args, "--format", "json"), invoke(*args, "--format", "json")
    assert first.exit_code in (0, 1), first.output
    assert first.stdout == second.stdout
    json.loads(first.stdout)


def test_simplicity_evidence_detects_the_ideal():
    base = ("simplicity-evidence", "--family", "CL2", "--b", "1/2", "--allow-2b-in-delta",
            "--window", "-2..2", "--dpow-bound", "1", "--trials", "2")
    assert invoke(*base).exit_code == 1
    assert invoke(*base, "--expect", "fail").exit_code == 0
    assert invoke(*base, "--confine", "B").exit_code == 0


def test_is_ideal_candidates():
    base = ("is-ideal", "--family", "CL2", "--b", "1/2", "--allow-2b-in-delta",
            "--window", "-2..2", "--kind", "conformal", "--dpow-bound", "1")
    assert invoke(*base, "--candidate", "B").exit_code == 0
    assert invoke(*base, "--candidate", "B", "--drop", "0").exit_code == 1


def test_table_commands(data_dir):
    table = str(data_dir / "ideal2.json")
    lift = invoke("gd-lift", "--family", "Table", "--table", table, "--generator", "f")
    assert lift.exit_code == 0, lift.output
    closure = invoke("closure", "--family", "Table", "--table", table, "--kind", "novikov",
                     "--generator", "f", "--format", "json")
    assert closure.exit_code == 1
    assert json.loads(closure.stdout)["witnesses"][0]["dimension"] == 1
    simple = invoke("nj-simplicity", "--family", "Table", "--table", table, "--kind", "novikov")
    assert simple.exit_code == 1


def test_current_algebra(data_dir):
    res = invoke("check-conformal", "--family", "Cur", "--table", str(data_dir / "sl2.json"))
    assert res.exit_code == 0, res.output


def test_osborn_iso():
    res = invoke("osborn-iso", "--b", "1/3", "--window", "-1..1 x 0..3")
    assert res.exit_code == 0, res.output


def test_output_file(tmp_path):
    target = tmp_path / "out" / "report.json"
    res = invoke("star-annihilator", "--family", "A2", "--b", "1/2", "--format", "json", "--output", str(target))
    assert res.exit_code == 0, res.output
    reports = ReportWriter().load_report(str(target))
    assert [r.check for r in reports] == ["star-annihilator"]
    assert reports[0].passed


def test_run_returns_exit_codes():
    assert run(["check-axioms", "--family", "A1", "--window", "0..2"]) == 0
    assert run(["check-tortken", "--family", "A1", "--window", "-1..1", "--variant", "printed"]) == 1
    assert run(["check-axioms", "--family", "Witt"]) == 2
    assert run(["no-such-command"]) == 2
    assert run(["check-axioms", "--family", "A1", "--bogus"]) == 2
    assert run(["check-axioms", "--family", "CL1", "--k", "1"]) == 2
