import json
import subprocess
import sys
from pathlib import Path

import pytest

from qaswitch.cli import main

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def values(rep):
    return {r["name"]: r["value"] for r in rep["results"] if "value" in r}


def test_focus_first_value(capsys):
    code, rep, _ = run(capsys, "focus", INPUTS / "quadratic.json", "--order", 3)
    assert code == 0
    assert set(rep) == {"schema_version", "command", "inputs", "results", "discrepancies"}
    assert values(rep)["V_2"] == "(2/3)*lambda*a11+(2/3)*lambda*b20+(4/3)*lambda*b02"
    assert values(rep)["2*pi*delta"] == "0"


def test_focus_symmetric_is_zero(capsys):
    code, rep, _ = run(capsys, "focus", INPUTS / "symmetric.json", "--order", 6)
    assert code == 0 and all(v == "0" for v in values(rep).values())


def test_focus_center_ii(capsys):
    _, rep, _ = run(capsys, "focus", INPUTS / "quadratic.json", "--subs", INPUTS / "cond_ii.json", "--order", 8)
    assert all(v == "0" for v in values(rep).values())


def test_period_commands(capsys):
    _, rep, _ = run(capsys, "period", INPUTS / "linear.json", "--order", 4)
    assert all(v == "0" for v in values(rep).values())
    _, rep, _ = run(capsys, "period", INPUTS / "quadratic.json", "--subs", INPUTS / "cond_III.json", "--order", 8)
    assert all(v == "0" for v in values(rep).values())


def test_period_condition_i_lists_printed_comparison(capsys):
    code, rep, _ = run(capsys, "period", INPUTS / "quadratic.json", "--subs", INPUTS / "cond_i.json", "--order", 6)
    assert code == 0
    status = {r["name"]: r["status"] for r in rep["results"] if "status" in r}
    assert [status[f"tau_{m}"] for m in range(1, 6)] == ["PASS"] * 5
    assert status["tau_6"] == "DISCREPANCY"
    assert [d["claim"] for d in rep["discrepancies"]] == ["tau_6"]


def test_verify_single_condition(capsys):
    code, rep, _ = run(capsys, "verify", "--condition", "(iv)")
    assert code == 0 and rep["results"][0]["status"] == "PASS"


def test_verify_unknown_condition(capsys):
    code, _, err = run(capsys, "verify", "--condition", "bogus")
    assert code == 2 and "bogus" in err


def test_eliminate(capsys):
    code, rep, _ = run(capsys, "eliminate", "--case", "A1a")
    assert code == 0
    pipe = rep["results"][0]
    assert pipe["det_J"] == "(8384103915264/78125)*a20^10"
    assert pipe["lambda_star"] == "-16/5"
    assert {d["claim"] for d in rep["discrepancies"]} == {
        "f_1 on the branch equals the printed product",
        "positive k-roots at lambda = 1/10",
    }


def test_roots(capsys):
    code, rep, _ = run(capsys, "roots", "--poly", "lambda^2-2", "--precision", "1e-10")
    assert code == 0
    assert [round(r["value"], 8) for r in rep["results"]] == [-1.41421356, 1.41421356]


def test_simulate_two_cycles(capsys):
    code, rep, _ = run(
        capsys, "simulate", INPUTS / "quadratic.json", INPUTS / "two_cycle_params.json", "--hmin", 0.01, "--hmax", 0.3, "--grid", 30
    )
    assert code == 0
    assert rep["summary"]["sign_changes"] >= 2
    assert len(rep["results"]) == 30


@pytest.mark.parametrize(
    "argv, code",
    [
        (["focus", INPUTS / "quadratic.json", "--order", "13"], 2),
        (["focus", INPUTS / "missing.json"], 2),
        (["roots", "--poly", "lambda^2+"], 2),
        (["roots", "--poly", "lambda*k-1"], 3),
        (["simulate", INPUTS / "quadratic.json", INPUTS / "two_cycle_params.json", "--hmin", "0.2", "--hmax", "0.1"], 3),
        (["eliminate", "--case", "A9"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main([str(a) for a in argv]) == code
    capsys.readouterr()


def test_bad_system_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"lambda": 1.5}')
    code, _, err = run(capsys, "focus", bad)
    assert code == 2 and "exact" in err


def test_delta_precondition(tmp_path, capsys):
    s = json.loads((INPUTS / "quadratic.json").read_text())
    s["delta"] = "delta"
    p = tmp_path / "hot.json"
    p.write_text(json.dumps(s))
    code, _, _ = run(capsys, "focus", p, "--order", 3)
    assert code == 3
    code, rep, _ = run(capsys, "focus", p, "--zeroth-only")
    assert code == 0 and values(rep) == {"2*pi*delta": "2*pi*delta"}


def test_numeric_guard_exit_code(tmp_path, capsys):
    params = {"lambda": 1, "a20": 1, "a02": 1, "a11": 0, "b20": 0, "b11": 0, "b02": 0}
    p = tmp_path / "p.json"
    p.write_text(json.dumps(params))
    code, _, err = run(capsys, "simulate", INPUTS / "quadratic.json", p, "--hmin", 1.5, "--hmax", 2.0, "--grid", 2)
    assert code == 4 and "guard" in err


def test_text_format(capsys):
    code, out, _ = run(capsys, "focus", INPUTS / "quadratic.json", "--order", 2, "--format", "text")
    assert code == 0 and "V_2 = (2/3)*lambda*a11" in out


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "qaswitch.cli", "verify", "--condition", "A3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
