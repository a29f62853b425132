"""End-to-end CLI behavior: commands, formats, exit codes."""
import json
import subprocess
import sys

import pytest

from framecalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- table commands ---------------------------------------------------------------

def test_connection_heisenberg5(capsys):
    code, out, _ = run(capsys, "connection", "--builtin", "heisenberg5")
    assert code == 2
    assert "overall: discrepancies" in out
    assert "nabla_e1 e2 = e3" in out
    assert out.count("pass") == 12
    assert out.count("[connection table") == 1
    assert "expected nabla_e1 e2 = e1; computed nabla_e1 e2 = e3" in out


def test_curvature_ledger_count(capsys):
    code, out, _ = run(capsys, "curvature", "--builtin", "heisenberg5",
                       "--format", "json")
    assert code == 2
    obj = json.loads(out)
    assert obj["overall"] == "discrepancies"
    assert len(obj["items"]) == 48
    assert len(obj["ledger"]) == 4
    assert {e["source"] for e in obj["ledger"]} == {"curvature list"}


def test_ricci_ledger(capsys):
    code, out, _ = run(capsys, "ricci", "--builtin", "heisenberg5",
                       "--format", "json")
    assert code == 2
    obj = json.loads(out)
    assert len(obj["ledger"]) == 3
    assert {e["expected"] for e in obj["ledger"]} == {
        "ric[2][2] = 3", "ric[4][4] = 4", "ric[5][5] = -1"}
    names = {i["name"] for i in obj["items"]}
    assert "ric[3][3] = 4" in names


def test_ricci_clean_manifold(capsys):
    code, out, _ = run(capsys, "ricci", "--builtin", "heisenberg3")
    assert code == 0
    assert "overall: pass" in out


# -- validate -----------------------------------------------------------------------

def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--builtin", "nonjacobi3")
    assert code == 0
    code, out, _ = run(capsys, "validate", "--builtin", "nonjacobi3", "--strict")
    assert code == 1
    assert "jacobi identity" in out
    assert "(1,2,3): -e3" in out


# -- contact commands ------------------------------------------------------------------

def test_contact_commands_pass(capsys):
    for cmd in ("check-contact", "check-sasakian", "check-normality"):
        code, out, _ = run(capsys, cmd, "--builtin", "heisenberg5")
        assert code == 0, cmd
        assert "overall: pass" in out


def test_abelian_contact_vs_sasakian(capsys):
    code, _, _ = run(capsys, "check-contact", "--builtin", "abelian3")
    assert code == 0
    code, _, _ = run(capsys, "check-normality", "--builtin", "abelian3")
    assert code == 0
    code, _, _ = run(capsys, "check-sasakian", "--builtin", "abelian3")
    assert code == 1


def test_contact_command_without_contact_data(capsys):
    code, _, errtext = run(capsys, "check-contact", "--builtin", "nonjacobi3")
    assert code == 3
    assert "no contact structure" in errtext


# -- solve-lambda -----------------------------------------------------------------------

def test_solve_lambda_engine(capsys):
    code, out, _ = run(capsys, "solve-lambda", "--builtin", "heisenberg5",
                       "--field", "0,0,1,0,0", "--flavor", "conformal")
    assert code == 2
    assert "lambda = 1/2*p + -3/5" in out
    assert "10*lambda = 5*p + -6" in out
    assert "status: trace_only" in out
    assert "classification: conditional (shrinking iff p > 6/5)" in out
    # the single ledger line shows both trace equations
    assert ("expected lambda = 1/2*p + 9/5 [trace: 10*lambda = 5*p + 18]; "
            "computed lambda = 1/2*p + -3/5 [trace: 10*lambda = 5*p + -6]") in out


def test_solve_lambda_expected_ricci(capsys):
    code, out, _ = run(capsys, "solve-lambda", "--builtin", "heisenberg5",
                       "--field", "xi", "--flavor", "conformal",
                       "--use-expected-ricci")
    assert code == 0
    assert "lambda = 1/2*p + 9/5" in out
    assert "10*lambda = 5*p + 18" in out
    assert "[ricci override: Eq (3.33)]" in out


def test_solve_lambda_override_needs_expected_values(capsys):
    code, _, errtext = run(capsys, "solve-lambda", "--builtin", "heisenberg3",
                           "--field", "xi", "--flavor", "conformal",
                           "--use-expected-ricci")
    assert code == 3
    assert "no expected ricci" in errtext


def test_solve_lambda_field_validation(capsys):
    code, _, errtext = run(capsys, "solve-lambda", "--builtin", "heisenberg5",
                           "--field", "1,2", "--flavor", "ricci")
    assert code == 3
    assert "5 comma-separated components" in errtext


# -- check-soliton and check-gradient ------------------------------------------------------

def test_check_soliton_pass(capsys):
    code, out, _ = run(capsys, "check-soliton", "--builtin", "abelian5",
                       "--field", "1,0,0,0,0", "--flavor", "ricci",
                       "--lambda", "0")
    assert code == 0
    assert "L_X g + 2 ric - s g = 0" in out


def test_check_soliton_fail(capsys):
    code, out, _ = run(capsys, "check-soliton", "--builtin", "heisenberg5",
                       "--field", "xi", "--flavor", "conformal",
                       "--lambda", "1/2*p + -3/5")
    assert code == 1
    assert "(3,3): 48/5" in out


def test_check_gradient_pass(capsys):
    code, out, _ = run(capsys, "check-gradient", "--builtin", "abelian5",
                       "--df", "1,1,0,0,0", "--dlambda", "0,0,0,0,0",
                       "--flavor", "conformal", "--lambda", "1/2*p + 1/5")
    assert code == 0
    assert "Hess f + ric - s' g = 0" in out
    assert "R(X,Y)Df" in out


def test_check_gradient_nonintegrable(capsys):
    code, out, _ = run(capsys, "check-gradient", "--builtin", "heisenberg5",
                       "--df", "0,0,1,0,0", "--flavor", "ricci",
                       "--lambda", "0")
    assert code == 1
    assert "df integrable" in out
    assert "(1,2): 2" in out


def test_check_gradient_without_dlambda(capsys):
    code, out, _ = run(capsys, "check-gradient", "--builtin", "abelian5",
                       "--df", "1,1,0,0,0",
                       "--flavor", "conformal", "--lambda", "1/2*p + 1/5")
    assert code == 0
    assert "R(X,Y)Df" not in out


# -- theorem36 ---------------------------------------------------------------------------

def test_theorem36(capsys):
    code, out, _ = run(capsys, "theorem36", "--dim", "5")
    assert code == 0
    assert "lambda = 1/2*p + 26/5" in out
    assert "einstein constant = 4" in out
    assert "classification: conditional (shrinking iff p > -52/5)" in out


def test_theorem36_rejects_even(capsys):
    code, _, errtext = run(capsys, "theorem36", "--dim", "4")
    assert code == 3
    assert "odd" in errtext


# -- verify-paper-example -------------------------------------------------------------------

def test_verify_paper_example(capsys):
    code, out, _ = run(capsys, "verify-paper-example", "--format", "json")
    assert code == 2
    obj = json.loads(out)
    assert obj["subject"] == "heisenberg5 worked example"
    assert obj["overall"] == "discrepancies"
    assert all(i["status"] == "pass" for i in obj["items"])
    assert len(obj["ledger"]) == 9
    sources = [e["source"] for e in obj["ledger"]]
    assert sources.count("curvature list") == 4
    assert sources.count("Eq (3.33)") == 3
    assert sources.count("lambda after Eq (3.34)") == 1
    assert sources.count("connection table, duplicated assignment") == 1


# -- files and usage errors -------------------------------------------------------------------

def test_file_input(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("manifold demo dim 3\nbracket e1 e2 = 2*e3\nmetric identity\n",
                 encoding="utf-8")
    code, out, _ = run(capsys, "connection", "--file", str(f))
    assert code == 0
    assert "nabla_e1 e2 = e3" in out


def test_parse_error_exits_3(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("manifold demo dim 3\nbracket e1 e9 = e3\nmetric identity\n",
                 encoding="utf-8")
    code, _, errtext = run(capsys, "connection", "--file", str(f))
    assert code == 3
    assert "line 2" in errtext


def test_missing_file(capsys):
    code, _, errtext = run(capsys, "validate", "--file", "/nonexistent/x.txt")
    assert code == 3
    assert "cannot read" in errtext


def test_subject_flags_are_exclusive(capsys):
    code, _, errtext = run(capsys, "validate", "--builtin", "heisenberg5",
                           "--file", "x")
    assert code == 3
    assert "exactly one" in errtext
    code, _, errtext = run(capsys, "validate")
    assert code == 3


def test_unknown_builtin(capsys):
    code, _, errtext = run(capsys, "validate", "--builtin", "zzz")
    assert code == 3
    assert "abelian3" in errtext


def test_bad_flavor_and_missing_args(capsys):
    code, _, _ = run(capsys, "solve-lambda", "--builtin", "heisenberg5",
                     "--field", "xi", "--flavor", "cubic")
    assert code == 3
    code, _, _ = run(capsys, "solve-lambda", "--builtin", "heisenberg5",
                     "--flavor", "ricci")
    assert code == 3


def test_bad_lambda_expression(capsys):
    code, _, errtext = run(capsys, "check-soliton", "--builtin", "abelian3",
                           "--field", "xi", "--flavor", "ricci",
                           "--lambda", "q + 1")
    assert code == 3
    assert "undeclared parameter" in errtext


def test_unknown_command(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 3


# -- process-level entry points ------------------------------------------------------------------

def test_module_entrypoint_runs():
    proc = subprocess.run([sys.executable, "-m", "framecalc", "theorem36",
                           "--dim", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "lambda = 1/2*p + 10/3" in proc.stdout


def test_help_exits_zero():
    proc = subprocess.run([sys.executable, "-m", "framecalc", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verify-paper-example" in proc.stdout
