import json
import subprocess
import sys

import pytest

from sba.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_jacobi_passes(capsys):
    code, out, _ = run(capsys, "check-jacobi", "catalog:(C3+A)")
    assert code == 0
    assert "[PASS] super Jacobi: (C3+A)" in out
    assert "(seed=0)" in out


def test_seed_is_echoed_in_json(capsys):
    code, out, _ = run(capsys, "check-jacobi", "catalog:(2A_{1,1}+2A)^3_p", "--json", "--seed", "7",
                       "--samples", "3")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[0]["seed"] == 7 and lines[0]["command"].startswith("sba check-jacobi")
    checks = [x for x in lines if "verdict" in x]
    assert len(checks) == 6 and all(x["verdict"] == "pass" for x in checks)
    assert lines[-1] == {"exit": 0}


def test_reports_are_deterministic(capsys):
    args = ("automorphism-family", "catalog:(C3+A)", "--samples", "3", "--seed", "5")
    assert run(capsys, *args) == run(capsys, *args)


def test_failing_check_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.salg"
    path.write_text('name = "bad"\ngrades = 0 0 1 1\nf 1 1 2 = 1\nf 1 3 3 = 1\n')
    code, out, _ = run(capsys, "check-jacobi", str(path))
    assert code == 1 and "[FAIL] super Jacobi" in out


def test_malformed_file_exits_2_with_position(capsys, tmp_path):
    path = tmp_path / "broken.salg"
    path.write_text('name = "x"\ngrades = 0 0 1 1\nf 1 2 = 1\n')
    code, _, err = run(capsys, "check-jacobi", str(path))
    assert code == 2
    assert f"{path}:3:" in err


@pytest.mark.parametrize("argv", [
    ["check-jacobi", "catalog:nope"],
    ["check-jacobi", "missing.salg"],
    ["check-jacobi", "catalog:(C3+A)", "--set", "p=1"],
    ["check-jacobi", "catalog:(2A_{1,1}+2A)^3_p", "--set", "p=-2"],
    ["check-jacobi", "catalog:(2A_{1,1}+2A)^3_p", "--set", "p"],
    ["hopf-verify", "prop9"],
    ["no-such-command"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_schouten_row4(capsys):
    code, out, _ = run(capsys, "schouten", "catalog-pair:row4", "--skew", "--set", "eps=1",
                       "--set", "k=2")
    assert code == 0
    # k(eps + k/4)/2 at eps = 1, k = 2
    assert "[[r, r]] = 3/2 X2^X3^X3" in out
    code, out, _ = run(capsys, "schouten", "catalog-pair:row4", "--skew", "--symbolic")
    assert "(1/2*eps*k + 1/8*k^2) X2^X3^X3" in out


def test_schouten_dual_side_reduces_signs(capsys):
    code, out, _ = run(capsys, "schouten", "catalog-pair:row4", "--skew", "--dual", "--symbolic")
    assert "(1/2*eps + 1/8*k) X~^1^X~^4^X~^4" in out


def test_schouten_needs_an_r(capsys):
    code, _, err = run(capsys, "schouten", "catalog:I_(2,2)")
    assert code == 2 and "--r FILE" in err


def test_schouten_from_file(capsys, tmp_path):
    path = tmp_path / "r.txt"
    path.write_text("w 4 4 = 1\n")
    code, out, _ = run(capsys, "triangularity", "catalog-pair:row1", "--r", str(path))
    assert code == 0 and "verdict: not-GCYBE" in out


def test_bialgebra_commands(capsys):
    assert run(capsys, "check-bialgebra", "catalog:(C3+A)^eps_k", "--samples", "2")[0] == 0
    assert run(capsys, "mixed-sji", "catalog-pair:row3")[0] == 0
    code, out, _ = run(capsys, "double", "catalog-pair:row2")
    assert code == 0 and "{X4, X4} = (1) X2" in out
    code, out, _ = run(capsys, "solve-r", "catalog-pair:row1")
    assert code == 0 and "dimension" in out
    code, out, _ = run(capsys, "cocomm", "catalog-pair:row2")
    assert "delta(X4) = (1) X2 (x) X3 + (-1) X3 (x) X2" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "catalog:(C3+A)^eps_k", "--set", "eps=-1", "--set", "k=3")
    assert code == 0 and "equivalent to (C3+A)^eps_k [eps=-1, k=3]" in out
    code, out, _ = run(capsys, "classify", "catalog:I_(2,2)", "catalog:(C3+A)^eps")
    assert code == 0 and "inequivalent" in out


def test_hopf_and_phase(capsys):
    assert run(capsys, "hopf-verify", "prop6", "--order", "3")[0] == 0
    assert run(capsys, "hopf-verify", "prop5-printed", "--order", "2")[0] == 1
    assert run(capsys, "phase-verify", "--deformed", "--order", "2")[0] == 0
    code, out, _ = run(capsys, "phase-verify", "--deformed", "--printed", "--order", "2")
    assert code == 1 and "[FAIL] deformed (as printed) realization: {S(Q-), S(Q-)}" in out
    code, out, _ = run(capsys, "phase-show")
    assert "S(Q+) = q1*pi2" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sba.cli", "verify-theorem1", "--case", "2",
                           "--samples", "2"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "[PASS] solution case (2)" in proc.stdout
