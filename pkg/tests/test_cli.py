import json
import subprocess
import sys
from fractions import Fraction

import pytest

import capelli.cli as cli
from capelli.poly import MultiPoly
from capelli.verify import SuiteReport

C2 = ["--case", "classical", "--n", "2", "--r", "1/5", "--s", "3/7"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_rank_one(capsys):
    code, out, _ = run(capsys, "compute", "--case", "rank-one", "--s", "3/2", "--lambda", "2")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "capelli/1"
    assert MultiPoly.from_json(data["p"]) == MultiPoly(1, {(2,): Fraction(1, 2), (1,): -2, (0,): Fraction(15, 8)})
    assert data["d_lambda"] == "6"
    code, out, _ = run(capsys, "compute", "--case", "rank-one", "--s", "3/2", "--lambda", "2", "--format", "text")
    assert "p = 1/2*z^2 - 2*z + 15/8" in out


def test_compute_kinds_and_latex(capsys):
    code, out, _ = run(capsys, "compute", *C2, "--lambda", "1,0", "--kind", "p")
    data = json.loads(out)
    assert code == 0 and "q" not in data and data["d_lambda"] == "74/35"
    code, out, _ = run(capsys, "compute", *C2, "--lambda", "1,0", "--format", "latex")
    assert code == 0 and "z_{1}" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--case", "rank-one", "--s", "1/3", "--max-ell", "3")
    data = json.loads(out)
    assert code == 0
    assert data["values"][1][3] == "3"  # C(3, 1)


def test_op(capsys, tmp_path):
    target = tmp_path / "op.json"
    code, out, _ = run(capsys, "op", *C2, "--which", "D_of", "--h", "ell^2", "--truncation", "2",
                       "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["operator"].startswith("D[")
    code, out, _ = run(capsys, "op", *C2, "--which", "m_of", "--h", "orbit:2,0", "--truncation", "3")
    assert code == 0 and json.loads(out)["degree_shift"] == 2


def test_verify_pass_and_text(capsys):
    code, out, _ = run(capsys, "verify", *C2, "--suite", "symmetry", "--max-ell", "2", "--format", "text")
    assert code == 0 and out.startswith("PASS symmetry")
    code, out, _ = run(capsys, "verify", "--case", "rank-one", "--s", "1/3", "--suite", "all", "--max-ell", "2")
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["reports"]) == 12


def test_verify_failure_exit_code(capsys, monkeypatch):
    def failing(name, datum, rho, max_ell):
        rep = SuiteReport(name, datum.case, datum.n, rho.r, rho.s, max_ell)
        rep.equal("forced", [], 1, 2)
        return rep

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", *C2, "--suite", "symmetry", "--format", "text")
    assert code == 1
    assert "FAIL symmetry" in out and "residual -1" in out


def test_rank_one_demo(capsys):
    code, out, _ = run(capsys, "rank-one-demo", "--s", "5/7", "--max-ell", "3", "--format", "text")
    assert code == 0 and "closed forms: PASS" in out
    code, out, _ = run(capsys, "rank-one-demo", "--s", "5/7", "--max-ell", "2", "--format", "latex")
    assert code == 0 and out.count("\n") == 3


@pytest.mark.parametrize("argv,needle", [
    (["verify", "--case", "rank-one", "--s", "-1", "--suite", "sl2"], "strongly_dominant"),
    (["compute", "--case", "classical", "--n", "2", "--r", "-1", "--s", "1/3", "--lambda", "1,0"], "dominant"),
    (["compute", *C2, "--lambda", "0,1"], "weakly decreasing"),
    (["compute", *C2, "--lambda", "1"], "2 entries"),
    (["verify", *C2, "--suite", "nope"], "unknown suite"),
    (["verify", *C2, "--suite", "rank_one_closed_forms"], "unknown suite"),
    (["op", *C2, "--which", "D_of", "--truncation", "2"], "error"),
])
def test_usage_and_precondition_errors(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


@pytest.mark.parametrize("argv", [
    ["compute", "--case", "rank-one", "--s", "1/0", "--lambda", "1"],
    ["compute", "--case", "rank-one", "--s", "0.5", "--lambda", "1"],
    ["compute", "--case", "exotic", "--s", "1", "--lambda", "1"],
    ["frobnicate"],
])
def test_argparse_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "capelli", "verify", "--case", "semiclassical", "--n", "2",
            "--r", "2/3", "--s", "5/11", "--suite", "all", "--max-ell", "2", "--jobs", "2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv[:-2], capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["passed"] is True
