import csv
import io
import json
import subprocess
import sys

import pytest

from eala.cli import build_parser, main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims_three_coset_all_match(capsys):
    code, out, _ = run(capsys, "dims", "--jordan", "semilattice:S:v=2,cosets=00+10+01", "--radius", "3")
    rows = json.loads(out)
    assert code == 0
    assert len(rows) == 48 and all(r["match"] for r in rows)
    assert list(rows[0]) == ["sigma", "coset", "op_dim", "d_dim", "c_dim", "total", "predicted", "lemma_tag", "match"]


def test_dims_root_two_csv(capsys):
    code, out, _ = run(capsys, "dims", "--jordan", "quantum:q=root:2", "--radius", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    for r in rows:
        x, y = (int(t) for t in r["sigma"].strip("()").split(","))
        assert (r["op_dim"] == "1") == (x % 2 == 0 and y % 2 == 0)


@pytest.mark.parametrize("args", [
    ["dims", "--jordan", "semilattice:S:v=2,cosets=00+10"],
    ["dims", "--jordan", "nonsense"],
    ["dims", "--radius", "0"],
    ["dims", "--radius", "3", "--tau-radius", "2"],
    ["verify", "--ring", "Q"],
    ["frobnicate"],
    ["dims", "--format", "xml"],
    ["bracket", "Lop (1,0)", "Wat (0,0)"],
    ["bracket", "--radius", "1", "Lop (1,0)", "Comm (1,1;0,1)"],
])
def test_usage_errors_exit_two(capsys, args):
    code, _, _ = run(capsys, *args)
    assert code == 2


def test_verify_laurent_clean(capsys):
    code, out, _ = run(capsys, "verify", "--jordan", "laurent", "--radius", "3", "--ring", "Z")
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == [] and rep["pairs"] >= 10**4


def test_verify_formal_over_integers_fails(capsys):
    code, out, _ = run(capsys, "verify", "--jordan", "quantum:q=formal", "--radius", "2", "--ring", "Z")
    rep = json.loads(out)
    assert code == 1 and rep["failures"]
    assert rep["specializations"]["q=1"]["failures"] == 0
    assert rep["specializations"]["q=-1"]["failures"] == 0


def test_verify_formal_over_laurent_polynomials(capsys):
    code, out, _ = run(capsys, "verify", "--jordan", "quantum:q=formal", "--radius", "2", "--ring", "Z-Laurent")
    rep = json.loads(out)
    assert rep["failures"] == [], rep["failures"][:2]
    assert code == 0


def test_lemmas_given_semilattice(capsys):
    code, out, _ = run(capsys, "lemmas", "--jordan", "semilattice:S:v=2,cosets=00+10+01", "--nu", "2")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert [r["semilattice"] for r in rep["rank_checks"]] == ["S:v=2,cosets=00+10+01"]
    assert all(p["value"] == "-1" for p in rep["pairing_checks"])


def test_lemmas_rank_three(capsys):
    code, out, _ = run(capsys, "lemmas", "--nu", "3", "--radius", "2")
    rep = json.loads(out)
    assert code == 0 and len(rep["rank_checks"]) == 92


def test_lemmas_fault_reports_witness(capsys):
    code, _, err = run(capsys, "lemmas", "--nu", "2", "--inject-fault", "gamma")
    assert code == 1
    assert "counterexample" in err and '"a"' in err


@pytest.mark.parametrize("left,right,expected", [
    ("Xplus (0,0)", "Xminus (0,0)", "1 * Halpha"),
    ("ChiDer (2,0)", "Xplus (1,1)", "-2 * Xplus (3,1)"),
    ("Lop (1,0)", "Lop (1,0)", "0"),
    ("Xplus (1,0)", "Xminus (0,1)", "2 * Comm (1,1;0,1)"),
])
def test_bracket_examples(capsys, left, right, expected):
    code, out, _ = run(capsys, "bracket", left, right)
    assert code == 0 and out.strip() == expected


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["verify", "--jordan", "hermitian:sign=-1", "--radius", "2", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    for p in (a, b):
        assert main(["dims", "--jordan", "laurent", "--radius", "2", "--format", "csv", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_worker_default_from_environment(monkeypatch):
    monkeypatch.setenv("EALA_WORKERS", "3")
    assert build_parser().parse_args(["dims"]).workers == 3
    monkeypatch.setenv("EALA_WORKERS", "junk")
    assert build_parser().parse_args(["dims"]).workers == 1


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "eala.cli", "bracket", "Xplus (0,0)", "Xminus (0,0)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "1 * Halpha"
