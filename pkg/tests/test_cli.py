import json
import subprocess
import sys

import pytest

from conftest import CYCLE4, FANO
from lincnf import build_formula, parse_dimacs, write_dimacs
from lincnf.cli import main
from lincnf.classifier import classify


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, clauses in {
        "fano": FANO,
        "cycle4": CYCLE4,
        "nonmonotone": [[1, -2], [2, 3]],
        "nonlinear": [[1, 2, 3], [1, 2, 4]],
    }.items():
        p = tmp_path / f"{name}.cnf"
        p.write_bytes(write_dimacs(build_formula(clauses)))
        paths[name] = str(p)
    bad = tmp_path / "bad.cnf"
    bad.write_bytes(b"p cnf x 1\n1 0\n")
    paths["bad"] = str(bad)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_fano(files, capsys):
    code, out, _ = run(capsys, "analyze", files["fano"])
    doc = json.loads(out)
    assert code == 0
    assert doc["classes"]["exactLinear"]["holds"] is True
    assert doc["classes"]["disjointedness"] == 0
    assert doc["prescreen"] == "FailModulo(1)"
    assert doc["stats"]["kBar"] == "3/1"
    assert all(r["holds"] for r in doc["identities"])


def test_analyze_cycle(files, capsys):
    code, out, _ = run(capsys, "analyze", files["cycle4"], "--max-d", "1", "--max-mean-d", "1/2")
    doc = json.loads(out)
    assert code == 0
    assert doc["classes"]["regularity"]["value"] == 2
    assert doc["classes"]["uniformity"]["value"] == 2
    assert doc["classes"]["disjointedness"] == 1
    assert doc["classes"]["boundedDisjointedness"]["member"] is True
    assert doc["classes"]["boundedMeanDisjointedness"] == {"maxMeanD": "1/2", "member": False}


def test_analyze_malformed(files, capsys):
    code, _, err = run(capsys, "analyze", files["bad"])
    assert code == 2 and "line 1" in err


def test_analyze_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "nope.cnf"))
    assert code == 2


def test_solve_both(files, capsys):
    code, out, _ = run(capsys, "solve", files["cycle4"], "--method=both")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] is True
    assert doc["oracle"]["modelCount"] == doc["restricted"]["modelCount"] == "2"
    assert doc["restricted"]["vLine"] == "v 1 -2 -3 4 0"


def test_solve_fano_restricted(files, capsys):
    code, out, _ = run(capsys, "solve", files["fano"], "--method=restricted")
    doc = json.loads(out)
    assert code == 0
    assert doc["restricted"]["status"] == "Unsatisfiable"
    assert doc["restricted"]["method"] == "prescreen"


def test_solve_nonmonotone(files, capsys):
    code, _, err = run(capsys, "solve", files["nonmonotone"], "--method=restricted")
    assert code == 4 and "NotMonotone" in err and "witness" in err


def test_solve_budget_from_env(files, capsys, monkeypatch):
    monkeypatch.setenv("LINCNF_BUDGET", "2")
    code, out, _ = run(capsys, "solve", files["cycle4"], "--method=restricted")
    assert json.loads(out)["restricted"]["status"] == "BudgetExhausted"


def test_generate_projective(tmp_path, capsys):
    out = tmp_path / "p.cnf"
    code, _, _ = run(capsys, "generate", "--kind=projective", "--q=2", f"--out={out}")
    doc, f = parse_dimacs(out.read_bytes())
    assert code == 0 and (f.m, f.n) == (7, 7)
    assert doc.comments[0] == "class k=3 l=3 d=0 seed=-"


def test_generate_search_stdout(capsys):
    code, out, _ = run(capsys, "generate", "--kind=search", "--k=2", "--l=2", "--d=1", "--seed=5")
    _, f = parse_dimacs(out.encode())
    r = classify(f)
    assert code == 0 and (r.k, r.l, r.d) == (2, 2, 1)
    assert "c class k=2 l=2 d=1 seed=5" in out


def test_generate_inconsistent(capsys):
    code, _, err = run(capsys, "generate", "--kind=search", "--k=2", "--l=3", "--d=0")
    assert code == 1 and "InconsistentParameters" in err


def test_generate_is_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        p = tmp_path / f"r{i}.cnf"
        run(capsys, "generate", "--kind=random", "--n=15", "--k-min=2", "--k-max=4", "--seed=9",
            f"--out={p}")
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_verify_fuzz(capsys):
    code, out, _ = run(capsys, "verify", "--fuzz=50", "--seed=42")
    assert code == 0 and "failed: 0" in out


def test_verify_file(files, capsys):
    assert run(capsys, "verify", files["fano"])[0] == 0


def test_verify_nonlinear(files, capsys):
    code, _, err = run(capsys, "verify", files["nonlinear"])
    assert code == 0 and "NotLinear" in err


def test_bench_cycle(capsys):
    code, out, _ = run(capsys, "bench", "--family=cycle", "--t-max=4", "--no-timing")
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    assert code == 0 and [r["candidate_count"] for r in rows] == ["6", "20", "70"]
    assert [r["m_over_l"] for r in rows] == ["2/1", "3/1", "4/1"]
    assert "oracle_seconds" not in header


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "lincnf", "analyze", files["cycle4"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["m"] == 4
