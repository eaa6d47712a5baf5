import json
import subprocess
import sys
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

E11 = """dim 3
label e(1,1)
bracket 1 2 : 0 1 0
bracket 1 3 : 0 0 -1
theta : -1 0 0
"""

BROKEN = """dim 3
bracket 1 2 : 0 0 1
bracket 1 3 : 1 0 0
"""

ALMAB = """dim 1
block A : 1
block B : 0 -1 ; 1 0
"""


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "lcplab.cli", *args], capture_output=True, text=True
    )


@pytest.fixture()
def e11_doc(tmp_path):
    p = tmp_path / "e11.lcp"
    p.write_text(E11)
    return str(p)


def test_check(e11_doc):
    out = run_cli("check", "--input", e11_doc)
    assert out.returncode == 0
    assert "unimodular: True" in out.stdout


def test_check_jacobi_violation(tmp_path):
    p = tmp_path / "broken.lcp"
    p.write_text(BROKEN)
    out = run_cli("check", "--input", str(p))
    assert out.returncode == 1
    assert "jacobi_ok: False" in out.stdout
    assert "jacobi_witness: (0, 1, 2)" in out.stdout


def test_detect(e11_doc):
    out = run_cli("detect", "--input", e11_doc)
    assert out.returncode == 0
    assert "adapted, flat_dim=1" in out.stdout


def test_verify(e11_doc):
    out = run_cli("verify", "--input", e11_doc)
    assert out.returncode == 0
    assert "verification: pass" in out.stdout
    assert "structural audit: pass" in out.stdout


def test_verify_explicit_flat_failure(tmp_path):
    # span(e2) is not a flat subspace for this Lee form: exit 1
    p = tmp_path / "bad_flat.lcp"
    p.write_text(E11 + "flat : 0 1 0\n")
    out = run_cli("verify", "--input", str(p))
    assert out.returncode == 1
    assert "verification: FAIL" in out.stdout


def test_construct_error_exit_code(tmp_path):
    p = tmp_path / "tz.lcp"
    p.write_text("dim 1\nblock A : 0\nblock B : 0\n")
    out = run_cli("construct", "almab", "--input", str(p))
    assert out.returncode == 2
    assert "TraceZero" in out.stderr


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.lcp"
    p.write_text("dim 3\nbracket 1 2 : 0 2/4 0\n")
    out = run_cli("check", "--input", str(p))
    assert out.returncode == 2
    assert "line 2" in out.stderr


def test_missing_file():
    assert run_cli("check", "--input", "/nonexistent.lcp").returncode == 2


def test_construct_almab(tmp_path):
    p = tmp_path / "almab.lcp"
    p.write_text(ALMAB)
    out = run_cli("construct", "almab", "--input", str(p))
    assert out.returncode == 0
    assert "flat_dim=2" in out.stdout


def test_construct_amalgam(e11_doc):
    out = run_cli("construct", "amalgam", "--input", e11_doc, "--with", e11_doc)
    assert out.returncode == 0
    assert "dim 5" in out.stdout and "flat_dim=2" in out.stdout


def test_lattice_search_machine_roundtrip(e11_doc):
    out = run_cli(
        "lattice", "search", "--input", e11_doc, "--t-range", "0:2", "--format", "machine"
    )
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["status"] == "yes"
    assert payload["witnesses"][0]["integral_matrix"] == [[0, -1], [1, 3]]
    # determinism: a second run yields the identical report
    out2 = run_cli(
        "lattice", "search", "--input", e11_doc, "--t-range", "0:2", "--format", "machine"
    )
    assert out2.stdout == out.stdout


def test_lattice_certify(e11_doc):
    out = run_cli(
        "lattice", "certify", "--input", e11_doc,
        "--t0", "0.9624236501192069", "--poly", "1,-3,1",
    )
    assert out.returncode == 0
    assert "certified" in out.stdout


def test_tables_matches_golden():
    out = run_cli("tables")
    assert out.returncode == 0
    golden = (DATA / "golden_tables.txt").read_text()
    assert out.stdout == golden


def test_tables_machine_deterministic():
    a = run_cli("tables", "--format", "machine")
    b = run_cli("tables", "--format", "machine")
    assert a.returncode == 0 and a.stdout == b.stdout
    rows = json.loads(a.stdout)
    assert all(r["witnesses_ok"] for r in rows)


def test_fixture_dir_override(tmp_path):
    import os

    # a populated override works; an empty one is an input error
    from lcplab.fixtures import write_fixture_corpus

    alt = tmp_path / "corpus"
    write_fixture_corpus(alt)
    env = dict(os.environ, LCPLAB_FIXTURES=str(alt))
    out = subprocess.run(
        [sys.executable, "-m", "lcplab.cli", "tables"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode == 0
    assert out.stdout == (DATA / "golden_tables.txt").read_text()
    env["LCPLAB_FIXTURES"] = str(tmp_path / "empty")
    out2 = subprocess.run(
        [sys.executable, "-m", "lcplab.cli", "tables"],
        capture_output=True, text=True, env=env,
    )
    assert out2.returncode == 2
