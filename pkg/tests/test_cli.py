import json
import os
import subprocess
import sys

import pytest

from khphi.cli import main

TREFOIL_PD = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
SRC = os.path.join(os.path.dirname(__file__), "..", "src")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_phi_pd_alpha(capsys):
    code, out, _ = run(capsys, "phi", "--pd", TREFOIL_PD, "--alpha", "1/2", "--no-cache")
    assert code == 0
    data = json.loads(out)
    pts = {b["alpha"]: b["value"] for b in data["phi"]["breakpoints"]}
    assert pts == {"0": "0", "1": "-2", "2": "0"}
    assert data["alpha"]["value"] == "-1"
    assert data["s"] == data["s_lee"] == -2


def test_phi_unknot_zero_curve(capsys):
    code, out, _ = run(capsys, "phi", "--knot", "torus:1,1", "--no-cache")
    assert code == 0
    data = json.loads(out)
    assert [(b["alpha"], b["value"]) for b in data["phi"]["breakpoints"]] == [("0", "0"), ("2", "0")]


def test_phi_text_svg_csv(capsys, tmp_path):
    svg, csvf = tmp_path / "c.svg", tmp_path / "c.csv"
    code, out, _ = run(capsys, "phi", "--knot", "torus:2,3", "--format", "text",
                       "--svg", str(svg), "--csv", str(csvf), "--no-cache")
    assert code == 0
    assert "phi: (0, 0) (1, 2) (2, 0)" in out
    assert svg.read_text().startswith("<svg")
    assert "polyline" in svg.read_text()
    rows = csvf.read_text().strip().splitlines()
    assert len(rows) == 202
    assert rows[-1].startswith("2,0")


def test_cache_is_used_and_identical(capsys, tmp_path):
    cache = str(tmp_path / "cache")
    _, first, _ = run(capsys, "phi", "--knot", "torus:2,5", "--cache-dir", cache)
    assert os.listdir(cache)
    _, second, _ = run(capsys, "phi", "--knot", "torus:2,5", "--cache-dir", cache)
    _, fresh, _ = run(capsys, "phi", "--knot", "torus:2,5", "--no-cache")
    assert first == second == fresh


@pytest.mark.parametrize("argv", [
    ["phi", "--knot", "torus:2,4"],
    ["phi", "--pd", "X(1,2,3)"],
    ["phi", "--knot", "torus:2,3", "--alpha", "3"],
    ["phi", "--knot", "torus:2,3", "--frobenius", "1"],
    ["phi"],
    ["complex", "load", "/nonexistent/file.json"],
])
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv, "--no-cache") if argv[0] == "phi" else run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_computation_error_exit_2(capsys):
    # undeformed constants leave the whole Khovanov homology, not a single class
    code, _, err = run(capsys, "phi", "--knot", "torus:2,3", "--frobenius", "0,0", "--no-cache")
    assert code == 2
    assert "computation error" in err


def test_missing_basepoint_root_is_input_error(capsys):
    code, _, err = run(capsys, "phi", "--knot", "torus:2,3", "--frobenius", "0,2", "--no-cache")
    assert code == 1
    assert "rational basepoint root" in err


def test_kh_table(capsys):
    code, out, _ = run(capsys, "kh", "--knot", "torus:2,3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["h", "q", "delta", "rank"]
    assert len(lines) == 4


def test_batch_is_deterministic(capsys, tmp_path):
    inp = tmp_path / "knots.csv"
    inp.write_text("knot\ntorus:2,3\ntorus:3,4\nmirror:torus:2,3\n")
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "batch", "--input", str(inp), "--out-dir", str(a), "--jobs", "2")[0] == 0
    assert run(capsys, "batch", "--input", str(inp), "--out-dir", str(b), "--jobs", "1",
               "--no-cache")[0] == 0
    for name in ("results.csv", "knot000.json", "knot001.json", "knot002.json"):
        assert (a / name).read_text() == (b / name).read_text()
    rows = (a / "results.csv").read_text().strip().splitlines()
    assert rows[1].endswith(",true") and rows[2].endswith(",true")
    assert rows[3].startswith('"mirror:torus:2,3"')


def test_complex_dump_load_roundtrip(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert run(capsys, "complex", "dump", "--knot", "pretzel:-2,3,5", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "complex", "load", str(path), "--alpha", "1/2")
    assert code == 0
    info = json.loads(out)
    assert info["round_trip"] and info["d_squared_zero"] and info["bounded"]
    assert info["homology_dimension"] == 1
    assert info["alpha"] == ["1/2", "4"]


def test_complex_load_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"basis": []')
    assert run(capsys, "complex", "load", str(path))[0] == 1


def test_verify_axioms(capsys):
    code, out, _ = run(capsys, "verify", "axioms")
    assert code == 0
    assert "FAIL" not in out


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=SRC)
    r = subprocess.run([sys.executable, "-m", "khphi", "--version"], capture_output=True,
                       text=True, env=env)
    assert r.returncode == 0
    assert r.stdout.strip() == "0.1.0"
