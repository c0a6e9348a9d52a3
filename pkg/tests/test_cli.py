import csv
import io
import json
import os
import subprocess
import sys

import pytest

from gammakit import families as fam
from gammakit.cli import main, table_rows
from gammakit.exactalg import ZERO, variables


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "gammakit", *args], capture_output=True, text=True, env=env)


@pytest.mark.parametrize("family,n,want", [("A_xys", 2, "s + y"), ("dB_xq", 1, "q"), ("Phi", 0, "0")])
def test_poly(capsys, family, n, want):
    assert main(["poly", "--family", family, "--n", str(n)]) == 0
    assert capsys.readouterr().out.strip() == want


def test_poly_oracle_agrees(capsys):
    main(["poly", "--family", "d_xys", "--n", "4"])
    rec = capsys.readouterr().out
    main(["poly", "--family", "d_xys", "--n", "4", "--oracle"])
    assert capsys.readouterr().out == rec


def test_poly_colored_needs_r(capsys):
    assert main(["poly", "--family", "d_xr", "--n", "2"]) == 2
    assert main(["poly", "--family", "d_xr", "--n", "2", "--r", "2"]) == 0
    assert capsys.readouterr().out.strip() == "x^2 + 4*x"


def test_usage_errors():
    assert main(["poly", "--family", "nope", "--n", "2"]) == 2
    assert main(["poly", "--family", "A_xys", "--n", "-1"]) == 2
    assert main(["table", "--table", "gamma"]) == 2
    assert main([]) == 2


def test_bound_exit_code():
    assert main(["poly", "--family", "A_xys", "--n", "12", "--oracle"]) == 3


def test_env_cap():
    env = dict(os.environ, GAMMAKIT_MAX_ELEMENTS="100")
    proc = run("poly", "--family", "d_x", "--n", "6", "--oracle", env=env)
    assert proc.returncode == 3
    assert "cap is 100" in proc.stderr


def test_table_csv(capsys):
    assert main(["table", "--table", "gamma", "--max-n", "2", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    found = {(r["n"], r["i"], r["j"]): r["value"] for r in rows}
    assert found[("2", "0", "1")] == "1"
    assert found[("2", "2", "0")] == "1"


def test_table_json(tmp_path):
    out = tmp_path / "b.json"
    assert main(["table", "--table", "b_of_p", "--max-n", "2", "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["schema_version"] == "1"
    assert {"n": 1, "i": 1, "j": 0, "value": "p"} in data["entries"]


def test_W_triangle_row_gives_A4():
    x, = variables("x")
    row = [r for r in table_rows("W", 4) if r["n"] == 4]
    poly = sum((int(r["value"]) * 4 ** r["i"] * x ** r["i"] * (1 + x) ** (3 - 2 * r["i"]) for r in row), ZERO)
    assert poly == 2 ** 3 * fam.A_x(4)


def test_verify_suites():
    assert main(["verify", "--suite", "gamma", "--max-n", "6"]) == 0
    assert main(["verify", "--suite", "identities", "--max-n", "1"]) == 0
    assert main(["verify", "--suite", "bijection", "--max-n", "6"]) == 0


def test_verify_json_shape():
    proc = run("verify", "--suite", "bijection", "--max-n", "4", "--json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["schema_version"] == "1"
    assert data["status"] == "pass"
    assert "wall_time" not in data
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)


def test_verify_bound_status():
    env = dict(os.environ, GAMMAKIT_MAX_ELEMENTS="50")
    proc = run("verify", "--suite", "bijection", "--max-n", "6", "--json", env=env)
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["counts"]["bound"] > 0
