"""Command-line contract: formats, exit codes, config merging, determinism.

Data goes to stdout, diagnostics to stderr, numbers carry 17 significant
digits, and a repeated invocation is byte-identical.
"""

import json
import os
import re
import subprocess
import sys

import pytest
from click.testing import CliRunner

from wgquant.cli import main

SCI = re.compile(r"^-?\d\.\d{16}e[+-]\d{2,3}$")


def run_cli(args, **kwargs):
    return CliRunner().invoke(main, args, **kwargs)


def test_modes_text_table():
    res = run_cli(["modes", "--kind", "rect", "--w", "0.02", "--d", "0.01",
                   "--fmax", "2.5e10"])
    assert res.exit_code == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0].split() == ["family", "n", "m", "k_c", "[1/m]", "omega_c", "[rad/s]"]
    assert len(lines) == 9  # header + eight branches
    assert lines[1].split()[0] == "te-rect"


def test_modes_json_format():
    res = run_cli(["modes", "--kind", "rect", "--w", "0.02", "--d", "0.01",
                   "--fmax", "2.5e10", "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.stdout)
    assert payload["geometry"]["kind"] == "rect"
    assert len(payload["modes"]) == 8
    assert payload["modes"][0]["family"] == "te-rect"
    assert payload["modes"][0]["f_c"] == pytest.approx(7.4948114500e9, rel=1e-10)


def test_modes_plates_tem_only():
    res = run_cli(["modes", "--kind", "plates", "--d", "0.01", "--fmax", "1e9"])
    assert res.exit_code == 0
    rows = res.stdout.strip().splitlines()[1:]
    assert len(rows) == 1 and rows[0].startswith("tem")


def test_invalid_geometry_exits_2():
    res = run_cli(["modes", "--kind", "plates", "--d", "-1", "--fmax", "1e9"])
    assert res.exit_code == 2
    res = run_cli(["modes", "--kind", "plates", "--fmax", "1e9"])  # d missing
    assert res.exit_code == 2
    res = run_cli(["field", "--kind", "rect", "--w", "0.02", "--d", "0.01",
                   "--L", "0.5", "--family", "tem"])  # no TEM on a tube
    assert res.exit_code == 2


def test_field_csv_shape_and_ordering():
    res = run_cli(["field", "--kind", "rect", "--w", "0.023", "--d", "0.01",
                   "--L", "0.25", "--family", "tm", "--n", "1", "--m", "1",
                   "--l", "2", "--nx", "3", "--ny", "2", "--nz", "2"])
    assert res.exit_code == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz"
    assert len(lines) == 1 + 3 * 2 * 2
    # x varies fastest: first two data rows differ in x, agree in y and z
    r1, r2 = lines[1].split(","), lines[2].split(",")
    assert r1[0] != r2[0] and r1[1] == r2[1] and r1[2] == r2[2]
    for cell in lines[1].split(","):
        assert SCI.match(cell), cell


def test_field_with_potentials_header():
    res = run_cli(["field", "--kind", "plates", "--w", "0.1", "--d", "0.008",
                   "--L", "0.3", "--family", "tem", "--nx", "2", "--ny", "2",
                   "--nz", "2", "--with-potentials"])
    assert res.exit_code == 0
    head = res.stdout.splitlines()[0]
    assert head == "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz,Ax,Ay,Az,V"


def test_verify_json_and_exit_codes():
    base = ["verify", "--kind", "rect", "--w", "0.023", "--d", "0.01",
            "--L", "0.25", "--family", "te", "--n", "1", "--m", "1", "--l", "2"]
    res = run_cli(base)
    assert res.exit_code == 0
    report = json.loads(res.stdout)
    assert report["all_passed"] is True
    assert len(report["checks"]) == 10
    assert "verification passed" in res.stderr

    bad = run_cli(base + ["--fault", "drop-kc-term"])
    assert bad.exit_code == 1
    rep2 = json.loads(bad.stdout)
    assert rep2["all_passed"] is False


def test_zpf_csv_and_tem_is_flat():
    res = run_cli(["zpf", "--kind", "plates", "--w", "0.1", "--d", "0.008",
                   "--L", "0.3", "--family", "tem", "--l-min", "1",
                   "--l-max", "1000", "--points", "7"])
    assert res.exit_code == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "l,ratio"
    for row in lines[1:]:
        l_str, ratio = row.split(",")
        assert int(l_str) >= 1
        assert float(ratio) == pytest.approx(1.0, rel=1e-13)
    assert "sqrt(2)" in res.stderr


def test_config_file_merge_and_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "kind": "rect", "w": 0.023, "d": 0.01, "L": 0.25,
        "family": "tm", "n": 1, "m": 1, "l": 2, "nx": 2, "ny": 2, "nz": 2,
    }))
    a = run_cli(["field", "--config", str(cfg)])
    assert a.exit_code == 0
    b = run_cli(["field", "--config", str(cfg), "--l", "2"])
    assert b.stdout == a.stdout  # explicit flag equal to config value
    c = run_cli(["field", "--config", str(cfg), "--l", "3"])
    assert c.exit_code == 0 and c.stdout != a.stdout
    bad = tmp_path / "broken.json"
    bad.write_text("[1, 2]")
    assert run_cli(["field", "--config", str(bad)]).exit_code == 2


def test_out_option_writes_the_same_bytes(tmp_path):
    args = ["zpf", "--kind", "rect", "--w", "0.01", "--d", "0.01", "--L", "1.0",
            "--family", "tm", "--n", "1", "--m", "1", "--l-min", "1",
            "--l-max", "100", "--points", "5"]
    res = run_cli(args)
    out = tmp_path / "sweep.csv"
    res2 = run_cli(args + ["--out", str(out)])
    assert res2.exit_code == 0
    assert out.read_text() == res.stdout


def test_repeated_runs_are_byte_identical():
    env = dict(os.environ, WGQUANT_THREADS="1")
    cmd = [sys.executable, "-m", "wgquant.cli", "field", "--kind", "rect",
           "--w", "0.023", "--d", "0.01", "--L", "0.25", "--family", "te",
           "--n", "0", "--m", "2", "--l", "1", "--nx", "4", "--ny", "3",
           "--nz", "3", "--with-potentials"]
    a = subprocess.run(cmd, capture_output=True, env=env, check=True)
    b = subprocess.run(cmd, capture_output=True, env=env, check=True)
    assert a.stdout == b.stdout and len(a.stdout) > 0


def test_thread_cap_env_propagates():
    code = ("import wgquant, os; "
            "print(all(os.environ.get(v) == '2' for v in "
            "('OMP_NUM_THREADS', 'OPENBLAS_NUM_THREADS', 'MKL_NUM_THREADS')))")
    env = {k: v for k, v in os.environ.items()
           if not k.endswith("_NUM_THREADS")}
    env["WGQUANT_THREADS"] = "2"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         env=env, check=True)
    assert out.stdout.strip() == b"True"
