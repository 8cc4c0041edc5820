"""Command-line interface: subcommands, exit codes, determinism."""

import json
import subprocess
import sys

import baxcat as bx
from baxcat.cli import main


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "baxcat.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_catalog_list():
    rc, out, _ = run_cli(["catalog", "list"])
    assert rc == 0
    assert "su2" in out and "ty" in out and "g2" in out


def test_baxterize_json_value():
    rc, out, _ = run_cli(["--format", "json", "baxterize", "--family", "su2",
                          "--level", "4", "--rho", "1/2", "--phi", "1", "--mu", "2"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["verdict"] == "TREE_UNIQUE"
    ratios = doc["evaluations"][0]["edge_ratios"]
    re, im = (float(x) for x in ratios["0/1"])
    # paper-normalised ratio A_0/A_1 at k=4, mu=2 is exp(-i pi/3)
    assert abs(complex(re, im) - complex(0.5, -0.8660254037844386)) < 1e-12


def test_baxterize_byte_identical():
    args = ["--format", "json", "baxterize", "--family", "ty", "--M", "5",
            "--rho", "X", "--phi", "1", "--mu", "1.7+0.3j"]
    rc1, out1, _ = run_cli(args)
    rc2, out2, _ = run_cli(args)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_classify_negative_row():
    rc, out, _ = run_cli(["classify", "--family", "su2", "--level", "8"])
    assert rc == 0
    assert "(3/2, 2): INCONSISTENT" in out
    assert "(3/2, 1): TREE_UNIQUE" in out


def test_verify_ybe_ty_pass():
    rc, out, _ = run_cli(["verify", "ybe", "--family", "ty", "--M", "4",
                          "--rho", "X", "--phi", "1", "--samples", "25",
                          "--seed", "7"])
    assert rc == 0
    assert "pass" in out


def test_verify_deterministic_output():
    args = ["--format", "json", "verify", "ybe", "--family", "su2", "--level", "3",
            "--rho", "1/2", "--phi", "1", "--samples", "5", "--seed", "11"]
    rc1, out1, _ = run_cli(args)
    rc2, out2, _ = run_cli(args)
    assert rc1 == rc2 == 0 and out1 == out2


def test_verify_loop():
    rc, out, _ = run_cli(["verify", "loop", "--samples", "10", "--seed", "3"])
    assert rc == 0
    assert "pass" in out


def test_verify_projectors():
    rc, out, _ = run_cli(["verify", "projectors", "--family", "su2", "--level", "2",
                          "--rho", "1/2", "--L", "4"])
    assert rc == 0


def test_verify_braid():
    rc, out, _ = run_cli(["--format", "json", "verify", "braid", "--family", "su2",
                          "--level", "3", "--rho", "1/2", "--phi", "1"])
    assert rc == 0
    doc = json.loads(out)
    names = {c["check"] for c in doc["checks"]}
    assert {"r_at_identity", "reidemeister2", "reidemeister3"} <= names


def test_verify_transfer():
    rc, out, _ = run_cli(["verify", "transfer", "--family", "su2", "--level", "3",
                          "--rho", "1/2", "--phi", "1", "--L", "4", "--samples", "3"])
    assert rc == 0


def test_inconsistent_solution_exit_code():
    rc, _, _ = run_cli(["baxterize", "--family", "su2", "--level", "8",
                        "--rho", "3/2", "--phi", "2"])
    assert rc == 1


def test_usage_errors_exit_2():
    rc, _, err = run_cli(["baxterize", "--family", "su2", "--rho", "1/2",
                          "--phi", "1"])            # missing --level
    assert rc == 2
    rc, _, _ = run_cli(["--bogus-flag"])
    assert rc == 2
    rc, _, _ = run_cli(["baxterize", "--family", "su2", "--level", "2",
                        "--rho", "7/2", "--phi", "1"])   # no such label
    assert rc == 2


def test_export_category_round_trip(tmp_path):
    path = tmp_path / "cat.json"
    rc = main(["baxterize", "--family", "ty", "--M", "3", "--rho", "X",
               "--phi", "1", "--export-category", str(path)])
    assert rc == 0
    cat = bx.category_from_json(path.read_text())
    assert cat.name == "ty_3"
    assert cat.representable


def test_table_numbers_round_trip_through_json():
    args = ["baxterize", "--family", "su2", "--level", "2", "--rho", "1/2",
            "--phi", "1", "--mu", "2"]
    rc, table, _ = run_cli(args)
    rc2, js, _ = run_cli(["--format", "json", *args])
    doc = json.loads(js)
    amp = doc["evaluations"][0]["amplitudes"]["1"]
    val = complex(float(amp[0]), float(amp[1]))
    assert f"{val:.12g}" in table
