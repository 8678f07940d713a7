import csv
import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from dkpstring import cli


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.run(argv)
    return code, out.getvalue(), err.getvalue()


def test_solve_canonical_has_kappa2_eight():
    code, out, _ = run(["solve", "--state", "n0", "--regime", "small", "--M", "1", "--q", "1",
                        "--m", "1", "--k", "1", "--omega", "0.01", "--alpha", "0.5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert len(doc["solutions"]) == 8
    branch = next(s for s in doc["solutions"] if s["branch_id"] == "(-,+,3/2)")
    assert branch["kappa2"] == 8
    assert branch["physical"] is True
    assert branch["residuals"]["inv_r"] == 6


def test_solve_csv_schema():
    code, out, _ = run(["solve", "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    header = rows[0]
    assert header[:11] == ["omega_alpha", "alpha", "branch_id", "b1", "b2", "b3", "b4",
                           "alpha11", "kappa2", "e_plus", "e_minus"]
    assert header[-2:] == ["physical", "reasons"]
    assert all(h.startswith("res_") for h in header[11:-2])
    assert len(rows) == 9
    assert all(r[7] == "" for r in rows[1:])


def test_table_three_row():
    code, out, _ = run(["table", "--which", "3"])
    assert code == 0
    rows = {r["omega_alpha"]: r for r in csv.DictReader(io.StringIO(out))}
    row = rows["0.005"]
    assert float(row["alpha11"]) == pytest.approx(2.6667, abs=1e-4)
    assert row["printed_alpha11"] == "2.6666"
    assert row["typo_flag"] == "false"


def test_table_flags():
    _, out, _ = run(["table", "--which", "1"])
    flags = {r["omega_alpha"] for r in csv.DictReader(io.StringIO(out)) if r["typo_flag"] == "true"}
    assert flags == {"0.007", "0.01"}


def test_verify_passes():
    code, out, _ = run(["verify", "--seed", "7", "--trials", "10"])
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"]
    for rep in doc["equivalence"]:
        assert rep["elimination_max_rel_dev"] < 1e-8
        assert rep["substitution_max_rel_dev"] < 1e-8


def test_algebra_check():
    code, out, _ = run(["algebra-check", "--r", "2.0"])
    assert code == 0
    doc = json.loads(out)
    assert doc["geometry_cross_check"]["consistent_index_order"] == ["ba"]


def test_invalid_params_exit_two():
    code, out, err = run(["solve", "--alpha", "1.5"])
    assert code == 2 and out == ""
    assert "ALPHA_OUT_OF_RANGE" in err


def test_no_physical_branch_exit_three():
    code, out, _ = run(["solve", "--state", "n1", "--regime", "arbitrary", "--q", "-0.5",
                        "--omega", "1", "--policy", "first-principles"])
    assert code == 3
    assert json.loads(out)["solutions"]


def test_verify_failure_exit_four(monkeypatch):
    monkeypatch.setattr(cli, "verify_report", lambda *a: {"pass": False})
    code, _, err = run(["verify"])
    assert code == 4 and "failed" in err


def test_sweep_csv():
    code, out, _ = run(["sweep", "--points", "4", "--omegas", "0,0.01"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    assert all(r["error"] == "" for r in rows)


def test_wavefunction_files(tmp_path):
    code, _, _ = run(["--out-dir", str(tmp_path), "wavefunction", "--points", "50", "--svg", "--state", "n1"])
    assert code == 0
    text = (tmp_path / "wavefunction.csv").read_bytes()
    assert b"\r" not in text
    values = [float(r["R_full"]) for r in csv.DictReader(io.StringIO(text.decode()))]
    assert max(abs(v) for v in values) == pytest.approx(1.0)
    svg = (tmp_path / "wavefunction.svg").read_text()
    assert svg.startswith("<svg") and "<polyline" in svg


def test_wavefunction_custom_range():
    code, out, _ = run(["wavefunction", "--points", "5", "--r-min", "0.5", "--r-max", "2.5", "--normalization", "raw"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["r"] for r in rows] == ["0.5", "1", "1.5", "2", "2.5"]


def test_bad_branch_label():
    with pytest.raises(SystemExit):
        run(["wavefunction", "--branch", "(+,+,1)"])


@pytest.mark.parametrize("argv", [["solve"], ["table", "--which", "2"], ["sweep", "--points", "3"], ["verify", "--seed", "3"]])
def test_byte_identical_reruns(argv):
    assert run(argv) == run(argv)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dkpstring.cli", "table", "--which", "2"],
                          capture_output=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith(b"table,omega_alpha")
