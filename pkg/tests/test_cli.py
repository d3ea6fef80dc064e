import json
import subprocess
import sys

import numpy as np
import pytest

from cbiwave import algebra
from cbiwave.cli import main
from cbiwave.config import read_csv, write_csv
from cbiwave.verify import ScalarGrid


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def write_config(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


QUAD = {
    "c": 5,
    "grid": {"x0": -1, "x1": 1, "nx": 65, "y0": -1, "y1": 1, "ny": 65},
    "solution": {"type": "hyperbolic", "g1": {"kind": "polynomial", "coeffs": [0, 0, 1]}},
}


# -- info -----------------------------------------------------------------


def test_info_hyperbolic(capsys):
    code, out, _ = run(capsys, "info", "--c", 5)
    assert code == 0
    assert "hyperbolic" in out and "m: 2.8284271" in out
    for root in ("0.3178372", "-0.3178372", "3.1462643", "-3.1462643"):
        assert root in out


def test_info_elliptic(capsys):
    code, out, _ = run(capsys, "info", "--c", 0.5)
    assert code == 0
    assert "elliptic" in out and "mu: 1.0000000000" in out
    assert "trace-form det: 3.0000000000" in out


@pytest.mark.parametrize("c", ["1", "0", "-2", "nan", "inf"])
def test_info_invalid(capsys, c):
    code, _, err = run(capsys, "info", "--c", c)
    assert code == 2
    if c == "1":
        assert "degenerate parameter" in err


def test_usage_error_is_exit_2(capsys):
    assert run(capsys, "info")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


# -- synth ----------------------------------------------------------------


def test_synth_quadratic(tmp_path, capsys):
    out_csv = tmp_path / "u.csv"
    code, out, _ = run(capsys, "synth", "--config", write_config(tmp_path, QUAD), "--output", out_csv)
    assert code == 0 and "65x65" in out
    raw = out_csv.read_bytes()
    assert b"\r" not in raw
    assert len(raw.decode().splitlines()) == 4226
    g = read_csv(out_csv)
    X, Y = g.mesh()
    at = (np.abs(X - 1.0) < 1e-12) & (np.abs(Y) < 1e-12)
    assert g.values[at][0] == pytest.approx(1.0, abs=1e-14)


def test_synth_zero_spec(tmp_path, capsys):
    doc = dict(QUAD, solution={"type": "hyperbolic"})
    out_csv = tmp_path / "z.csv"
    assert run(capsys, "synth", "--config", write_config(tmp_path, doc), "--output", out_csv)[0] == 0
    assert np.all(read_csv(out_csv).values == 0.0)


def test_synth_missing_grid(tmp_path, capsys):
    doc = {k: v for k, v in QUAD.items() if k != "grid"}
    code, _, err = run(capsys, "synth", "--config", write_config(tmp_path, doc), "--output", tmp_path / "x.csv")
    assert code == 2
    assert "grid: missing" in err


def test_synth_unwritable_output(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "u.csv"
    code, _, err = run(capsys, "synth", "--config", write_config(tmp_path, QUAD), "--output", target)
    assert code == 1 and "cannot write" in err


# -- verify ---------------------------------------------------------------


def test_verify_synth_output_passes(tmp_path, capsys):
    out_csv = tmp_path / "u.csv"
    run(capsys, "synth", "--config", write_config(tmp_path, QUAD), "--output", out_csv)
    code, out, _ = run(capsys, "verify", out_csv, "--c", 5)
    assert code == 0 and out.strip().endswith("PASS")
    assert "factorization residual" in out


def test_verify_x4_fails_with_24(tmp_path, capsys):
    g = ScalarGrid.sample_h(lambda x, y: x**4, 0.05)
    path = tmp_path / "x4.csv"
    write_csv(g, path)
    code, out, _ = run(capsys, "verify", path, "--c", 5)
    assert code == 1 and out.strip().endswith("FAIL")
    raw = float(next(ln for ln in out.splitlines() if ln.startswith("biwave residual")).split(":")[1])
    assert abs(raw - 24.0) <= 1e-3


def test_verify_small_grid(tmp_path, capsys):
    path = tmp_path / "small.csv"
    write_csv(ScalarGrid.sample(lambda x, y: x, 0, 1, 4, 0, 1, 4), path)
    code, _, err = run(capsys, "verify", path, "--c", 5)
    assert code == 2 and "grid too small" in err


def test_verify_csv_needs_c(tmp_path, capsys):
    path = tmp_path / "u.csv"
    write_csv(ScalarGrid.sample_h(lambda x, y: x, 0.1), path)
    code, _, err = run(capsys, "verify", path)
    assert code == 2 and "--c" in err
    assert run(capsys, "verify", tmp_path / "missing.csv", "--c", 5)[0] == 2
    assert run(capsys, "verify")[0] == 2


def test_verify_with_refinement_reports_orders(config_dir, capsys):
    code, out, _ = run(capsys, "verify", "--config", config_dir / "hyperbolic_transcendental.json")
    assert code == 0
    line = next(ln for ln in out.splitlines() if ln.startswith("refinement orders"))
    assert "within" in line


def test_verify_tolerance_override(config_dir, capsys):
    code, out, _ = run(capsys, "verify", "--config", config_dir / "hyperbolic_transcendental.json", "--tolerance", 1e-12)
    assert code == 1 and "FAIL" in out


def test_bundled_roundtrip(tmp_path, config_dir, capsys):
    files = sorted(config_dir.glob("*.json"))
    assert files
    for cfg_path in files:
        cfg = json.loads(cfg_path.read_text())
        out_csv = tmp_path / (cfg_path.stem + ".csv")
        assert run(capsys, "synth", "--config", cfg_path, "--output", out_csv)[0] == 0, cfg_path.name
        tol = cfg.get("verify", {}).get("tolerance", 1e-6)
        code, out, _ = run(capsys, "verify", out_csv, "--c", cfg["c"], "--tolerance", tol)
        assert code == 0, f"{cfg_path.name}\n{out}"
        assert run(capsys, "verify", "--config", cfg_path)[0] == 0, cfg_path.name


# -- selftest -------------------------------------------------------------


def test_selftest_passes_and_is_deterministic(capsys):
    code, first, _ = run(capsys, "selftest")
    assert code == 0
    assert first.strip().splitlines()[-1] == "selftest: PASS (seed 42)"
    assert len(first.strip().splitlines()) == 13
    assert run(capsys, "selftest")[1] == first


def test_selftest_other_seed(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", 7)
    assert code == 0 and "(seed 7)" in out


def test_selftest_fault_injection(capsys):
    code, out, _ = run(capsys, "selftest", "--inject-fault", "cayley")
    assert code == 1
    lines = dict(ln.split(None, 2)[:2] for ln in out.strip().splitlines()[:-1])
    assert lines["algebra-laws"] == "FAIL"
    assert out.strip().endswith("selftest: FAIL (seed 42)")
    # the fault is scoped to the command
    assert algebra._cayley_fault == 0.0
    assert run(capsys, "selftest")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cbiwave", "info", "--c", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "hyperbolic" in proc.stdout
