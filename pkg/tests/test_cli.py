import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from acdirac import csvout
from acdirac.cli import main
from acdirac.figures import FIGURE_IDS

pytestmark = pytest.mark.filterwarnings("ignore::acdirac.core.NonHalfIntegerWarning")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def read_rows(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(body))


def test_spectrum_reference_rows():
    code, out, _ = run("spectrum")
    assert code == 0
    rows = read_rows(out)
    assert [r["n"] for r in rows] == ["0", "1", "2"]
    for row, e2 in zip(rows, (11 / 9, 31 / 25, 61 / 49)):
        assert float(row["E"]) == pytest.approx(math.sqrt(e2), rel=1e-14)
        assert row["admissible"] == "true"
    assert out.startswith("# acdirac spectrum\n")
    assert "\r" not in out


def test_spectrum_both_branches_and_fractions():
    code, out, _ = run("spectrum", "--ml", "1/2", "-3/2", "--branch", "both", "--n-max", "1")
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 8
    plus = [float(r["E"]) for r in rows if r["branch"] == "+"]
    minus = [float(r["E"]) for r in rows if r["branch"] == "-"]
    assert plus == [-m for m in minus]


def test_spectrum_without_interaction_is_rest_mass():
    code, out, _ = run("spectrum", "--lambda2", "0")
    assert code == 0
    for row in read_rows(out):
        assert float(row["E"]) == 1.0
        assert row["admissible"] == "false"


def test_alpha_out_of_range_is_config_error():
    code, out, err = run("spectrum", "--alpha", "1.5")
    assert code == 2
    assert out == ""
    assert "alpha out of range (0,1]" in err


def test_unknown_subcommand_exits_2():
    assert run("nonsense")[0] == 2


def test_strict_ml(tmp_path):
    assert run("spectrum", "--ml", "1")[0] == 0
    code, _, err = run("--strict-ml", "spectrum", "--ml", "1")
    assert code == 2 and "error:" in err
    assert run("spectrum", "--ml", "1", "--strict-ml")[0] == 2
    assert run("spectrum", "--ml", "3/2", "--strict-ml")[0] == 0


def test_verify_exit_codes(tmp_path):
    code, out, _ = run("verify", "--out", str(tmp_path))
    assert code == 0
    assert out.count("PASS") >= 3
    rows = read_rows((tmp_path / "verify.csv").read_text())
    assert [r["status"] for r in rows] == ["PASS"] * 3
    code, out, _ = run("verify", "--M", "0.2", "--mu-tilde", "2", "--lambda1", "-0.01", "--lambda2", "5",
                       "--N1", "-3", "--alpha", "0.2", "--ml", "2")
    assert code == 0 and "SKIPPED" in out
    code, _, _ = run("verify", "--num-points", "1000", "--tolerance", "1e-12")
    assert code == 1


def test_verify_bad_oracle_config():
    code, _, err = run("verify", "--num-points", "10")
    assert code == 2 and "error:" in err


def test_wavefunction_output(tmp_path):
    code, _, _ = run("wavefunction", "--n", "1", "--out", str(tmp_path), "--normalize")
    assert code == 0
    rows = read_rows((tmp_path / "wavefunction.csv").read_text())
    assert len(rows) == 601
    assert float(rows[0]["psi_upper"]) == 0.0
    code, _, err = run("wavefunction", "--lambda2", "0")
    assert code == 2 and "error:" in err


def test_sweep_errors():
    code, _, err = run("sweep", "--vary", "alpha", "--vary", "N1", "--values", "0.5", "1")
    assert code == 2 and "exactly one" in err
    code, _, err = run("sweep", "--vary", "N1", "--range", "0", "1", "0")
    assert code == 2
    code, _, err = run("sweep", "--vary", "N1")
    assert code == 2 and "empty" in err
    code, _, err = run("sweep", "--vary", "N1", "--values", "1", "0.5")
    assert code == 2 and "increasing" in err


def test_sweep_N1_flips_admissibility():
    code, out, _ = run("sweep", "--vary", "N1", "--values", "-1", "1", "--n-max", "0")
    assert code == 0
    flags = [r["admissible"] for r in read_rows(out)]
    assert flags == ["false", "true"]


def test_sweep_flux_period():
    period = 2 * math.pi
    code, out, _ = run("sweep", "--vary", "Phi_AC", "--values", "0.3", str(0.3 + period), "--n-max", "2",
                       "--alpha", "0.7", "--mu-tilde", "1.3", "--lambda2", "2", "--ml", "1/2")
    assert code == 0
    code2, out2, _ = run("sweep", "--vary", "Phi_AC", "--values", "0.3", "--n-max", "2",
                         "--alpha", "0.7", "--mu-tilde", "1.3", "--lambda2", "2", "--ml", "3/2")
    rows = read_rows(out)
    shifted = [float(r["E"]) for r in rows[3:]]
    unshifted_next_ml = [float(r["E"]) for r in read_rows(out2)]
    assert shifted == pytest.approx(unshifted_next_ml, rel=1e-12)


def test_json_config_and_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"alpha": 0.8, "N1": 1.5, "n_max": 1, "m_l": [0.5], "oracle": {"num_points": 5000}}))
    code, out, _ = run("--config", str(cfg), "spectrum")
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 2
    assert "param alpha = 0.8" in out
    code, out, _ = run("spectrum", "--config", str(cfg), "--alpha", "0.5")
    assert "param alpha = 0.5" in out and "param N1 = 1.5" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"alhpa": 0.5}))
    code, _, err = run("--config", str(bad), "spectrum")
    assert code == 2 and "alhpa" in err
    code, _, _ = run("--config", str(tmp_path / "missing.json"), "spectrum")
    assert code == 2


def test_atomic_write_leaves_nothing_on_failure(tmp_path, monkeypatch):
    real = os.fdopen
    calls = []

    def flaky(fd, *a, **k):
        calls.append(fd)
        if len(calls) == 2:
            os.close(fd)
            raise OSError("disk full")
        return real(fd, *a, **k)

    monkeypatch.setattr(csvout.os, "fdopen", flaky)
    with pytest.raises(OSError):
        csvout.write_files_atomic({str(tmp_path / "a.csv"): "a\n", str(tmp_path / "b.csv"): "b\n"})
    assert list(tmp_path.iterdir()) == []


def test_figure_outputs_deterministic(tmp_path):
    for fid in FIGURE_IDS:
        a, b = tmp_path / "a", tmp_path / "b"
        assert run("figure", fid, "--out", str(a), "--plot-script")[0] == 0
        assert run("figure", fid, "--out", str(b), "--plot-script")[0] == 0
        assert (a / f"{fid}.csv").read_bytes() == (b / f"{fid}.csv").read_bytes()
        script = (a / f"{fid}.gp").read_text()
        assert f"'{fid}.csv'" in script and script.startswith("# gnuplot")


def test_figure_fig1_regular_at_origin(tmp_path):
    run("figure", "fig1", "--out", str(tmp_path))
    text = (tmp_path / "fig1.csv").read_text()
    assert "(implementation-chosen)" in text and "(caption)" in text
    rows = read_rows(text)
    assert {r["N1"] for r in rows} == {"0.5", "1", "1.5", "2"}
    for row in rows:
        if float(row["r"]) == 0.0:
            assert float(row["psi_upper"]) == 0.0


def test_figure_fig2_left_caption_level(tmp_path):
    run("figure", "fig2-left", "--out", str(tmp_path))
    rows = read_rows((tmp_path / "fig2-left.csv").read_text())
    row = next(r for r in rows if r["n"] == "1" and float(r["alpha"]) == 0.2)
    assert float(row["E"]) == pytest.approx(2.044, abs=5e-4)


def test_figure_fig3_right_increasing_in_n(tmp_path):
    run("figure", "fig3-right", "--out", str(tmp_path))
    rows = read_rows((tmp_path / "fig3-right.csv").read_text())
    by_N1 = {}
    for r in rows:
        by_N1.setdefault(r["N1"], []).append((int(r["n"]), float(r["E"])))
    for series in by_N1.values():
        energies = [e for _, e in sorted(series)]
        assert all(b > a for a, b in zip(energies, energies[1:]))


def test_figure_override_is_labeled(tmp_path):
    run("figure", "fig3-right", "--mu-tilde", "3", "--out", str(tmp_path))
    assert "param mu_tilde = 3 (override)" in (tmp_path / "fig3-right.csv").read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "acdirac", "spectrum", "--n-max", "0"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert len(read_rows(proc.stdout)) == 1
    proc = subprocess.run([sys.executable, "-m", "acdirac", "spectrum", "--alpha", "0"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 2 and "error:" in proc.stderr


def test_non_half_integer_warning_goes_to_stderr():
    code, _, err = run("spectrum", "--ml", "1", "--n-max", "3")
    assert code == 0
    assert err.count("warning:") == 1 and "half-odd" in err
