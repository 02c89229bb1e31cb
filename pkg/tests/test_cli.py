"""End-to-end command-line behavior: files, determinism, exit codes."""

import json

from click.testing import CliRunner

from cavity_rpm import validation
from cavity_rpm.cli import main
from cavity_rpm.validation import CheckResult


def invoke(*args, env=None):
    return CliRunner().invoke(main, [str(a) for a in args], env=env)


def test_spectrum_lines_frozen_and_deterministic(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        result = invoke("spectrum", "--model", "harmonic", "--N", 2,
                        "--J", 1, "--omega0", 0, "--out", out)
        assert result.exit_code == 0, result.output
    csv_a = (out_a / "spectrum_harmonic.csv").read_bytes()
    assert csv_a == (out_b / "spectrum_harmonic.csv").read_bytes()
    lines = csv_a.decode().splitlines()
    assert lines[0] == "energy,weight00,weightN0"
    assert lines[1] == "-2,0.25,0.25"
    assert lines[2] == "0,0.5,-0.5"
    assert lines[3] == "2,0.25,0.25"
    sidecar = json.loads((out_a / "spectrum_harmonic.json").read_text())
    assert sidecar["command"] == "spectrum"
    assert sidecar["config"]["model"] == "harmonic"
    assert "version" in sidecar


def test_spectrum_compare_reports_tiny_deviation(tmp_path):
    result = invoke("spectrum", "--compare", "--N", 8, "--g", 1.2, "--J", 0.8,
                    "--epsilon", 0.01, "--out", tmp_path)
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "spectrum_compare.json").read_text())
    assert report["compare"]["linf_rho00"] < 1e-9
    assert report["compare"]["linf_rhoN0"] < 1e-9
    header = (tmp_path / "spectrum_compare.csv").read_text().splitlines()[0]
    assert header == "energy,rho00_rpm,rhoN0_rpm,rho00_oracle,rhoN0_oracle"


def test_spectrum_rpm_requires_epsilon(tmp_path):
    result = invoke("spectrum", "--model", "anharmonic-rpm", "--N", 4, "--out", tmp_path)
    assert result.exit_code == 2
    assert "epsilon" in result.output


def test_dynamics_with_first_transfer(tmp_path):
    result = invoke("dynamics", "--model", "anharmonic-oracle", "--N", 6,
                    "--g", 1.2, "--J", 0.8, "--tmax", 10, "--dt", 0.01,
                    "--compare", "--first-transfer", "--out", tmp_path)
    assert result.exit_code == 0, result.output
    header = (tmp_path / "dynamics_anharmonic-oracle.csv").read_text().splitlines()[0]
    assert header.startswith("t,return_re,return_im,return_abs,transition_re")
    assert "harmonic_return_re" in header
    transfer = json.loads((tmp_path / "first_transfer.json").read_text())
    assert set(transfer["times"]) == {"anharmonic-oracle", "harmonic"}
    assert 0.0 < transfer["times"]["harmonic"] < 10.0


def test_dynamics_empty_window_writes_header_only(tmp_path):
    result = invoke("dynamics", "--model", "harmonic", "--N", 2, "--J", 0.8,
                    "--tmax", 0, "--out", tmp_path)
    assert result.exit_code == 0, result.output
    content = (tmp_path / "dynamics_harmonic.csv").read_text().splitlines()
    assert len(content) == 1
    assert content[0].startswith("t,return_re")


def test_dynamics_rejects_density_only_model(tmp_path):
    result = invoke("dynamics", "--model", "anharmonic-rpm", "--N", 4, "--out", tmp_path)
    assert result.exit_code == 2
    assert "line-resolved" in result.output


def test_noon_summary_and_histogram(tmp_path):
    result = invoke("noon", "--model", "anharmonic-oracle", "--N", 4, "--g", 1.2,
                    "--J", 0.8, "--bins", 2, "--tmax", 100, "--out", tmp_path)
    assert result.exit_code == 0, result.output
    rows = (tmp_path / "noon_anharmonic-oracle.csv").read_text().splitlines()
    assert rows[0] == "c0_center,cN_center,mass"
    assert len(rows) == 5
    masses = [float(r.split(",")[2]) for r in rows[1:]]
    assert abs(sum(masses) - 1.0) < 1e-12
    sidecar = json.loads((tmp_path / "noon_anharmonic-oracle.json").read_text())
    summary = sidecar["summary"]
    assert set(summary) >= {"max_score", "argmax_time", "fraction_above",
                            "threshold", "n_samples", "t_max", "dt"}
    assert 0.0 <= summary["max_score"] <= 1.0 + 1e-9
    assert sidecar["metadata"]["axes"] == "moduli"


def test_noon_sweep_writes_one_file_per_n(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"sweep_n": [2, 4], "tmax": 50.0, "bins": 5}))
    result = invoke("noon", "--model", "harmonic", "--J", 0.8, "--config", config,
                    "--out", tmp_path)
    assert result.exit_code == 0, result.output
    assert (tmp_path / "noon_harmonic_N2.csv").exists()
    assert (tmp_path / "noon_harmonic_N4.csv").exists()
    echo = json.loads((tmp_path / "noon_harmonic_N2.json").read_text())
    assert echo["config"]["N"] == 2


def test_flags_override_config_file(tmp_path):
    config = tmp_path / "base.json"
    config.write_text(json.dumps({"model": "harmonic", "N": 2, "J": 0.5, "omega0": 0.0}))
    result = invoke("spectrum", "--config", config, "--J", 1.0, "--out", tmp_path)
    assert result.exit_code == 0, result.output
    sidecar = json.loads((tmp_path / "spectrum_harmonic.json").read_text())
    assert sidecar["config"]["J"] == 1.0
    assert sidecar["config"]["N"] == 2


def test_malformed_config_reports_line(tmp_path):
    config = tmp_path / "broken.json"
    config.write_text('{\n  "model": "harmonic",\n  oops\n}\n')
    result = invoke("spectrum", "--config", config, "--out", tmp_path)
    assert result.exit_code == 2
    assert "line 3" in result.output


def test_unknown_config_key_rejected(tmp_path):
    config = tmp_path / "typo.json"
    config.write_text(json.dumps({"modle": "harmonic"}))
    result = invoke("spectrum", "--config", config, "--out", tmp_path)
    assert result.exit_code == 2
    assert "modle" in result.output


def test_unknown_model_rejected(tmp_path):
    result = invoke("spectrum", "--model", "bogus", "--out", tmp_path)
    assert result.exit_code == 2
    assert "model" in result.output


def test_near_pole_evaluation_exits_3(tmp_path):
    config = tmp_path / "pole.json"
    config.write_text(json.dumps({"grid": [2.0, 2.001], "points": 2}))
    result = invoke("spectrum", "--config", config, "--model", "anharmonic-rpm",
                    "--N", 2, "--g", 0, "--J", 1, "--omega0", 0,
                    "--epsilon", 1e-320, "--out", tmp_path)
    assert result.exit_code == 3
    assert "pole" in result.output


def test_validate_passes_by_default(tmp_path):
    result = invoke("validate", "--out", tmp_path)
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "validation_report.json").read_text())
    assert report["passed"] is True
    assert len(report["checks"]) == len(validation.CHECKS)


def test_validate_empty_selection_rejected(tmp_path):
    config = tmp_path / "empty.json"
    config.write_text(json.dumps({"checks": []}))
    result = invoke("validate", "--config", config, "--out", tmp_path)
    assert result.exit_code == 2


def test_validate_failure_exits_4(tmp_path, monkeypatch):
    monkeypatch.setitem(
        validation.CHECKS, "forced_failure",
        lambda: CheckResult("forced_failure", False, "forced for the exit-code test", {}),
    )
    config = tmp_path / "forced.json"
    config.write_text(json.dumps({"checks": ["forced_failure"]}))
    result = invoke("validate", "--config", config, "--out", tmp_path)
    assert result.exit_code == 4
    report = json.loads((tmp_path / "validation_report.json").read_text())
    assert report["passed"] is False


def test_thread_fanout_is_byte_identical(tmp_path):
    serial = tmp_path / "serial"
    threaded = tmp_path / "threaded"
    args = ("spectrum", "--model", "anharmonic-rpm", "--N", 8, "--g", 1.2,
            "--J", 0.8, "--epsilon", 0.01)
    result = invoke(*args, "--out", serial)
    assert result.exit_code == 0, result.output
    result = invoke(*args, "--out", threaded, env={"CAVITY_RPM_THREADS": "3"})
    assert result.exit_code == 0, result.output
    name = "spectrum_anharmonic-rpm.csv"
    assert (serial / name).read_bytes() == (threaded / name).read_bytes()


def test_bad_thread_count_rejected(tmp_path):
    result = invoke("spectrum", "--model", "anharmonic-rpm", "--N", 4, "--g", 1.2,
                    "--J", 0.8, "--epsilon", 0.01, "--out", tmp_path,
                    env={"CAVITY_RPM_THREADS": "zero"})
    assert result.exit_code == 2
