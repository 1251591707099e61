"""Command-line front end: exit codes, report shape, determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest
from click.testing import CliRunner

from circuit_geometry.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _x_rotation(tmp_path, angle=0.3, name="target.json"):
    matrix = np.cos(angle) * np.eye(2) - 1j * np.sin(angle) * np.array([[0, 1], [1, 0]])
    return _write(tmp_path, name, {
        "n": 1, "re": matrix.real.tolist(), "im": matrix.imag.tolist(),
    })


def _identity(tmp_path, n=1, name="identity.json"):
    dim = 2**n
    return _write(tmp_path, name, {
        "n": n, "re": np.eye(dim).tolist(), "im": np.zeros((dim, dim)).tolist(),
    })


SCHEDULE = {"n": 1, "segments": [{"tau": 1.0, "y": {"X": 0.5}}]}

FAST = ["--segments", "2", "--restarts", "2"]


def _report(path):
    with open(path) as handle:
        return json.load(handle)


def test_decompose_happy(runner, tmp_path):
    matrix = _write(tmp_path, "x.json", {
        "n": 1, "re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]],
    })
    out = str(tmp_path / "report.json")
    result = runner.invoke(main, ["decompose", "--matrix", matrix, "--out", out])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["version"] == "1"
    assert set(report) == {"version", "config", "results", "bound_reports"}
    assert report["results"]["coefficients"] == {"X": 1.0}
    assert report["bound_reports"] == []


def test_decompose_rejects_non_hermitian(runner, tmp_path):
    matrix = _write(tmp_path, "bad.json", {
        "n": 1, "re": [[0.0, 1.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]],
    })
    result = runner.invoke(main, ["decompose", "--matrix", matrix,
                                  "--out", str(tmp_path / "r.json")])
    assert result.exit_code == 2
    assert "not Hermitian" in result.output


def test_missing_file_exits_2(runner, tmp_path):
    result = runner.invoke(main, ["decompose", "--matrix", str(tmp_path / "absent.json"),
                                  "--out", str(tmp_path / "r.json")])
    assert result.exit_code == 2


def test_malformed_json_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    result = runner.invoke(main, ["decompose", "--matrix", str(bad),
                                  "--out", str(tmp_path / "r.json")])
    assert result.exit_code == 2
    assert "invalid JSON" in result.output


def test_distance_brackets_rotation(runner, tmp_path):
    out = str(tmp_path / "d.json")
    result = runner.invoke(main, ["distance", "--unitary", _x_rotation(tmp_path),
                                  "--out", out, *FAST])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["results"]["lower"] == pytest.approx(0.3, abs=1e-9)
    assert report["results"]["upper"] <= 0.3 + 1e-6
    (bracket,) = report["bound_reports"]
    assert bracket["context"] == "distance-bracket"
    assert bracket["passed"]


def test_verify_identity_gives_zero_bracket(runner, tmp_path):
    out = str(tmp_path / "v.json")
    result = runner.invoke(main, ["verify", "--unitary", _identity(tmp_path),
                                  "--out", out, *FAST])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["results"]["lower"] == 0.0
    assert report["results"]["upper"] == 0.0
    assert report["results"]["segment_rhos"] == []


def test_verify_rotation_reports_segments(runner, tmp_path):
    out = str(tmp_path / "v.json")
    result = runner.invoke(main, ["verify", "--unitary", _x_rotation(tmp_path, 0.4),
                                  "--out", out, *FAST])
    assert result.exit_code == 0, result.output
    report = _report(out)
    contexts = [entry["context"] for entry in report["bound_reports"]]
    assert contexts[0] == "distance-bracket"
    assert any(c.startswith("segment-distortion-") for c in contexts)
    assert contexts[-1] == "decomposition-sandwich"
    assert all(entry["passed"] for entry in report["bound_reports"])
    assert len(report["results"]["segment_rhos"]) == len(contexts) - 2


def test_simulate_writes_gates(runner, tmp_path):
    schedule = _write(tmp_path, "s.json", SCHEDULE)
    out = str(tmp_path / "sim.json")
    gates_out = str(tmp_path / "gates.json")
    result = runner.invoke(main, ["simulate", "--schedule", schedule, "--delta", "0.25",
                                  "--out", out, "--gates-out", gates_out])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["results"]["gate_count"] == 16  # 4 slices x 4 substeps x 1 term
    gates = _report(gates_out)
    assert len(gates["gates"]) == 16
    assert gates["delta"] == 0.25


def test_simulate_rejects_bad_delta(runner, tmp_path):
    schedule = _write(tmp_path, "s.json", SCHEDULE)
    result = runner.invoke(main, ["simulate", "--schedule", schedule, "--delta", "banana",
                                  "--out", str(tmp_path / "r.json")])
    assert result.exit_code == 2
    assert "--delta" in result.output


def test_simulate_reports_are_byte_identical(runner, tmp_path):
    schedule = _write(tmp_path, "s.json", SCHEDULE)
    out = tmp_path / "sim.json"
    args = ["simulate", "--schedule", schedule, "--delta", "0.2", "--out", str(out)]
    assert runner.invoke(main, args).exit_code == 0
    first = out.read_bytes()
    assert runner.invoke(main, args).exit_code == 0
    assert out.read_bytes() == first


def test_distance_reports_are_byte_identical(runner, tmp_path):
    out = tmp_path / "d.json"
    args = ["distance", "--unitary", _x_rotation(tmp_path), "--out", str(out),
            "--seed", "5", *FAST]
    assert runner.invoke(main, args).exit_code == 0
    first = out.read_bytes()
    assert runner.invoke(main, args).exit_code == 0
    assert out.read_bytes() == first


def test_infeasible_target_exits_3(runner, tmp_path):
    # diagonal with eigenvalues pinned to the branch cut: the subgroup
    # start is rejected, and with no restarts nothing else is tried
    phases = np.array([np.pi - 1e-9, -(np.pi - 1e-9), 0.3, -0.3])
    matrix = np.diag(np.exp(1j * phases))
    target = _write(tmp_path, "cut.json", {
        "n": 2, "re": matrix.real.tolist(), "im": matrix.imag.tolist(),
    })
    result = runner.invoke(main, ["distance", "--unitary", target, "--restarts", "0",
                                  "--out", str(tmp_path / "r.json")])
    assert result.exit_code == 3


def test_scaling_happy(runner, tmp_path):
    schedule = _write(tmp_path, "s.json", SCHEDULE)
    out = str(tmp_path / "sc.json")
    result = runner.invoke(main, ["scaling", "--schedule", schedule, "--out", out])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["results"]["slope"] == pytest.approx(2.0, abs=1e-9)
    (slope_report,) = report["bound_reports"]
    assert slope_report["context"] == "scaling-slope"


def test_scaling_bound_failure_exits_1(runner, tmp_path):
    # coarse widths distort the substep count enough to drag the fitted
    # slope outside the acceptance band; the report is still written
    schedule = _write(tmp_path, "s.json", SCHEDULE)
    out = str(tmp_path / "sc.json")
    result = runner.invoke(main, ["scaling", "--schedule", schedule,
                                  "--deltas", "0.9,0.3,0.1", "--out", out])
    assert result.exit_code == 1
    report = _report(out)
    assert not report["bound_reports"][0]["passed"]


def test_scaling_rejects_thin_sweeps(runner, tmp_path):
    schedule = _write(tmp_path, "s.json", SCHEDULE)
    result = runner.invoke(main, ["scaling", "--schedule", schedule,
                                  "--deltas", "0.2,0.1", "--out", str(tmp_path / "r.json")])
    assert result.exit_code == 2


def test_distortion_stratified_extremes(runner, tmp_path):
    out = str(tmp_path / "dist.json")
    result = runner.invoke(main, ["distortion", "--n", "3", "--p", "4",
                                  "--samples", "3000", "--out", out])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["results"]["m_hat"] == 1.0
    assert report["results"]["M_hat"] == 4.0
    contexts = [entry["context"] for entry in report["bound_reports"]]
    assert contexts == ["distortion-min", "distortion-max"]


def test_distortion_without_penalized_block(runner, tmp_path):
    out = str(tmp_path / "dist.json")
    result = runner.invoke(main, ["distortion", "--n", "2", "--samples", "500", "--out", out])
    assert result.exit_code == 0, result.output
    report = _report(out)
    assert report["results"]["m_exact"] == 1.0
    assert report["results"]["M_exact"] == 1.0
    assert report["results"]["m_hat"] == 1.0 == report["results"]["M_hat"]


def test_default_out_honors_env_dir(runner, tmp_path):
    result = runner.invoke(
        main,
        ["distortion", "--n", "2", "--samples", "200"],
        env={"CGEO_OUT_DIR": str(tmp_path)},
    )
    assert result.exit_code == 0, result.output
    assert (tmp_path / "distortion_report.json").exists()


def test_csv_format(runner, tmp_path):
    out = tmp_path / "dist.csv"
    result = runner.invoke(main, ["distortion", "--n", "2", "--samples", "200",
                                  "--format", "csv", "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "context,lower,observed,upper,passed"
    assert lines[1].startswith("distortion-min,")
    assert lines[1].endswith(",true")


def test_console_script_help():
    proc = subprocess.run([sys.executable, "-m", "circuit_geometry", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    for command in ("decompose", "distance", "simulate", "verify", "distortion", "scaling"):
        assert command in proc.stdout
