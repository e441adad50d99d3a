"""Test cli module"""

import json

import pandas as pd
import pytest
from click.testing import CliRunner

from hypercauchy.cli import main
from hypercauchy.utilities import FIELD_COLUMNS, THREADS_VARIABLE
from hypercauchy.verify import CheckReport


@pytest.fixture(name="runner")
def runner():
    """Return a click test runner"""
    return CliRunner()


@pytest.fixture(name="bad_scenario_file")
def bad_scenario_file(tmp_path, scenario_dict):
    """Return a scenario file that fails the series validity gate"""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**scenario_dict, "alpha": {"re": 5.0, "im": 0.0}}), encoding="utf-8")
    return str(path)


def test_kernel_eval(runner, scenario_file):
    """Test theta and the kernel at (1, 0) for alpha = 0"""
    result = runner.invoke(main, ["kernel-eval", scenario_file, "--point", "1", "0"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["branch"] is None
    assert payload["theta"] == [0.0, 0.0]
    assert payload["kernel"][1][0] == pytest.approx(-1 / (2 * 3.141592653589793))
    assert "split" not in payload


def test_kernel_eval_at_origin(runner, scenario_file):
    """Test that a domain error exits with 1"""
    result = runner.invoke(main, ["kernel-eval", scenario_file, "--point", "0", "0"])
    assert result.exit_code == 1
    assert "origin" in result.output


def test_field(runner, scenario_file, tmp_path):
    """Test the grid CSV, including a masked boundary row"""
    output_path = str(tmp_path / "field.csv")
    result = runner.invoke(
        main,
        ["field", scenario_file, "--out", output_path, "--window", "-1", "1", "-1", "1", "--resolution", "3"],
    )
    assert result.exit_code == 0
    frame = pd.read_csv(output_path)
    assert list(frame.columns) == FIELD_COLUMNS
    assert len(frame) == 9
    center = frame[(frame.x == 0) & (frame.y == 0)].iloc[0]
    assert center.q0_re == pytest.approx(1.0, abs=1e-10)
    on_curve = frame[(frame.x == 1) & (frame.y == 0)].iloc[0]
    assert on_curve["mask"] == 1
    assert pd.isna(on_curve.q0_re)
    corner = frame[(frame.x == 1) & (frame.y == 1)].iloc[0]
    assert corner.q0_re == pytest.approx(0.0, abs=1e-10)


def test_configuration_errors_exit_with_2(runner, bad_scenario_file, tmp_path):
    """Test exit code 2 for invalid and missing scenario files"""
    output_path = str(tmp_path / "out.csv")
    result = runner.invoke(main, ["field", bad_scenario_file, "--out", output_path])
    assert result.exit_code == 2
    assert "exceeds" in result.output
    result = runner.invoke(main, ["jump", str(tmp_path / "missing.json"), "--out", output_path])
    assert result.exit_code == 2
    result = runner.invoke(main, ["certify", bad_scenario_file, "--out", output_path])
    assert result.exit_code == 2


def test_field_density_error_exits_with_2(runner, scenario_dict, tmp_path):
    """Test that a density failing on the nodes gives a one-line error, not a traceback"""
    path = tmp_path / "singular.json"
    path.write_text(json.dumps({**scenario_dict, "density": {"expression": "1/(x-x)"}}), encoding="utf-8")
    result = runner.invoke(main, ["field", str(path), "--out", str(tmp_path / "f.csv"), "--resolution", "3"])
    assert result.exit_code == 2
    assert "division by zero" in result.output
    assert "Traceback" not in result.output
    assert isinstance(result.exception, SystemExit)


def test_jump(runner, scenario_file, tmp_path):
    """Test the jump report for f = 1 at alpha = 0"""
    output_path = str(tmp_path / "jump.json")
    result = runner.invoke(main, ["jump", scenario_file, "--out", output_path, "--samples", "2"])
    assert result.exit_code == 0
    with open(output_path, "r", encoding="utf-8") as report:
        payload = json.load(report)
    assert payload["passed"] is True
    assert len(payload["reports"]) == 2
    assert payload["digest"]


def test_jump_failure_exits_with_1(runner, scenario_file, tmp_path, mocker):
    """Test exit code 1 when a residual exceeds the tolerance"""
    mocker.patch(
        "hypercauchy.cli.cmd_jump",
        return_value=({"max_scaled_residual": 1.0, "tolerance": 0.01}, False),
    )
    result = runner.invoke(main, ["jump", scenario_file, "--out", str(tmp_path / "jump.json")])
    assert result.exit_code == 1


def test_certify_single_claim(runner, scenario_file, tmp_path):
    """Test that a claim filter yields exactly one report"""
    output_path = str(tmp_path / "certify.json")
    summary_path = str(tmp_path / "summary.md")
    result = runner.invoke(
        main, ["certify", scenario_file, "--out", output_path, "--summary", summary_path, "--claim", "lemma1"]
    )
    assert result.exit_code == 0
    with open(output_path, "r", encoding="utf-8") as report:
        payload = json.load(report)
    assert [r["name"] for r in payload["reports"]] == ["lemma1"]
    assert payload["passed"] is True
    with open(summary_path, "r", encoding="utf-8") as summary:
        assert "1 of 1 checks passed." in summary.read()


def test_certify_failure_exits_with_1(runner, scenario_file, tmp_path, mocker):
    """Test exit code 1 when a claim fails"""
    failed = CheckReport("lemma2", "abc", [1], [0.5], 0.1, False)
    mocker.patch("hypercauchy.cli.cmd_certify", return_value=([failed], False))
    result = runner.invoke(main, ["certify", scenario_file, "--out", str(tmp_path / "certify.json")])
    assert result.exit_code == 1
    assert "lemma2" in result.output


def test_certify_rejects_unknown_claim(runner, scenario_file, tmp_path):
    """Test click's choice validation of --claim"""
    result = runner.invoke(main, ["certify", scenario_file, "--out", str(tmp_path / "c.json"), "--claim", "lemma9"])
    assert result.exit_code == 2


def test_settings_file(runner, scenario_file, tmp_path, monkeypatch):
    """Test that --config loads settings before the command runs"""
    monkeypatch.setenv(THREADS_VARIABLE, "1")
    config_file = tmp_path / "settings.json"
    config_file.write_text(json.dumps({THREADS_VARIABLE: 2}), encoding="utf-8")
    result = runner.invoke(main, ["--config", str(config_file), "kernel-eval", scenario_file, "--point", "0.5", "0.5"])
    assert result.exit_code == 0


def test_version(runner):
    """Test the version option"""
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "hypercauchy" in result.output


def test_certify_is_reproducible(runner, scenario_file, tmp_path):
    """Test that two runs on the same scenario write byte-identical reports"""
    outputs = []
    for run in ("first", "second"):
        output_path = tmp_path / f"{run}.json"
        summary_path = tmp_path / f"{run}.md"
        args = ["certify", scenario_file, "--out", str(output_path), "--summary", str(summary_path)]
        for claim in ("lemma1", "lemma3", "theorem_jump", "hyperholomorphy"):
            args += ["--claim", claim]
        result = runner.invoke(main, args)
        assert result.exit_code in (0, 1)
        assert result.exception is None or isinstance(result.exception, SystemExit)
        outputs.append((output_path.read_bytes(), summary_path.read_bytes()))
    assert outputs[0] == outputs[1]
