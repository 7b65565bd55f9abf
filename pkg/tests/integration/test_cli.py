"""
End-to-end runs of the command-line entry point on small grids.
"""

import json
from pathlib import Path

import pytest
import yaml
from typer.testing import CliRunner

from app.commands.blowup import BLOWUP_COLUMNS
from app.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli

pytestmark = pytest.mark.integration

runner = CliRunner()

REPO_FIXTURES = Path(__file__).resolve().parents[2] / "fixtures" / "golden.yaml"
REPORT_KEYS = {"command", "config_echo", "metrics", "pass", "fixture_version"}

SMALL_CONFIG = """\
seed = 7

[grids]
v_eval = 3
patch = { n_r = 6, n_t1 = 4, n_t2 = 4 }
measure = { n_r = 8, n_t1 = 4, n_t2 = 4 }

[measure]
alphas = [1e-3]

[kernel]
alphas = [1e-3]
cross_alphas = [1e-2, 1e-3]

[log_holder]
n_pairs = 200
"""


@pytest.fixture
def small_config(tmp_path: Path) -> Path:
    path = tmp_path / "run.toml"
    path.write_text(SMALL_CONFIG)
    return path


def _invoke(command: str, config: Path | None, out: Path, fixtures: Path, *extra: str):
    args = [command, "--out", str(out), "--fixtures", str(fixtures)]
    if config is not None:
        args += ["--config", str(config)]
    return runner.invoke(cli, [*args, *extra])


def _report(out: Path, command: str) -> dict:
    return json.loads((out / f"{command}.json").read_text())


def test_verify_measure_writes_a_passing_report(small_config, tmp_path):
    out = tmp_path / "out"
    result = _invoke("verify-measure", small_config, out, tmp_path / "golden.yaml")
    assert result.exit_code == EXIT_OK, result.output

    report = _report(out, "verify-measure")
    assert set(report) == REPORT_KEYS
    assert report["pass"] is True
    assert report["fixture_version"] == 0
    assert report["config_echo"]["measure"]["alphas"] == [1e-3]
    assert report["metrics"]["failures"] == []
    assert report["metrics"]["rows"][0]["refinement_gap_w"] < 1e-10


def test_verify_kernel_on_patch_centers(small_config, tmp_path):
    out = tmp_path / "out"
    result = _invoke("verify-kernel", small_config, out, tmp_path / "golden.yaml", "--n-samples", "1")
    assert result.exit_code == EXIT_OK, result.output

    metrics = _report(out, "verify-kernel")["metrics"]
    assert metrics["same_scale"][0]["sample_count"] == 1
    assert metrics["cross_failures"] == []
    assert metrics["images"][0]["min_neg_re_H"] > 0


def test_calibrate_stores_golden_constants(small_config, tmp_path):
    fixtures = tmp_path / "golden.yaml"
    result = _invoke("verify-kernel", small_config, tmp_path / "out", fixtures, "--n-samples", "1", "--calibrate")
    assert result.exit_code == EXIT_OK, result.output

    stored = yaml.safe_load(fixtures.read_text())
    assert stored["fixture_version"] == 1
    assert stored["entries"]["m1=2,m2=3"]["kernel_min_neg_re_scaled"] > 0
    assert stored["entries"]["m1=2,m2=3"]["image_c_H"] > 0


def test_blowup_calibration_stores_the_m_over_n_band(small_config, tmp_path):
    fixtures = tmp_path / "golden.yaml"
    out = tmp_path / "out"
    result = _invoke("blowup", small_config, out, fixtures, "--n-max", "3", "--calibrate")
    assert result.exit_code == EXIT_OK, result.output
    assert _report(out, "blowup")["metrics"]["golden_m_over_n"] is False

    entry = yaml.safe_load(fixtures.read_text())["entries"]["m1=2,m2=3"]
    assert 0 < entry["blowup_m_over_n_min"] < entry["blowup_m_over_n_max"]

    result = _invoke("blowup", small_config, tmp_path / "rerun", fixtures, "--n-max", "3")
    assert result.exit_code in (EXIT_OK, EXIT_FAILED), result.output
    assert _report(tmp_path / "rerun", "blowup")["metrics"]["golden_m_over_n"] is True


def test_check_log_holder(small_config, tmp_path):
    out = tmp_path / "out"
    result = _invoke("check-log-holder", small_config, out, tmp_path / "golden.yaml")
    assert result.exit_code == EXIT_OK, result.output

    metrics = _report(out, "check-log-holder")["metrics"]
    assert metrics["growth_factor"] >= 2.0
    assert metrics["growth_by_alpha"]["1e-06"] == pytest.approx(1.937, abs=0.005)
    assert metrics["quasimetric"]["max_formula_gap"] < 1e-12
    assert metrics["quasimetric"]["sample_count"] == 200


def test_invalid_configuration_is_a_usage_error(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("[ellipsoid]\nm1 = 0.5\n")
    result = _invoke("verify-measure", path, tmp_path / "out", tmp_path / "golden.yaml")
    assert result.exit_code == EXIT_USAGE
    assert not (tmp_path / "out" / "verify-measure.json").exists()


def test_single_truncation_is_a_usage_error(small_config, tmp_path):
    result = _invoke("blowup", small_config, tmp_path / "out", tmp_path / "golden.yaml", "--n-max", "1")
    assert result.exit_code == EXIT_USAGE


def test_short_blowup_writes_tables(small_config, tmp_path):
    out = tmp_path / "out"
    result = _invoke(
        "blowup", small_config, out, tmp_path / "golden.yaml", "--n-max", "3", "--positive-control"
    )
    # ln norm(h) has not settled to 1e-6 this early, so only the outputs are checked
    assert result.exit_code in (EXIT_OK, EXIT_FAILED), result.output

    lines = (out / "blowup.csv").read_text().splitlines()
    assert lines[0].startswith("# generated")
    assert lines[1] == ",".join(BLOWUP_COLUMNS)
    assert len(lines) == 2 + 3
    assert (out / "positive_control.csv").exists()

    report = _report(out, "blowup")
    assert [row["N"] for row in report["metrics"]["rows"]] == [1, 2, 3]
    assert all(row["cross_ok"] for row in report["metrics"]["rows"])
    assert report["metrics"]["control_spread"] <= 4.0


@pytest.mark.slow
def test_default_blowup_passes_against_repo_fixtures(tmp_path):
    out = tmp_path / "out"
    result = _invoke("blowup", None, out, REPO_FIXTURES)
    assert result.exit_code == EXIT_OK, result.output
    assert _report(out, "blowup")["fixture_version"] >= 1


def test_verify_reproducing_on_the_sphere(tmp_path):
    path = tmp_path / "sphere.toml"
    path.write_text(
        "[grids]\n"
        'reproducing = { n_r = 8, n_t1 = 16, n_t2 = 16, rule = "graded-gauss-legendre" }\n'
        "[reproducing]\n"
        "ellipsoids = [[1.0, 1.0]]\n"
        "points = [[0.0, 0.0, 0.0, 0.0]]\n"
    )
    out = tmp_path / "out"
    result = _invoke("verify-reproducing", path, out, tmp_path / "golden.yaml")
    assert result.exit_code == EXIT_OK, result.output

    metrics = _report(out, "verify-reproducing")["metrics"]
    assert len(metrics["rows"]) == 5
    assert metrics["max_error"] < 1e-6
