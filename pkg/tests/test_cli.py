"""Command-line interface."""
import json

import pandas as pd
import pytest
from click.testing import CliRunner

from src.cli import cli
from src.utils.reporting import CSV_COLUMNS


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ["--log-level", "CRITICAL", *args])


def test_registry(runner, tmp_path):
    out = tmp_path / "registry.json"
    result = invoke(runner, "registry", "--out", str(out))
    assert result.exit_code == 0
    assert "example-36" in result.output
    assert len(json.loads(out.read_text())) >= 36


def test_registry_by_family(runner):
    result = invoke(runner, "registry", "--family", "NIG")
    assert result.exit_code == 0
    assert "example-25" in result.output
    assert "example-1 " not in result.output


def test_price_from_config_file(runner, tmp_path):
    config = tmp_path / "experiment.json"
    config.write_text(json.dumps({"example": "1", "method": "TP", "options": {"level": 7}}))
    out = tmp_path / "reports.json"
    metrics = tmp_path / "metrics.prom"
    result = invoke(runner, "price", "--config", str(config), "--out", str(out), "--metrics-out", str(metrics))
    assert result.exit_code == 0, result.output
    reports = json.loads(out.read_text())
    assert len(reports) == 1
    assert reports[0]["name"] == "example-1"
    assert reports[0]["method"] == "TP"
    assert "pricing_experiments_total" in metrics.read_text()


def test_price_unknown_example(runner):
    result = invoke(runner, "price", "--example", "no-such-example", "--method", "TP")
    assert result.exit_code == 2


def test_price_needs_an_experiment(runner):
    result = invoke(runner, "price")
    assert result.exit_code != 0


def test_price_reports_failed_experiments(runner, tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({
        "example": "1", "method": "TP", "options": {"level": 3},
        "damping": {"mode": "fixed", "R": [-1.0, 2.0]},
    }))
    result = invoke(runner, "price", "--config", str(config))
    assert result.exit_code == 1


def test_sweep_writes_csv(runner, tmp_path):
    out = tmp_path / "sweep.csv"
    result = invoke(runner, "sweep", "--example", "1", "--method", "TP", "-b", "16", "-b", "64", "--out", str(out))
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns) == CSV_COLUMNS
    assert frame["N_eval"].tolist() == [16, 64]


def test_sweep_requires_budgets(runner):
    result = invoke(runner, "sweep", "--example", "1")
    assert result.exit_code == 2


def test_optimize_damping(runner):
    result = invoke(runner, "optimize-damping", "--example", "1")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["example"] == "example-1"
    assert payload["converged"]
    assert payload["R"] == pytest.approx([2.5, 2.5], abs=0.1)
    assert payload["tabulated"] == [2.5, 2.5]


def test_optimize_damping_unknown_example(runner):
    result = invoke(runner, "optimize-damping", "--example", "99")
    assert result.exit_code == 1
