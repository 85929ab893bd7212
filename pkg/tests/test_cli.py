"""Command line tests"""
import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from bench import PRESETS, Preset, Scenario
from cli import cli
from core import NumericalError
from services.dataset_io import read_dataset_csv
from solvers import CompositeQuantileEstimator


@pytest.fixture
def runner():
    return CliRunner()


def write_csv(path, n=40, p=5, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    y = 2.0 * X[:, 0] - X[:, 1] + rng.standard_normal(n)
    frame = pd.DataFrame(X, columns=[f"x{j + 1}" for j in range(p)])
    frame.insert(0, "y", y)
    frame.to_csv(path, index=False)
    return path


@pytest.fixture
def data_csv(tmp_path):
    return write_csv(tmp_path / "data.csv")


def invoke(runner, *args):
    return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)


def test_fit_output_matches_library_fit_exactly(runner, data_csv, tmp_path):
    out = tmp_path / "fit.json"
    result = invoke(runner, "fit", "--input", data_csv, "--response", "y", "--penalty", "scad", "--lambda", 0.05, "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())

    data = read_dataset_csv(data_csv, "y")
    library = CompositeQuantileEstimator(penalty="scad").fit(data, 0.05).to_dict()
    assert document["alpha"] == library["alpha"]
    assert document["beta"] == library["beta"]
    assert document["h"] == library["h"]
    assert document["iterations"] == library["iterations"]


def test_version(runner):
    result = invoke(runner, "--version")
    assert result.exit_code == 0
    assert "1.0.0" in result.output


def test_fit_with_fixed_lambda_writes_json(runner, data_csv, tmp_path):
    out = tmp_path / "fit.json"
    result = invoke(runner, "fit", "--input", data_csv, "--response", "y", "--lambda", 0.05, "--q", 5, "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert len(document["alpha"]) == 5
    assert len(document["beta"]) == 5
    assert document["lambda"] == 0.05
    assert document["method"] == "scqr"
    assert 0 in document["support"]


def test_huge_lambda_and_automatic_bandwidth(runner, tmp_path):
    data_csv = write_csv(tmp_path / "wide.csv", n=100, p=600)
    out = tmp_path / "fit.json"
    result = invoke(runner, "fit", "--input", data_csv, "--response", "y", "--lambda", 1e9, "--h", "auto", "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["beta"] == [0.0] * 600
    assert document["support"] == []
    assert document["h"] == pytest.approx(0.25146, abs=1e-5)


def test_fit_csv_output_names_terms(runner, data_csv, tmp_path):
    out = tmp_path / "fit.csv"
    result = invoke(
        runner, "fit", "--input", data_csv, "--response", "y", "--lambda", 0.05,
        "--q", 3, "--penalty", "scad", "--format", "csv", "--output", out,
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame["term"]) == ["intercept_0.25", "intercept_0.5", "intercept_0.75", "x1", "x2", "x3", "x4", "x5"]


def test_fit_with_tuning_and_admm(runner, data_csv, tmp_path):
    out = tmp_path / "fit.json"
    result = invoke(
        runner, "fit", "--input", data_csv, "--response", "y", "--tune", "pivotal",
        "--method", "cqr-admm", "--q", 3, "--output", out,
    )
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())["method"] == "cqr-admm"


def test_missing_response_column_is_a_data_error(runner, data_csv):
    result = invoke(runner, "fit", "--input", data_csv, "--response", "target", "--lambda", 0.1)
    assert result.exit_code == 3
    assert "target" in result.output


def test_missing_file_is_a_usage_error(runner, tmp_path):
    result = invoke(runner, "fit", "--input", tmp_path / "absent.csv", "--response", "y", "--lambda", 0.1)
    assert result.exit_code == 2


def test_non_numeric_cell_is_reported_with_its_position(runner, data_csv):
    frame = pd.read_csv(data_csv)
    frame["x2"] = frame["x2"].astype(object)
    frame.loc[2, "x2"] = "abc"
    frame.to_csv(data_csv, index=False)
    result = invoke(runner, "fit", "--input", data_csv, "--response", "y", "--lambda", 0.1)
    assert result.exit_code == 3
    assert "row 3" in result.output
    assert "x2" in result.output


def test_numerical_failure_has_its_own_exit_code(runner, data_csv, monkeypatch):
    def diverge(self, data, lam):
        raise NumericalError("loss became non-finite at iteration 4")

    monkeypatch.setattr(CompositeQuantileEstimator, "fit", diverge)
    result = invoke(runner, "fit", "--input", data_csv, "--response", "y", "--lambda", 0.1)
    assert result.exit_code == 4
    assert "non-finite" in result.output


@pytest.mark.parametrize("extra", [
    ["--lambda", "0.1", "--tune", "cv"],
    [],
    ["--lambda", "-1"],
    ["--lambda", "0.1", "--h", "-0.5"],
])
def test_invalid_option_combinations(runner, data_csv, extra):
    result = invoke(runner, "fit", "--input", data_csv, "--response", "y", *extra)
    assert result.exit_code == 2


def test_tune_requires_a_method(runner, data_csv):
    result = invoke(runner, "tune", "--input", data_csv, "--response", "y")
    assert result.exit_code == 2


def test_pivotal_tuning_ignores_the_response(runner, data_csv, tmp_path):
    frame = pd.read_csv(data_csv)
    permuted = tmp_path / "permuted.csv"
    frame.assign(y=frame["y"].to_numpy()[::-1]).to_csv(permuted, index=False)

    chosen = []
    for path in (data_csv, permuted):
        out = tmp_path / f"{path.stem}_tune.json"
        result = invoke(runner, "tune", "--input", path, "--response", "y", "--tune", "pivotal", "--seed", 3, "--output", out)
        assert result.exit_code == 0, result.output
        chosen.append(json.loads(out.read_text())["chosen_lambda"])
    assert chosen[0] == chosen[1]


def test_bic_tuning_reports_the_grid(runner, data_csv, tmp_path):
    out = tmp_path / "bic.csv"
    result = invoke(
        runner, "tune", "--input", data_csv, "--response", "y", "--tune", "bic",
        "--q", 5, "--format", "csv", "--output", out,
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert len(frame) == 50
    assert frame["lam"].is_monotonic_decreasing


def test_cross_validation_is_reproducible(runner, data_csv, tmp_path):
    documents = []
    for attempt in range(2):
        out = tmp_path / f"cv{attempt}.json"
        result = invoke(
            runner, "tune", "--input", data_csv, "--response", "y", "--tune", "cv",
            "--folds", 5, "--seed", 7, "--q", 3, "--output", out,
        )
        assert result.exit_code == 0, result.output
        documents.append(json.loads(out.read_text()))
    assert documents[0] == documents[1]
    assert documents[0]["method"] == "cv"
    assert documents[0]["details"]["folds"] == 5


def test_unknown_bench_scenario(runner):
    result = invoke(runner, "bench", "no-such-table")
    assert result.exit_code == 2
    assert "table1-desk" in result.output


@pytest.fixture
def tiny_presets(monkeypatch):
    scenarios = [
        Scenario(name="tiny/lasso", n=30, p=10, q=3, replications=2, seed=0),
        Scenario(name="tiny/scad", n=30, p=10, q=3, replications=2, seed=0, method="scqr-scad"),
    ]
    monkeypatch.setitem(PRESETS, "tiny", Preset(name="tiny", description="unit", scenarios=scenarios))
    monkeypatch.setitem(PRESETS, "tiny-runtime", Preset(name="tiny-runtime", description="unit", kind="runtime", sizes=(10,), repeats=1))


def test_bench_writes_reproducible_tables(runner, tiny_presets, tmp_path):
    frames = []
    for attempt in range(2):
        out = tmp_path / f"run{attempt}"
        result = invoke(runner, "bench", "tiny", "--seed", 4, "--no-progress", "--output", out)
        assert result.exit_code == 0, result.output
        assert len((out / "tiny_records.jsonl").read_text().splitlines()) == 4
        frames.append(pd.read_csv(out / "tiny_aggregate.csv").drop(columns="runtime_mean"))
    assert len(frames[0]) == 2
    pd.testing.assert_frame_equal(frames[0], frames[1])


def test_bench_runtime_preset(runner, tiny_presets, tmp_path):
    result = invoke(runner, "bench", "tiny-runtime", "--no-progress", "--output", tmp_path)
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "tiny-runtime_runtime.csv")
    assert list(frame[["n", "p"]].itertuples(index=False, name=None)) == [(10, 50)]


@pytest.mark.slow
def test_desk_runtime_figure(runner, tmp_path):
    result = invoke(runner, "bench", "figure1-desk", "--seed", 1, "--no-progress", "--output", tmp_path)
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "figure1-desk_runtime.csv")
    assert list(frame["n"]) == [20, 40, 60, 80, 100]
    assert (frame["p"] == 5 * frame["n"]).all()
    assert (frame["runtime_ratio"] > 1).all()
