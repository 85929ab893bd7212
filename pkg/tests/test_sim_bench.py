"""Simulation generator, metric and benchmark runner tests"""
import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from bench import (
    PRESETS,
    BenchMethod,
    BenchmarkRunner,
    ErrorLaw,
    Scenario,
    TuningMode,
    generate,
    get_preset,
    model_error,
    run_benchmark,
    run_runtime_comparison,
    selection_counts,
)
from bench.reporting import AGGREGATE_COLUMNS, write_aggregate_csv, write_records_jsonl
from core import ContractError
from solvers.estimator import CompositeQuantileEstimator, Method


def ar1_matrix(p, rho):
    idx = np.arange(p)
    return rho ** np.abs(idx[:, None] - idx[None, :])


def test_independent_design_has_no_correlation():
    X = generate(Scenario(n=10_000, p=5, rho=0.0, seed=1), 0).data.X
    corr = np.corrcoef(X, rowvar=False)
    assert np.max(np.abs(corr - np.eye(5))) <= 0.05


def test_ar1_design_correlation():
    X = generate(Scenario(n=100_000, p=2, rho=0.5, seed=2), 0).data.X
    assert np.corrcoef(X, rowvar=False)[0, 1] == pytest.approx(0.5, abs=0.02)
    assert_allclose(X.var(axis=0), 1.0, atol=0.02)


def test_mixture_normal_variance():
    noise = generate(Scenario(n=100_000, p=1, error_law=ErrorLaw.MIXTURE_NORMAL, seed=3), 0).noise
    assert noise.var() == pytest.approx(3.046875, rel=0.05)


def test_normal3_variance():
    noise = generate(Scenario(n=100_000, p=1, error_law=ErrorLaw.NORMAL3, seed=3), 0).noise
    assert noise.var() == pytest.approx(3.0, rel=0.05)


def test_generation_is_a_function_of_seed_and_index():
    scenario = Scenario(n=30, p=8, seed=4)
    a, b = generate(scenario, 2), generate(scenario, 2)
    assert np.array_equal(a.data.X, b.data.X) and np.array_equal(a.data.y, b.data.y)
    assert not np.array_equal(generate(scenario, 3).data.y, a.data.y)
    assert_allclose(a.data.y, a.data.X @ a.beta_star + a.noise)


def test_default_signal():
    scenario = Scenario(n=10, p=8)
    assert scenario.beta_star == (3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0)
    assert list(scenario.true_support) == [0, 1, 4]
    assert Scenario(n=10, p=2).beta_star == (3.0, 1.5)


def test_scenario_validation():
    with pytest.raises(ValidationError):
        Scenario(n=1, p=3)
    with pytest.raises(ValidationError):
        Scenario(n=10, p=3, rho=1.0)
    with pytest.raises(ValidationError):
        Scenario(n=10, p=3, beta_star=(1.0, 2.0))
    with pytest.raises(ValidationError):
        Scenario(n=10, p=3, tuning=TuningMode.FIXED)


def test_model_error_values():
    beta = np.array([3.0, 1.5, 0.0])
    assert model_error(beta, beta, 0.5) == 0.0
    assert model_error([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], 0.0) == pytest.approx(1.0)
    assert model_error([1.0, 1.0], [0.0, 0.0], 0.5) == pytest.approx(3.0)
    with pytest.raises(ContractError):
        model_error([1.0, 2.0], [1.0], 0.5)


def test_model_error_matches_dense_covariance():
    rng = np.random.default_rng(5)
    for rho in (-0.7, 0.0, 0.3, 0.9):
        d = rng.standard_normal(40)
        assert model_error(d, np.zeros(40), rho) == pytest.approx(d @ ar1_matrix(40, rho) @ d, rel=1e-10)


def test_selection_counts_partition_the_support():
    beta_hat = np.array([1.0, 0.0, 0.3, 0.0, -2.0, 0.1])
    tp, fp = selection_counts(beta_hat, [0, 1, 4])
    assert (tp, fp) == (2, 2)
    assert tp + fp == np.count_nonzero(beta_hat)


def test_empty_scenario_has_no_aggregate():
    result = run_benchmark(Scenario(n=20, p=5, replications=0))
    assert result.records == []
    assert result.aggregate is None


def small_scenario(**kw):
    options = dict(n=40, p=20, q=5, replications=3, seed=9, tuning=TuningMode.PIVOTAL)
    options.update(kw)
    return Scenario(**options)


def strip_runtime(records):
    return [r.model_dump(exclude={"runtime_seconds"}) for r in records]


def test_benchmark_is_deterministic():
    scenario = small_scenario()
    first = run_benchmark(scenario)
    second = run_benchmark(scenario)
    assert strip_runtime(first.records) == strip_runtime(second.records)
    assert first.aggregate.ME_mean == second.aggregate.ME_mean
    assert [r.replication for r in first.records] == [0, 1, 2]


def test_parallel_replications_match_sequential():
    scenario = small_scenario()
    sequential = run_benchmark(scenario, threads=1).records
    parallel = run_benchmark(scenario, threads=2).records
    assert [(r.replication, r.tp, r.fp) for r in parallel] == [(r.replication, r.tp, r.fp) for r in sequential]
    assert_allclose([r.me for r in parallel], [r.me for r in sequential], rtol=1e-10)


def test_records_respect_support_bounds():
    scenario = small_scenario(method=BenchMethod.SCQR_SCAD)
    result = run_benchmark(scenario)
    for record in result.records:
        assert record.tp <= 3
        assert record.fp <= scenario.p - 3
        assert record.runtime_seconds >= 0
    assert result.aggregate.replications + result.aggregate.excluded == 3


def test_cauchy_errors_give_finite_model_error():
    result = run_benchmark(small_scenario(error_law=ErrorLaw.CAUCHY))
    assert all(np.isfinite(r.me) for r in result.records)


@pytest.mark.parametrize("tuning", [TuningMode.CV, TuningMode.BIC])
def test_grid_tuning_modes(tuning):
    result = run_benchmark(small_scenario(tuning=tuning, replications=2, n_lambda=8))
    assert len(result.records) == 2
    assert all(r.lam > 0 for r in result.records)


def test_fixed_lambda_and_oracle_methods():
    fixed = run_benchmark(small_scenario(tuning=TuningMode.FIXED, lam=0.1, replications=1))
    assert fixed.records[0].lam == 0.1
    oracle = run_benchmark(small_scenario(method=BenchMethod.SCQR_ORACLE, tuning=TuningMode.FIXED, replications=1))
    assert oracle.records[0].fp == 0
    assert oracle.records[0].tp == 3


def test_oracle_scan_picks_from_the_pilot_grid():
    scenario = small_scenario(tuning=TuningMode.ORACLE_SCAN, replications=2, pilot_replications=2, n_lambda=6)
    result = run_benchmark(scenario)
    assert result.details["lambda"] in result.details["grid"]
    assert all(r.lam == result.chosen_lambda for r in result.records)
    assert len(result.details["pilot_me"]) == 6


def test_admm_lasso_runs():
    result = run_benchmark(small_scenario(method=BenchMethod.CQR_ADMM_LASSO, replications=1))
    assert result.records[0].method == "cqr-admm-lasso"


def test_run_keeps_scenario_order():
    runner = BenchmarkRunner(threads=1, progress=False)
    scenarios = [small_scenario(replications=1), small_scenario(replications=0)]
    results = runner.run("unit", scenarios)
    assert [r.scenario for r in results] == scenarios
    assert results[0].aggregate is not None
    assert results[1].aggregate is None


def test_report_files(tmp_path):
    result = run_benchmark(small_scenario(replications=2))
    csv_path = write_aggregate_csv(tmp_path / "agg.csv", [result.aggregate])
    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == AGGREGATE_COLUMNS
    assert frame.loc[0, "replications"] + frame.loc[0, "excluded"] == 2
    lines = write_records_jsonl(tmp_path / "records.jsonl", result.records).read_text().splitlines()
    assert len(lines) == 2


def test_presets():
    assert {"table1", "table1-desk", "table2-desk", "table3-desk", "figure1", "figure1-desk"} <= set(PRESETS)
    assert get_preset("figure1-desk").kind == "runtime"
    desk = get_preset("table1-desk")
    assert all(s.replications == 20 and s.pilot_replications == 10 for s in desk.scenarios)
    assert all(s.seed == 5 for s in desk.with_seed(5).scenarios)
    with pytest.raises(KeyError, match="available"):
        get_preset("unknown-name")


def test_runtime_comparison_rows():
    rows = run_runtime_comparison([10, 20], repeats=1, seed=0, q=3)
    assert [(r.n, r.p) for r in rows] == [(10, 50), (20, 100)]
    assert all(r.admm_runtime > 0 and r.lamm_runtime > 0 for r in rows)


def test_runtime_comparison_warms_up_both_solvers(monkeypatch):
    calls = []
    original = CompositeQuantileEstimator.fit

    def counting_fit(self, data, lam, init=None):
        calls.append(self.method)
        return original(self, data, lam, init)

    monkeypatch.setattr(CompositeQuantileEstimator, "fit", counting_fit)
    run_runtime_comparison([10], repeats=1, seed=0, q=3)
    # warm-up pair first, then the timed pair
    assert calls == [Method.SCQR, Method.CQR_ADMM, Method.SCQR, Method.CQR_ADMM]


def desk_aggregates(law):
    preset = get_preset("table1-desk").with_seed(1)
    runner = BenchmarkRunner(threads=1, progress=False)
    return {
        s.method: runner.run_scenario(s)
        for s in preset.scenarios
        if s.error_law is law and s.method in (BenchMethod.SCQR_LASSO, BenchMethod.SCQR_SCAD)
    }


@pytest.mark.slow
def test_desk_table_normal_errors():
    results = desk_aggregates(ErrorLaw.NORMAL3)
    lasso = results[BenchMethod.SCQR_LASSO].aggregate
    scad = results[BenchMethod.SCQR_SCAD]
    assert 0.3 <= lasso.ME_mean <= 1.3
    assert 0.03 <= scad.aggregate.ME_mean <= 0.35
    assert scad.aggregate.ME_mean < 0.5 * lasso.ME_mean
    assert sum(r.tp == 3 for r in scad.records) >= 19
    assert scad.aggregate.FP_mean <= 1.0


@pytest.mark.slow
def test_desk_table_cauchy_errors():
    scad = desk_aggregates(ErrorLaw.CAUCHY)[BenchMethod.SCQR_SCAD].aggregate
    assert 0.07 <= scad.ME_mean <= 0.8


@pytest.mark.slow
def test_lamm_is_much_faster_than_admm():
    row = run_runtime_comparison([100], repeats=5, seed=0, p_factor=6)[0]
    assert row.p == 600
    assert row.lamm_runtime <= row.admm_runtime / 5
