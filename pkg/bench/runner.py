"""Benchmark Runner - drives replications of simulation scenarios"""
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from config.settings import settings as default_settings
from solvers.estimator import CompositeQuantileEstimator, Method
from tuning.bic import select_by_bic
from tuning.cross_validation import cross_validate, fold_assignment
from tuning.lambda_grid import estimator_lambda_max, lambda_grid
from tuning.pivotal import pivotal_lambda
from utils.logger import get_logger
from .data_generator import generate
from .metrics import model_error, selection_counts
from .records import BenchAggregate, BenchRecord, RuntimeRow, aggregate
from .scenarios import BenchMethod, ErrorLaw, Scenario, TuningMode


@dataclass
class BenchResult:
    scenario: Scenario
    records: List[BenchRecord]
    aggregate: Optional[BenchAggregate]
    chosen_lambda: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)


class BenchmarkRunner:
    """
    Runs scenarios replication by replication.

    Replications are dispatched through joblib with ``threads`` workers and
    gathered in index order; every statistical output depends only on the
    scenario and its seed.
    """

    def __init__(self, config=None, threads: Optional[int] = None, progress: Optional[bool] = None):
        self.config = config or default_settings
        self.threads = threads or self.config.bench.threads
        self.progress = self.config.bench.progress if progress is None else progress
        self.logger = get_logger("bench.runner")

    def build_estimator(self, scenario: Scenario, **overrides) -> CompositeQuantileEstimator:
        """Estimator for the scenario's method, with library defaults from the settings"""
        model = self.config.model
        method = scenario.method
        options = dict(
            method=method.solver_method,
            penalty=method.penalty,
            q=scenario.q,
            kernel=model.kernel,
            bandwidth=model.bandwidth,
            a=self.config.concavity(method.penalty.value),
            lamm=self.config.lamm_config(),
            admm=self.config.admm_config(),
            standardize=model.standardize,
        )
        options.update(overrides)
        return CompositeQuantileEstimator(**options)

    def _grid(self, scenario: Scenario, estimator: CompositeQuantileEstimator, data) -> List[float]:
        lam_max = estimator_lambda_max(estimator, data)
        return list(lambda_grid(lam_max, scenario.n_lambda, scenario.lambda_min_ratio).values)

    def _replicate(self, scenario: Scenario, index: int, lam: Optional[float] = None) -> BenchRecord:
        estimator = self.build_estimator(scenario)
        sample = generate(scenario, index)
        data = sample.data
        tuning = self.config.tuning

        start = time.perf_counter()
        if scenario.method is BenchMethod.SCQR_ORACLE:
            support = scenario.true_support
            fit = estimator.fit_unpenalized(data.select_columns(support))
            beta = np.zeros(scenario.p)
            beta[support] = fit.beta
            lam, converged = 0.0, fit.converged
        elif scenario.tuning in (TuningMode.FIXED, TuningMode.ORACLE_SCAN):
            lam = scenario.lam if lam is None else lam
            fit = estimator.fit(data, lam)
            beta, converged = fit.beta, fit.converged
        elif scenario.tuning is TuningMode.PIVOTAL:
            lam = pivotal_lambda(
                estimator.prepare(data).X,
                estimator.grid,
                c=self.config.pivotal_c(scenario.method.penalty.value),
                alpha=tuning.pivotal_alpha,
                B=tuning.pivotal_replications,
                seed=scenario.seed,
                key=(index,),
            )
            fit = estimator.fit(data, lam)
            beta, converged = fit.beta, fit.converged
        else:
            grid = self._grid(scenario, estimator, data)
            if scenario.tuning is TuningMode.CV:
                folds = fold_assignment(data.n, scenario.folds, scenario.seed, index)
                report = cross_validate(estimator, data, grid, fold_ids=folds)
            else:
                report = select_by_bic(estimator, data, grid, cn=tuning.bic_cn)
            lam = report.chosen_lambda
            beta = np.asarray(report.fit["beta"], dtype=float)
            converged = bool(report.fit["converged"])
        runtime = time.perf_counter() - start

        tp, fp = selection_counts(beta, scenario.true_support)
        return BenchRecord(
            scenario=scenario.name,
            method=scenario.method.value,
            replication=index,
            me=model_error(beta, sample.beta_star, scenario.rho),
            tp=tp,
            fp=fp,
            runtime_seconds=runtime,
            lam=lam,
            converged=converged,
        )

    def _pilot_errors(self, scenario: Scenario, index: int, grid: List[float]) -> np.ndarray:
        estimator = self.build_estimator(scenario)
        sample = generate(scenario, index, stream_name="pilot")
        fits = estimator.fit_path(sample.data, grid)
        return np.array([model_error(f.beta, sample.beta_star, scenario.rho) for f in fits])

    def oracle_lambda(self, scenario: Scenario) -> Dict[str, Any]:
        """
        Scan a fixed λ grid on pilot replications and return the λ with the
        smallest mean true model error
        """
        anchor = generate(scenario, 0, stream_name="pilot").data
        grid = self._grid(scenario, self.build_estimator(scenario), anchor)
        errors = self._parallel(
            [delayed(self._pilot_errors)(scenario, i, grid) for i in range(scenario.pilot_replications)],
            desc=f"{scenario.label} pilot",
        )
        mean_error = np.mean(errors, axis=0)
        best = int(np.argmin(mean_error))
        self.logger.info("oracle scan for %s: lambda=%.6g (pilot ME %.4f)", scenario.label, grid[best], mean_error[best])
        return {"lambda": grid[best], "grid": grid, "pilot_me": mean_error.tolist()}

    def _parallel(self, jobs: list, desc: str) -> list:
        iterable = tqdm(jobs, desc=desc, disable=not self.progress, leave=False)
        if self.threads == 1:
            return [fn(*args, **kwargs) for fn, args, kwargs in iterable]
        return Parallel(n_jobs=self.threads)(iterable)

    def _warm_up(self, scenario: Scenario, *estimators: CompositeQuantileEstimator):
        """One untimed fit per estimator (the scenario's own when none are given)"""
        data = generate(scenario, 0, stream_name="warmup").data
        for estimator in estimators or (self.build_estimator(scenario),):
            estimator.fit(data, estimator_lambda_max(estimator, data))

    def run_scenario(self, scenario: Scenario) -> BenchResult:
        """
        Run all replications of one scenario

        Non-converged replications are kept in the records and excluded
        from the aggregate (with a count).
        """
        if scenario.replications == 0:
            return BenchResult(scenario=scenario, records=[], aggregate=None)

        self.logger.info("Running %s (%d replications)", scenario.label, scenario.replications)
        details: Dict[str, Any] = {}
        lam = None
        if scenario.tuning is TuningMode.ORACLE_SCAN and scenario.method is not BenchMethod.SCQR_ORACLE:
            details = self.oracle_lambda(scenario)
            lam = details["lambda"]

        self._warm_up(scenario)
        records = self._parallel(
            [delayed(self._replicate)(scenario, i, lam) for i in range(scenario.replications)],
            desc=scenario.label,
        )
        summary = aggregate(records, scenario, scenario.name)
        excluded = sum(not r.converged for r in records)
        if excluded:
            self.logger.warning("%s: %d replication(s) did not converge and were excluded", scenario.label, excluded)
        return BenchResult(scenario=scenario, records=records, aggregate=summary, chosen_lambda=lam, details=details)

    def run(self, name: str, scenarios: Sequence[Scenario]) -> List[BenchResult]:
        """Run a list of scenarios in order"""
        try:
            results = [self.run_scenario(s) for s in scenarios]
        except Exception as e:
            self.logger.error(f"Benchmark {name} failed: {str(e)}", exc_info=True)
            raise
        excluded = sum(r.aggregate.excluded for r in results if r.aggregate is not None)
        self.logger.info("Benchmark %s finished: %d scenario(s), %d excluded replication(s)", name, len(results), excluded)
        return results

    def _timed_pair(self, scenario: Scenario, index: int, lamm_est, admm_est) -> Dict[str, Any]:
        sample = generate(scenario, index)
        data = sample.data
        lam = pivotal_lambda(
            lamm_est.prepare(data).X,
            lamm_est.grid,
            c=self.config.pivotal_c("l1"),
            alpha=self.config.tuning.pivotal_alpha,
            B=self.config.tuning.pivotal_replications,
            seed=scenario.seed,
            key=(index,),
        )
        row = {}
        for tag, est in (("lamm", lamm_est), ("admm", admm_est)):
            start = time.perf_counter()
            fit = est.fit(data, lam)
            row[f"{tag}_runtime"] = time.perf_counter() - start
            row[f"{tag}_me"] = model_error(fit.beta, sample.beta_star, scenario.rho)
            row[f"{tag}_converged"] = fit.converged
        return row

    def run_runtime_comparison(
        self,
        sizes: Sequence[int],
        repeats: int = 3,
        seed: int = 0,
        error_law: ErrorLaw = ErrorLaw.NORMAL3,
        rho: float = 0.5,
        q: int = 19,
        tol: Optional[float] = None,
        p_factor: float = 5.0,
    ) -> List[RuntimeRow]:
        """
        L1-penalized CQR by ADMM against SCQR by LAMM at p = p_factor·n (5n by default), same λ
        (pivotal rule) and the same stopping tolerance for both solvers.

        Timings are taken one fit at a time in this process, so the two
        solvers are compared under identical threading.
        """
        tol = self.config.admm.primal_tol if tol is None else tol
        rows = []
        for n in tqdm(sizes, desc="runtime comparison", disable=not self.progress, leave=False):
            p = int(round(p_factor * n))
            scenario = Scenario(
                name="runtime", n=n, p=p, rho=rho, error_law=error_law,
                method=BenchMethod.SCQR_LASSO, q=q, replications=repeats, seed=seed,
            )
            lamm_est = self.build_estimator(
                scenario, method=Method.SCQR,
                lamm=self.config.lamm_config().model_copy(update={"tol": tol}),
            )
            admm_est = self.build_estimator(
                scenario, method=Method.CQR_ADMM,
                admm=self.config.admm_config().model_copy(update={"primal_tol": tol, "dual_tol": tol}),
            )
            self._warm_up(scenario, lamm_est, admm_est)
            pairs = [self._timed_pair(scenario, i, lamm_est, admm_est) for i in range(repeats)]
            admm_runtime = float(np.mean([r["admm_runtime"] for r in pairs]))
            lamm_runtime = float(np.mean([r["lamm_runtime"] for r in pairs]))
            rows.append(RuntimeRow(
                n=n,
                p=p,
                admm_ME=float(np.mean([r["admm_me"] for r in pairs])),
                lamm_ME=float(np.mean([r["lamm_me"] for r in pairs])),
                admm_runtime=admm_runtime,
                lamm_runtime=lamm_runtime,
                runtime_ratio=admm_runtime / lamm_runtime if lamm_runtime > 0 else float("inf"),
                admm_converged=sum(r["admm_converged"] for r in pairs),
                lamm_converged=sum(r["lamm_converged"] for r in pairs),
            ))
            self.logger.info("runtime comparison n=%d p=%d: ratio %.2f", n, p, rows[-1].runtime_ratio)
        return rows


def run_benchmark(scenario: Scenario, threads: int = 1, progress: bool = False, config=None) -> BenchResult:
    """Run one scenario; returns its records and aggregate"""
    return BenchmarkRunner(config=config, threads=threads, progress=progress).run_scenario(scenario)


def run_runtime_comparison(sizes: Sequence[int], repeats: int = 3, seed: int = 0, config=None, **kwargs) -> List[RuntimeRow]:
    return BenchmarkRunner(config=config, threads=1, progress=False).run_runtime_comparison(sizes, repeats, seed, **kwargs)


__all__ = ['BenchResult', 'BenchmarkRunner', 'run_benchmark', 'run_runtime_comparison']
