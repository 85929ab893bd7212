"""
Simulation-based (pivotal) choice of λ

The score at the truth is approximated by the error-law-free proxy

    ω̃ = (1/nq) Σ_i Σ_k {1(u_ik ≤ τ_k) - τ_k}·x_i,   u_ik iid Uniform(0, 1)

and λ* = c times the (1 - α)-quantile of ‖ω̃‖∞ over B draws given X.
"""
import math

import numpy as np
from joblib import Parallel, delayed

from core.dataset import Dataset
from core.exceptions import ContractError, DomainError
from core.grid import QuantileGrid
from utils.logger import get_logger
from utils.random_streams import stream
from .report import TuneReport, record_for

logger = get_logger("tuning.pivotal")


def _score_norm(X: np.ndarray, taus: np.ndarray, seed: int, key: tuple) -> float:
    n = X.shape[0]
    u = stream(seed, "pivotal", *key).uniform(size=(n, taus.size))
    signs = ((u <= taus) - taus).sum(axis=1)
    return float(np.max(np.abs(X.T @ signs)) / (n * taus.size))


def pivotal_draws(X, grid: QuantileGrid, B: int, seed: int, threads: int = 1, key: tuple = ()) -> np.ndarray:
    """
    B simulated values of ‖ω̃‖∞.

    Draw b uses the stream (seed, "pivotal", *key, b), so the values do not
    depend on scheduling; ``key`` separates independent designs sharing a seed.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ContractError(f"X must be a matrix, got shape {X.shape}")
    if B < 1:
        raise DomainError(f"B must be at least 1, got {B}")
    taus = grid.taus
    if threads == 1:
        return np.array([_score_norm(X, taus, seed, (*key, b)) for b in range(B)])
    return np.array(Parallel(n_jobs=threads)(delayed(_score_norm)(X, taus, seed, (*key, b)) for b in range(B)))


def pivotal_lambda(
    X,
    grid: QuantileGrid,
    c: float = 1.9,
    alpha: float = 0.05,
    B: int = 200,
    seed: int = 0,
    threads: int = 1,
    key: tuple = (),
) -> float:
    """c times the order statistic ⌈(1 - α)B⌉ of the simulated ‖ω̃‖∞; never looks at y"""
    if not c > 1:
        raise DomainError(f"c must exceed 1, got {c}")
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    draws = np.sort(pivotal_draws(X, grid, B, seed, threads, key))
    rank = max(1, math.ceil(round((1.0 - alpha) * B, 9)))
    return float(c * draws[rank - 1])


def tune_pivotal(estimator, data: Dataset, c: float = 1.9, alpha: float = 0.05, B: int = 200, seed: int = 0, threads: int = 1) -> TuneReport:
    """Simulate λ* on the estimator's (standardized) design and fit once at it"""
    work = estimator.prepare(data)
    lam = pivotal_lambda(work.X, estimator.grid, c=c, alpha=alpha, B=B, seed=seed, threads=threads)
    fit = estimator.fit(data, lam)
    logger.info("pivotal lambda=%.6g (c=%g, alpha=%g, B=%d)", lam, c, alpha, B)
    return TuneReport(
        method="pivotal",
        chosen_lambda=lam,
        records=[record_for(fit)],
        fit=fit.to_dict(),
        details={"c": c, "alpha": alpha, "B": B, "seed": seed},
    )
