"""K-fold cross-validation over a λ grid"""
from typing import List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from core.dataset import Dataset
from core.exceptions import ContractError
from smoothing.smoothed_loss import composite_check_sum
from utils.logger import get_logger
from utils.random_streams import stream
from .report import TuneReport, record_for

logger = get_logger("tuning.cv")


def fold_assignment(n: int, folds: int, seed: int, *key: int) -> np.ndarray:
    """Seeded random partition of range(n) into ``folds`` near-equal blocks; returns the fold id per row"""
    if folds < 2:
        raise ContractError(f"at least 2 folds are required, got {folds}")
    if n < folds:
        raise ContractError(f"cannot split {n} observations into {folds} folds")
    perm = stream(seed, "folds", *key).permutation(n)
    ids = np.empty(n, dtype=int)
    for k, block in enumerate(np.array_split(perm, folds)):
        ids[block] = k
    return ids


def _held_out_losses(estimator, data: Dataset, fold_ids: np.ndarray, k: int, lambdas: List[float]) -> np.ndarray:
    train = np.flatnonzero(fold_ids != k)
    test = np.flatnonzero(fold_ids == k)
    fits = estimator.fit_path(data.subset(train), lambdas)
    y, X = data.y[test], data.X[test]
    return np.array([composite_check_sum(estimator.grid, y, X, fit.params()) for fit in fits])


def cross_validate(
    estimator,
    data: Dataset,
    lambdas: Sequence[float],
    folds: int = 5,
    seed: int = 0,
    fold_ids: Optional[Sequence[int]] = None,
    threads: int = 1,
) -> TuneReport:
    """
    Choose λ by K-fold cross-validation.

    The criterion at each λ is the unsmoothed composite check loss of the
    held-out rows, pooled over folds and divided by n·q. The minimizer is
    chosen; ties go to the larger λ. ``fold_ids`` overrides the seeded
    partition.

    Raises:
        ContractError: fewer than 2 folds, n < K, or a training split
            with fewer than 2 observations
    """
    lambdas = [float(lam) for lam in lambdas]
    if any(b >= a for a, b in zip(lambdas, lambdas[1:])):
        raise ContractError("lambda values must be strictly decreasing")
    n = data.n
    if fold_ids is None:
        fold_ids = fold_assignment(n, folds, seed)
    else:
        fold_ids = np.asarray(fold_ids, dtype=int)
        if fold_ids.shape != (n,):
            raise ContractError(f"fold_ids has shape {fold_ids.shape}, expected ({n},)")
    labels = np.unique(fold_ids)
    if labels.size < 2:
        raise ContractError("at least 2 folds are required")
    for k in labels:
        if np.count_nonzero(fold_ids != k) < 2:
            raise ContractError(f"training split for fold {k} has fewer than 2 observations")

    jobs = [delayed(_held_out_losses)(estimator, data, fold_ids, k, lambdas) for k in labels]
    jobs.append(delayed(estimator.fit_path)(data, lambdas))
    *fold_losses, full_fits = Parallel(n_jobs=threads)(jobs)

    criterion = np.sum(fold_losses, axis=0) / (n * estimator.grid.q)
    best = int(np.argmin(criterion))
    logger.info("CV selected lambda=%.6g over %d folds", lambdas[best], labels.size)

    return TuneReport(
        method="cv",
        chosen_lambda=lambdas[best],
        records=[record_for(fit, float(c)) for fit, c in zip(full_fits, criterion)],
        fit=full_fits[best].to_dict(),
        details={"folds": int(labels.size), "seed": seed},
    )
