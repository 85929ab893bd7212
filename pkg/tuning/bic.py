"""
High-dimensional BIC for composite quantile regression

    BIC(λ) = log((1/q) Σ_i Σ_k ρ_{τ_k}(y_i - α̂_k - x_iᵀβ̂)) + |Ŝ_λ|·C_n·log(p)/n

The residual term always uses the unsmoothed check loss.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from core.dataset import Dataset
from core.exceptions import ContractError
from core.grid import QuantileGrid
from smoothing.smoothed_loss import ParamVector, composite_check_sum
from utils.logger import get_logger
from .report import TuneReport, record_for

logger = get_logger("tuning.bic")

DEGENERATE_BIC = -1e30


@dataclass(frozen=True)
class BicScore:
    """BIC value; ``degenerate`` marks a zero residual loss (value is the -1e30 sentinel)"""

    value: float
    degenerate: bool = False
    loss: float = np.nan
    penalty_term: float = np.nan


def default_cn(n: int) -> float:
    """C_n = log(log n)"""
    return float(np.log(np.log(n)))


def _coefficients(fit) -> ParamVector:
    if hasattr(fit, "alpha_hat"):
        return ParamVector(fit.alpha_hat, fit.beta_hat)
    return ParamVector(fit.alpha, fit.beta)


def bic(data: Dataset, grid: QuantileGrid, fit, p: Optional[int] = None, cn: Optional[float] = None) -> BicScore:
    """
    BIC of a fit (``FitResult`` or ``EstimatorFit``) on ``data``.

    Args:
        p: dimension in the log(p) factor; data.p when None
        cn: C_n; log(log n) when None
    """
    params = _coefficients(fit)
    p = data.p if p is None else int(p)
    if p < 1:
        raise ContractError("p must be at least 1")
    cn = default_cn(data.n) if cn is None else float(cn)
    support_size = int(np.count_nonzero(params.beta))
    penalty_term = support_size * cn * np.log(p) / data.n
    loss = composite_check_sum(grid, data.y, data.X, params) / grid.q
    if loss <= 0:
        return BicScore(value=DEGENERATE_BIC, degenerate=True, loss=loss, penalty_term=penalty_term)
    return BicScore(value=float(np.log(loss) + penalty_term), loss=loss, penalty_term=penalty_term)


def select_by_bic(estimator, data: Dataset, lambdas: Sequence[float], cn: Optional[float] = None) -> TuneReport:
    """Fit the path along ``lambdas`` (decreasing) and pick the BIC minimizer; ties go to the larger λ"""
    fits = estimator.fit_path(data, list(lambdas))
    scores = [bic(data, estimator.grid, fit, cn=cn) for fit in fits]
    values = np.array([s.value for s in scores])
    best = int(np.argmin(values))
    logger.info("BIC selected lambda=%.6g (support=%d)", fits[best].lam, fits[best].support.size)
    return TuneReport(
        method="bic",
        chosen_lambda=fits[best].lam,
        records=[record_for(f, s.value, s.degenerate) for f, s in zip(fits, scores)],
        fit=fits[best].to_dict(),
        details={"cn": default_cn(data.n) if cn is None else float(cn)},
    )
