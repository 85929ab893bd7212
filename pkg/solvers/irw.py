"""
Iteratively reweighted L1 (local linear approximation)

Step 1 solves the problem with uniform weights λ from β = 0. Step t ≥ 2
uses w_j = λ·P′(|β̂ᵗ⁻¹_j|/λ) and warm-starts from step t - 1. The same
driver runs with either inner solver.
"""
from typing import Callable, List, Optional

import numpy as np

from core.dataset import Dataset
from core.exceptions import DomainError
from core.grid import QuantileGrid
from core.penalties import PenaltySpec, penalty_weight
from smoothing.smoothed_loss import ParamVector, SmoothedLossSpec
from utils.logger import get_logger
from .admm_solver import AdmmConfig, solve_cqr_admm
from .lamm_solver import LammConfig, solve_weighted_l1
from .results import FitResult

logger = get_logger("solver.irw")

InnerSolve = Callable[[np.ndarray, ParamVector], FitResult]


def run_reweighting(
    inner: InnerSolve,
    penalty: PenaltySpec,
    init: ParamVector,
    steps: int,
) -> List[FitResult]:
    """
    Drive ``steps`` reweighted solves through ``inner(weights, init)``.

    When the recomputed weights equal the previous step's exactly, the
    previous result is reused without solving again.
    """
    if steps < 1:
        raise DomainError(f"at least one reweighting step is required, got {steps}")
    if penalty.is_concave and steps > 1 and penalty.lam <= 0:
        raise DomainError("reweighting with SCAD/MCP needs lambda > 0")

    p = init.beta.size
    weights = np.full(p, penalty.lam)
    results: List[FitResult] = []
    previous_weights: Optional[np.ndarray] = None
    start = init

    for step in range(steps):
        if results:
            weights = penalty_weight(penalty, np.abs(results[-1].beta_hat))
        if previous_weights is not None and np.array_equal(weights, previous_weights):
            results.append(results[-1])
            continue
        result = inner(weights, start)
        logger.debug(
            "reweighting step %d/%d: support=%d converged=%s",
            step + 1, steps, result.support.size, result.converged,
        )
        results.append(result)
        previous_weights = weights
        start = ParamVector(result.alpha_hat, result.beta_hat)

    return results


def solve_irw(
    spec: SmoothedLossSpec,
    data: Dataset,
    penalty: PenaltySpec,
    cfg: Optional[LammConfig] = None,
    init: Optional[ParamVector] = None,
) -> List[FitResult]:
    """Reweighted smoothed CQR with the LAMM inner solver; one result per step"""
    cfg = cfg or LammConfig()
    start = init or ParamVector.zeros(spec.q, data.p)

    def inner(weights, warm):
        return solve_weighted_l1(spec, data, weights, init=warm, cfg=cfg)

    return run_reweighting(inner, penalty, start, cfg.irw_steps)


def solve_irw_admm(
    data: Dataset,
    grid: QuantileGrid,
    penalty: PenaltySpec,
    cfg: Optional[AdmmConfig] = None,
    steps: int = 1,
    init: Optional[ParamVector] = None,
) -> List[FitResult]:
    """Reweighted (unsmoothed) CQR with the ADMM inner solver"""
    start = init or ParamVector.zeros(grid.q, data.p)

    def inner(weights, warm):
        return solve_cqr_admm(data, grid, weights, cfg=cfg, init=warm)

    return run_reweighting(inner, penalty, start, steps)


__all__ = ['run_reweighting', 'solve_irw', 'solve_irw_admm']
