"""
High-level penalized composite quantile regression estimator

Combines the fitting method (smoothed LAMM or ADMM baseline), penalty
family, kernel, bandwidth rule, standardization and solver settings into
one object used by tuning, the benchmark harness and the CLI.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from core.dataset import Dataset
from core.exceptions import DomainError
from core.grid import QuantileGrid, quantile_grid
from core.kernels import KernelSpec, as_kernel
from core.penalties import PenaltyFamily, PenaltySpec
from smoothing.bandwidth import default_bandwidth
from smoothing.smoothed_loss import ParamVector, SmoothedLossSpec
from utils.logger import get_logger
from .admm_solver import AdmmConfig
from .irw import solve_irw, solve_irw_admm
from .lamm_solver import LammConfig, solve_weighted_l1
from .results import FitResult

logger = get_logger("solver.estimator")


class Method(str, Enum):
    SCQR = "scqr"
    CQR_ADMM = "cqr-admm"


@dataclass(frozen=True)
class EstimatorFit:
    """
    A fit at one λ, coefficients on the original covariate scale.

    ``steps`` holds the solver result of every reweighting step, on the
    (possibly standardized) scale the solver worked on.
    """

    lam: float
    h: Optional[float]
    alpha: np.ndarray
    beta: np.ndarray
    steps: List[FitResult]
    method: Method
    penalty: PenaltySpec
    q: int

    @property
    def final(self) -> FitResult:
        return self.steps[-1]

    @property
    def converged(self) -> bool:
        return all(step.converged for step in self.steps)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.beta != 0.0)

    @property
    def iterations(self) -> int:
        return sum(step.iterations for step in self.steps)

    @property
    def kkt_residual(self) -> float:
        return self.final.kkt_residual

    def params(self) -> ParamVector:
        return ParamVector(self.alpha, self.beta)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready document; floats are kept as Python floats (full precision)"""
        return {
            "alpha": [float(a) for a in self.alpha],
            "beta": [float(b) for b in self.beta],
            "support": [int(j) for j in self.support],
            "lambda": float(self.lam),
            "h": None if self.h is None else float(self.h),
            "q": self.q,
            "method": self.method.value,
            "penalty": self.penalty.family.value,
            "iterations": self.iterations,
            "kkt_residual": float(self.kkt_residual),
            "converged": self.converged,
        }


class CompositeQuantileEstimator:
    """
    Penalized composite quantile regression

    Args:
        method: "scqr" (smoothed, LAMM) or "cqr-admm" (unsmoothed, ADMM)
        penalty: "l1", "scad" or "mcp"
        q: number of quantile levels k/(q+1), or an explicit QuantileGrid
        kernel: smoothing kernel family
        bandwidth: h > 0, or "auto" for the default rule
        a: concavity parameter (SCAD/MCP default when None)
        lamm: LAMM settings; its ``irw_steps`` sets the number of reweighting steps
        admm: ADMM settings
        standardize: center and scale the covariates before fitting
    """

    def __init__(
        self,
        method: Union[Method, str] = Method.SCQR,
        penalty: Union[PenaltyFamily, str] = PenaltyFamily.L1,
        q: Union[int, QuantileGrid] = 19,
        kernel: Union[KernelSpec, str] = "gaussian",
        bandwidth: Union[float, str] = "auto",
        a: Optional[float] = None,
        lamm: Optional[LammConfig] = None,
        admm: Optional[AdmmConfig] = None,
        standardize: bool = True,
    ):
        self.method = Method(method)
        self.family = PenaltyFamily(str(getattr(penalty, "value", penalty)).lower())
        self.grid = q if isinstance(q, QuantileGrid) else quantile_grid(q)
        self.kernel = as_kernel(kernel)
        if bandwidth != "auto" and not float(bandwidth) > 0:
            raise DomainError(f"bandwidth must be positive or 'auto', got {bandwidth}")
        self.bandwidth = bandwidth
        self.a = a
        self.lamm = lamm or LammConfig()
        self.admm = admm or AdmmConfig()
        self.standardize = standardize
        # validates a for the family
        self.penalty(0.0)

    @property
    def irw_steps(self) -> int:
        return self.lamm.irw_steps

    def penalty(self, lam: float) -> PenaltySpec:
        return PenaltySpec.with_default_a(self.family, lam=lam, a=self.a)

    def prepare(self, data: Dataset) -> Dataset:
        """The data the solvers see (standardized when requested)"""
        return data.standardize() if self.standardize else data

    def bandwidth_for(self, data: Dataset) -> float:
        if self.bandwidth == "auto":
            return default_bandwidth(data.n, data.p, self.grid)
        return float(self.bandwidth)

    def loss_spec(self, data: Dataset) -> SmoothedLossSpec:
        return SmoothedLossSpec(grid=self.grid, kernel=self.kernel, h=self.bandwidth_for(data))

    def _solve(self, work: Dataset, penalty: PenaltySpec, init: Optional[ParamVector]) -> List[FitResult]:
        if self.method is Method.SCQR:
            return solve_irw(self.loss_spec(work), work, penalty, cfg=self.lamm, init=init)
        return solve_irw_admm(work, self.grid, penalty, cfg=self.admm, steps=self.irw_steps, init=init)

    def _wrap(self, data: Dataset, work: Dataset, lam: float, penalty: PenaltySpec, steps: List[FitResult]) -> EstimatorFit:
        alpha, beta = work.restore_coefficients(steps[-1].alpha_hat, steps[-1].beta_hat)
        h = self.bandwidth_for(work) if self.method is Method.SCQR else None
        return EstimatorFit(
            lam=float(lam), h=h, alpha=alpha, beta=beta, steps=steps,
            method=self.method, penalty=penalty, q=self.grid.q,
        )

    def fit(self, data: Dataset, lam: float, init: Optional[ParamVector] = None) -> EstimatorFit:
        """
        Fit at a single λ.

        ``init`` is a starting point on the solver's scale, e.g.
        ``previous_fit.final`` coefficients when walking a path.
        """
        work = self.prepare(data)
        penalty = self.penalty(lam)
        steps = self._solve(work, penalty, init)
        fit = self._wrap(data, work, lam, penalty, steps)
        logger.info(
            "%s-%s fit at lambda=%.6g: support=%d converged=%s",
            self.method.value, self.family.value, lam, fit.support.size, fit.converged,
        )
        return fit

    def fit_path(self, data: Dataset, lambdas: Sequence[float]) -> List[EstimatorFit]:
        """Fits along ``lambdas`` in the given order, each warm-started from the previous one"""
        work = self.prepare(data)
        fits: List[EstimatorFit] = []
        warm: Optional[ParamVector] = None
        for lam in lambdas:
            penalty = self.penalty(lam)
            steps = self._solve(work, penalty, warm)
            fits.append(self._wrap(data, work, lam, penalty, steps))
            # the next first step is an L1 problem; start it from this L1 solution
            warm = ParamVector(steps[0].alpha_hat, steps[0].beta_hat)
        return fits

    def fit_unpenalized(self, data: Dataset) -> EstimatorFit:
        """λ = 0 fit (the oracle estimator when ``data`` holds only the true covariates)"""
        work = self.prepare(data)
        penalty = self.penalty(0.0)
        zeros = np.zeros(work.p)
        if self.method is Method.SCQR:
            steps = [solve_weighted_l1(self.loss_spec(work), work, zeros, cfg=self.lamm)]
        else:
            steps = solve_irw_admm(work, self.grid, PenaltySpec(), cfg=self.admm, steps=1)
        return self._wrap(data, work, 0.0, penalty, steps)


__all__ = ['Method', 'EstimatorFit', 'CompositeQuantileEstimator']
