"""
LAMM solver for weighted-L1-penalized smoothed CQR

Each iteration majorizes Q_h at the current point θ by the isotropic
quadratic

    F(θ'; φ, θ) = Q_h(θ) + ⟨∇Q_h(θ), θ' - θ⟩ + (φ/2)‖θ' - θ‖²

and minimizes F plus the weighted L1 penalty in closed form: a gradient
step on the intercepts and a soft-thresholded gradient step on the
slopes. φ starts at max(φ0, φ_prev/γ) and is inflated by γ until the
candidate satisfies F ≥ Q_h, which makes the penalized objective
nonincreasing.
"""
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from core.dataset import Dataset
from core.exceptions import ContractError, NumericalError
from core.kernels import CDF_CLAMP, kernel_cdf
from core.operators import soft_threshold
from smoothing.smoothed_loss import (
    ParamVector,
    SmoothedLossSpec,
    gradient_from_weights,
    residual_matrix,
    score_weights,
    smoothed_check_matrix,
)
from .base_solver import BaseSolver, problem_error
from .results import FitResult

# Relative slack on the majorization test, absorbing roundoff in F - Q_h
MAJORIZATION_SLACK = 1e-13


class LammConfig(BaseModel):
    """LAMM iteration controls"""

    phi0: float = Field(0.01, gt=0.0)
    gamma: float = Field(1.25, gt=1.0)
    tol: float = Field(1e-5, gt=0.0)
    max_iter: int = Field(5000, ge=1)
    irw_steps: int = Field(3, ge=1)
    max_inflations: int = Field(60, ge=1)

    model_config = ConfigDict(frozen=True)


def kkt_residual(grad_alpha: np.ndarray, grad_beta: np.ndarray, beta: np.ndarray, weights: np.ndarray) -> float:
    """
    Stationarity violation of the weighted-L1 problem:
    max_j |∂_j Q + w_j sign(β_j)| over β_j ≠ 0, (|∂_j Q| - w_j)₊ over β_j = 0,
    plus max_k |∂_{α_k} Q|
    """
    nonzero = beta != 0.0
    slope = np.where(
        nonzero,
        np.abs(grad_beta + weights * np.sign(beta)),
        np.maximum(np.abs(grad_beta) - weights, 0.0),
    )
    slope_part = float(slope.max()) if slope.size else 0.0
    return slope_part + float(np.max(np.abs(grad_alpha)))


class LammSolver(BaseSolver):
    """Local adaptive majorize-minimization for one weighted-L1 problem"""

    def __init__(self, config: Optional[LammConfig] = None):
        super().__init__("lamm", config or LammConfig())

    def validate_input(self, problem: Dict[str, Any]) -> tuple[bool, Optional[str]]:
        spec: SmoothedLossSpec = problem.get("spec")
        data: Dataset = problem.get("data")
        if spec is None or data is None:
            return False, "spec and data are required"
        error = problem_error(problem.get("weights"), data.p, spec.q, problem.get("init"))
        return error is None, error

    def execute(self, problem: Dict[str, Any]) -> FitResult:
        spec: SmoothedLossSpec = problem["spec"]
        data: Dataset = problem["data"]
        weights = np.asarray(problem["weights"], dtype=float)
        init: ParamVector = problem.get("init") or ParamVector.zeros(spec.q, data.p)
        cfg: LammConfig = self.config

        y, X = data.y, data.X
        alpha, beta = init.alpha.copy(), init.beta.copy()

        U = residual_matrix(y, X, ParamVector(alpha, beta))
        value = float(np.mean(smoothed_check_matrix(spec, U)))
        grad_alpha, grad_beta = gradient_from_weights(X, score_weights(spec, U))
        objective = value + float(weights @ np.abs(beta))
        if not np.isfinite(objective):
            raise NumericalError("objective is not finite at the initial point")
        slack = MAJORIZATION_SLACK * max(1.0, abs(value))

        trace = [objective]
        # (F at the accepted candidate, Q_h there), one pair per accepted iterate
        majorization = []
        phi = cfg.phi0
        change = np.inf
        iterations = 0
        total_inflations = 0
        converged = False
        message = ""

        while True:
            residual = kkt_residual(grad_alpha, grad_beta, beta, weights)
            if change <= cfg.tol and residual <= 10.0 * cfg.tol:
                converged = True
                break
            if iterations >= cfg.max_iter:
                message = f"max_iter={cfg.max_iter} reached"
                break
            iterations += 1

            phi = max(cfg.phi0, phi / cfg.gamma)
            accepted = False
            for _ in range(cfg.max_inflations + 1):
                alpha_new = alpha - grad_alpha / phi
                beta_new = soft_threshold(beta - grad_beta / phi, weights / phi)
                d_alpha = alpha_new - alpha
                d_beta = beta_new - beta
                U_new = residual_matrix(y, X, ParamVector(alpha_new, beta_new))
                value_new = float(np.mean(smoothed_check_matrix(spec, U_new)))
                if not np.isfinite(value_new):
                    raise NumericalError(f"loss became non-finite at iteration {iterations}")
                majorant = (
                    value
                    + grad_alpha @ d_alpha
                    + grad_beta @ d_beta
                    + 0.5 * phi * (d_alpha @ d_alpha + d_beta @ d_beta)
                )
                if majorant + slack >= value_new:
                    accepted = True
                    break
                phi *= cfg.gamma
                total_inflations += 1

            if not accepted:
                message = (
                    f"no majorizing phi after {cfg.max_inflations} inflations "
                    f"at iteration {iterations}"
                )
                self.logger.warning(message)
                break

            change = max(
                float(np.max(np.abs(d_alpha))),
                float(np.max(np.abs(d_beta))) if d_beta.size else 0.0,
            )
            majorization.append((float(majorant), value_new))
            alpha, beta, U, value = alpha_new, beta_new, U_new, value_new
            grad_alpha, grad_beta = gradient_from_weights(X, score_weights(spec, U))
            objective = value + float(weights @ np.abs(beta))
            trace.append(objective)

            if iterations % 500 == 0:
                self.logger.debug(
                    "iteration %d: objective=%.10g phi=%.4g change=%.3g",
                    iterations, objective, phi, change,
                )

        if not converged and not message:
            message = "stopped"
        self.log_metric("inflations", total_inflations)

        return FitResult(
            alpha_hat=alpha,
            beta_hat=beta,
            iterations=iterations,
            final_phi=float(phi),
            objective_trace=tuple(trace),
            kkt_residual=residual,
            converged=converged,
            message=message,
            solver=self.name,
            diagnostics={
                "inflations": total_inflations,
                "last_change": float(change),
                "majorization": tuple(majorization),
            },
        )


def solve_weighted_l1(
    spec: SmoothedLossSpec,
    data: Dataset,
    weights,
    init: Optional[ParamVector] = None,
    cfg: Optional[LammConfig] = None,
) -> FitResult:
    """Minimize Q_h(α, β) + Σ_j w_j|β_j| by LAMM, starting from ``init`` (zeros by default)"""
    return LammSolver(cfg).run(spec=spec, data=data, weights=weights, init=init)


def marginal_smoothed_quantiles(spec: SmoothedLossSpec, y) -> np.ndarray:
    """
    Intercepts of the slope-free smoothed fit: for each level, the root of
    (1/n) Σ_i K̄((α - y_i)/h) = τ_k
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or y.size == 0:
        raise ContractError("y must be a non-empty vector")
    h = spec.h
    lo = float(y.min()) - CDF_CLAMP * h - 1.0
    hi = float(y.max()) + CDF_CLAMP * h + 1.0
    out = np.empty(spec.q)
    for k, tau in enumerate(spec.grid.levels):
        out[k] = brentq(
            lambda a: float(np.mean(kernel_cdf(spec.kernel, (a - y) / h))) - tau,
            lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500,
        )
    return out


__all__ = [
    'LammConfig',
    'LammSolver',
    'solve_weighted_l1',
    'marginal_smoothed_quantiles',
    'kkt_residual',
]
