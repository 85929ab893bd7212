"""
ADMM baseline for weighted-L1-penalized (unsmoothed) CQR

The problem

    min (1/nq) Σ_i Σ_k ρ_{τ_k}(z_ik) + Σ_j λ_j|γ_j|
    s.t. Z + X₁φ = Y,  γ = X₂φ

with φ = (α, β), X₁ = [I_q ⊗ 1_n, 1_q ⊗ X], X₂ = [0, I_p] and Y the
response repeated per level, is split into a φ-step (a linear system in
M = X₁ᵀX₁ + X₂ᵀX₂, factorized once), a z-step (proximal map of the check
loss), a γ-step (soft-thresholding) and multiplier ascent with step σ.
"""
from typing import Any, Dict, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from core.dataset import Dataset
from core.exceptions import NumericalError
from core.grid import QuantileGrid
from core.operators import prox_check, soft_threshold
from smoothing.smoothed_loss import ParamVector, composite_check_loss
from .base_solver import BaseSolver, problem_error
from .results import FitResult

# Tolerated relative excess of the final objective over the best iterate seen
BEST_ITERATE_SLACK = 1e-4


class AdmmConfig(BaseModel):
    """ADMM iteration controls"""

    sigma: float = Field(1.0, gt=0.0)
    max_iter: int = Field(20000, ge=1)
    primal_tol: float = Field(1e-4, gt=0.0)
    dual_tol: float = Field(1e-4, gt=0.0)
    direct_factor_limit: int = Field(2000, ge=1)

    model_config = ConfigDict(frozen=True)


class AdmmState:
    """Primal, slack and multiplier blocks of one ADMM run"""

    def __init__(self, varphi: np.ndarray, Z: np.ndarray, gamma_slack: np.ndarray, U: np.ndarray, v: np.ndarray):
        self.varphi = varphi
        self.Z = Z
        self.gamma_slack = gamma_slack
        self.U = U
        self.v = v

    @classmethod
    def start(cls, data: Dataset, q: int, init: Optional[ParamVector] = None) -> "AdmmState":
        varphi = np.zeros(q + data.p) if init is None else init.flat()
        fitted = varphi[:q][None, :] + (data.X @ varphi[q:])[:, None]
        return cls(
            varphi=varphi,
            Z=data.y[:, None] - fitted,
            gamma_slack=varphi[q:].copy(),
            U=np.zeros((data.n, q)),
            v=np.zeros(data.p),
        )


class NormalSystem:
    """
    Cached solver for M φ = b with M = X₁ᵀX₁ + X₂ᵀX₂.

    ``direct`` factorizes the (q + p) × (q + p) matrix M. ``woodbury``
    eliminates the intercept block and inverts the Schur complement
    I_p + q·X_cᵀX_c (X_c the column-centered X) through the n × n
    matrix I_n + q·X_c X_cᵀ.
    """

    def __init__(self, X: np.ndarray, q: int, route: Literal["auto", "direct", "woodbury"] = "auto", direct_limit: int = 2000):
        n, p = X.shape
        self.n, self.p, self.q = n, p, q
        if route == "auto":
            route = "direct" if p + q <= direct_limit else "woodbury"
        self.route = route
        self.X = X
        self.col_sums = X.sum(axis=0)
        try:
            if route == "direct":
                M = np.empty((q + p, q + p))
                M[:q, :q] = n * np.eye(q)
                M[:q, q:] = self.col_sums[None, :]
                M[q:, :q] = self.col_sums[:, None]
                M[q:, q:] = q * (X.T @ X) + np.eye(p)
                self._factor = cho_factor(M, lower=True, check_finite=False)
            else:
                self._Xc = X - self.col_sums / n
                inner = np.eye(n) + q * (self._Xc @ self._Xc.T)
                self._factor = cho_factor(inner, lower=True, check_finite=False)
        except LinAlgError as e:
            raise NumericalError(f"normal matrix is not positive definite: {e}") from e

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self.route == "direct":
            return cho_solve(self._factor, rhs, check_finite=False)
        q, n = self.q, self.n
        f, g = rhs[:q], rhs[q:]
        r = g - self.col_sums * (f.sum() / n)
        # (I + q XcᵀXc)⁻¹ r = r - q Xcᵀ (I + q Xc Xcᵀ)⁻¹ Xc r
        beta = r - q * (self._Xc.T @ cho_solve(self._factor, self._Xc @ r, check_finite=False))
        alpha = (f - self.col_sums @ beta) / n
        return np.concatenate([alpha, beta])


def _objective(grid: QuantileGrid, data: Dataset, alpha, beta, weights) -> float:
    return composite_check_loss(grid, data, ParamVector(alpha, beta)) + float(weights @ np.abs(beta))


class AdmmSolver(BaseSolver):
    """ADMM for one weighted-L1 CQR problem"""

    def __init__(self, config: Optional[AdmmConfig] = None, route: str = "auto"):
        super().__init__("admm", config or AdmmConfig())
        self.route = route

    def validate_input(self, problem: Dict[str, Any]) -> tuple[bool, Optional[str]]:
        data: Dataset = problem.get("data")
        grid: QuantileGrid = problem.get("grid")
        if data is None or grid is None:
            return False, "data and grid are required"
        error = problem_error(problem.get("weights"), data.p, grid.q, problem.get("init"))
        return error is None, error

    def execute(self, problem: Dict[str, Any]) -> FitResult:
        data: Dataset = problem["data"]
        grid: QuantileGrid = problem["grid"]
        weights = np.asarray(problem["weights"], dtype=float)
        cfg: AdmmConfig = self.config

        n, p, q = data.n, data.p, grid.q
        X, y = data.X, data.y
        sigma = cfg.sigma
        taus = grid.taus
        prox_scale = n * q * sigma

        system = NormalSystem(X, q, route=self.route, direct_limit=cfg.direct_factor_limit)
        self.log_metric("route", system.route)
        st = AdmmState.start(data, q, problem.get("init"))

        best_objective = _objective(grid, data, st.varphi[:q], st.gamma_slack, weights)
        best = (st.varphi[:q].copy(), st.gamma_slack.copy())
        trace = [best_objective]
        converged = False
        primal_z = primal_g = change = np.inf
        iterations = 0

        for iterations in range(1, cfg.max_iter + 1):
            # φ-step: σMφ = X₁ᵀ(σY - σZ - U) + X₂ᵀ(σγ + v)
            A = sigma * (y[:, None] - st.Z) - st.U
            rhs = np.concatenate([A.sum(axis=0), X.T @ A.sum(axis=1)])
            rhs[q:] += sigma * st.gamma_slack + st.v
            varphi = system.solve(rhs) / sigma
            alpha, beta = varphi[:q], varphi[q:]
            fitted = alpha[None, :] + (X @ beta)[:, None]

            st.Z = prox_check(taus, y[:, None] - fitted - st.U / sigma, prox_scale)
            st.gamma_slack = soft_threshold(beta - st.v / sigma, weights / sigma)

            coupling = st.Z + fitted - y[:, None]
            st.U = st.U + sigma * coupling
            st.v = st.v + sigma * (st.gamma_slack - beta)

            primal_z = float(np.max(np.abs(coupling)))
            primal_g = float(np.max(np.abs(st.gamma_slack - beta))) if p else 0.0
            change = float(np.max(np.abs(varphi - st.varphi)))
            st.varphi = varphi

            objective = _objective(grid, data, alpha, st.gamma_slack, weights)
            if not np.isfinite(objective):
                raise NumericalError(f"objective became non-finite at iteration {iterations}")
            if objective < best_objective:
                best_objective = objective
                best = (alpha.copy(), st.gamma_slack.copy())
            trace.append(best_objective)

            if primal_z <= cfg.primal_tol and primal_g <= cfg.primal_tol and change <= cfg.dual_tol:
                converged = True
                break

        alpha_hat, beta_hat = st.varphi[:q].copy(), st.gamma_slack.copy()
        final_objective = _objective(grid, data, alpha_hat, beta_hat, weights)
        if final_objective > best_objective + BEST_ITERATE_SLACK * max(abs(best_objective), 1e-12):
            alpha_hat, beta_hat = best
            self.logger.debug("returning best iterate (objective %.10g)", best_objective)

        message = "" if converged else f"max_iter={cfg.max_iter} reached"
        if not converged:
            self.logger.warning(
                "ADMM stopped without convergence: primal=(%.3g, %.3g) change=%.3g",
                primal_z, primal_g, change,
            )

        return FitResult(
            alpha_hat=alpha_hat,
            beta_hat=beta_hat,
            iterations=iterations,
            final_phi=sigma,
            objective_trace=tuple(trace),
            kkt_residual=max(primal_z, primal_g, change),
            converged=converged,
            message=message,
            solver=self.name,
            diagnostics={"primal_z": primal_z, "primal_gamma": primal_g, "change": change, "route": system.route},
        )


def solve_cqr_admm(
    data: Dataset,
    grid: QuantileGrid,
    weights,
    cfg: Optional[AdmmConfig] = None,
    init: Optional[ParamVector] = None,
    route: str = "auto",
) -> FitResult:
    """Minimize the composite check loss plus Σ_j w_j|β_j| by ADMM"""
    return AdmmSolver(cfg, route=route).run(data=data, grid=grid, weights=weights, init=init)


__all__ = [
    'AdmmConfig',
    'AdmmState',
    'AdmmSolver',
    'NormalSystem',
    'solve_cqr_admm',
]
