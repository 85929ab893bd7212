"""
Convolution-smoothed composite quantile loss

    Q_h(α, β) = (1/nq) Σ_i Σ_k ℓ_{h,k}(y_i - α_k - x_iᵀβ),   ℓ_{h,k} = ρ_{τ_k} * K_h

All evaluations go through the n × q residual matrix
U[i, k] = y_i - x_iᵀβ - α_k, so a value or a gradient costs one
pass over n·q entries plus one product with X.
"""
from dataclasses import dataclass, replace

import numpy as np

from core.dataset import Dataset
from core.exceptions import ContractError, DomainError
from core.grid import QuantileGrid
from core.kernels import KernelSpec, as_kernel, kernel_abs_moment, kernel_cdf, kernel_pdf


@dataclass(frozen=True)
class SmoothedLossSpec:
    """Quantile grid, kernel and bandwidth h > 0"""

    grid: QuantileGrid
    kernel: KernelSpec
    h: float

    def __post_init__(self):
        object.__setattr__(self, "kernel", as_kernel(self.kernel))
        if not np.isfinite(self.h) or self.h <= 0:
            raise DomainError(f"bandwidth must be positive, got {self.h}")
        object.__setattr__(self, "h", float(self.h))

    @property
    def q(self) -> int:
        return self.grid.q

    def with_bandwidth(self, h: float) -> "SmoothedLossSpec":
        return replace(self, h=h)


@dataclass(frozen=True)
class ParamVector:
    """Intercepts α (one per quantile level) and shared slopes β"""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = np.atleast_1d(np.array(self.alpha, dtype=float))
        beta = np.atleast_1d(np.array(self.beta, dtype=float))
        if alpha.ndim != 1 or beta.ndim != 1:
            raise ContractError("alpha and beta must be vectors")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def zeros(cls, q: int, p: int) -> "ParamVector":
        return cls(alpha=np.zeros(q), beta=np.zeros(p))

    @classmethod
    def from_flat(cls, theta, q: int) -> "ParamVector":
        theta = np.asarray(theta, dtype=float)
        return cls(alpha=theta[:q], beta=theta[q:])

    def flat(self) -> np.ndarray:
        return np.concatenate([self.alpha, self.beta])

    def residuals(self, data: Dataset) -> np.ndarray:
        """r_i(β) = y_i - x_iᵀβ"""
        return data.y - data.X @ self.beta


def _check_dimensions(q: int, X: np.ndarray, params: ParamVector):
    if params.alpha.shape != (q,):
        raise ContractError(f"alpha has length {params.alpha.size}, expected q = {q}")
    if params.beta.shape != (X.shape[1],):
        raise ContractError(f"beta has length {params.beta.size}, expected p = {X.shape[1]}")


def residual_matrix(y: np.ndarray, X: np.ndarray, params: ParamVector) -> np.ndarray:
    """U[i, k] = y_i - x_iᵀβ - α_k"""
    return (y - X @ params.beta)[:, None] - params.alpha[None, :]


def smoothed_check_matrix(spec: SmoothedLossSpec, U: np.ndarray) -> np.ndarray:
    """ℓ_{h,k}(U[i, k]) for every entry, levels along the last axis"""
    h = spec.h
    return 0.5 * h * kernel_abs_moment(spec.kernel, U / h) + (spec.grid.taus - 0.5) * U


def smoothed_check(spec: SmoothedLossSpec, k: int, u):
    """
    ℓ_{h,k}(u) = (ρ_{τ_k} * K_h)(u) for the level at position ``k`` (0-based).

    Uses (h/2)·L(u/h) + (τ_k - 1/2)·u with L(t) = E|t - S|; for the
    Gaussian kernel this equals h·φ(u/h) + u·(τ_k - Φ(-u/h)).
    """
    if not 0 <= k < spec.q:
        raise ContractError(f"level index {k} is outside 0..{spec.q - 1}")
    tau = spec.grid.levels[k]
    u = np.asarray(u, dtype=float)
    h = spec.h
    out = 0.5 * h * kernel_abs_moment(spec.kernel, u / h) + (tau - 0.5) * u
    return out[()] if np.ndim(out) == 0 else out


def loss_value(spec: SmoothedLossSpec, data: Dataset, params: ParamVector) -> float:
    """Q_h(α, β)"""
    _check_dimensions(spec.q, data.X, params)
    U = residual_matrix(data.y, data.X, params)
    return float(np.mean(smoothed_check_matrix(spec, U)))


def score_weights(spec: SmoothedLossSpec, U: np.ndarray) -> np.ndarray:
    """W[i, k] = K̄((α_k - r_i)/h) - τ_k"""
    return kernel_cdf(spec.kernel, -U / spec.h) - spec.grid.taus


def gradient_from_weights(X: np.ndarray, W: np.ndarray):
    nq = W.size
    return W.sum(axis=0) / nq, X.T @ W.sum(axis=1) / nq


def loss_gradient(spec: SmoothedLossSpec, data: Dataset, params: ParamVector):
    """
    Analytic gradient of Q_h.

    Returns:
        (grad_alpha, grad_beta) with
        ∂Q_h/∂α_k = (1/nq) Σ_i W[i, k] and ∇_β Q_h = (1/nq) Σ_i (Σ_k W[i, k])·x_i
    """
    _check_dimensions(spec.q, data.X, params)
    U = residual_matrix(data.y, data.X, params)
    return gradient_from_weights(data.X, score_weights(spec, U))


def loss_value_and_gradient(spec: SmoothedLossSpec, data: Dataset, params: ParamVector):
    """Value and gradient sharing one residual pass"""
    _check_dimensions(spec.q, data.X, params)
    U = residual_matrix(data.y, data.X, params)
    value = float(np.mean(smoothed_check_matrix(spec, U)))
    grad_alpha, grad_beta = gradient_from_weights(data.X, score_weights(spec, U))
    return value, grad_alpha, grad_beta


def hessian_quadratic_form(spec: SmoothedLossSpec, data: Dataset, params: ParamVector, direction) -> float:
    """dᵀ ∇²Q_h d = (1/nq) Σ_i Σ_k K_h(α_k - r_i)·(d_{α_k} + x_iᵀd_β)²"""
    _check_dimensions(spec.q, data.X, params)
    d = np.asarray(direction, dtype=float)
    if d.shape != (spec.q + data.p,):
        raise ContractError(f"direction has shape {d.shape}, expected ({spec.q + data.p},)")
    d_alpha, d_beta = d[: spec.q], d[spec.q:]
    U = residual_matrix(data.y, data.X, params)
    density = kernel_pdf(spec.kernel, U / spec.h) / spec.h
    lin = d_alpha[None, :] + (data.X @ d_beta)[:, None]
    return float(np.mean(density * lin * lin))


def composite_check_sum(grid: QuantileGrid, y: np.ndarray, X: np.ndarray, params: ParamVector) -> float:
    """Σ_i Σ_k ρ_{τ_k}(y_i - α_k - x_iᵀβ) on raw arrays (any number of rows)"""
    _check_dimensions(grid.q, X, params)
    U = residual_matrix(np.asarray(y, dtype=float), np.asarray(X, dtype=float), params)
    return float(np.sum((grid.taus - (U < 0)) * U))


def composite_check_loss(grid: QuantileGrid, data: Dataset, params: ParamVector) -> float:
    """Unsmoothed composite check loss (1/nq) Σ_i Σ_k ρ_{τ_k}(y_i - α_k - x_iᵀβ)"""
    return composite_check_sum(grid, data.y, data.X, params) / (data.n * grid.q)
