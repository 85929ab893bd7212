"""λ anchors and grids"""
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from core.dataset import Dataset
from core.exceptions import DomainError
from smoothing.smoothed_loss import ParamVector, SmoothedLossSpec, loss_gradient
from solvers.lamm_solver import marginal_smoothed_quantiles


class LambdaGrid(BaseModel):
    """Strictly decreasing positive λ values"""

    values: Tuple[float, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("values")
    @classmethod
    def validate_values(cls, v):
        if len(v) < 1:
            raise ValueError("a lambda grid needs at least one value")
        if any(not np.isfinite(x) or x <= 0 for x in v):
            raise ValueError("lambda values must be positive and finite")
        if any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError("lambda values must be strictly decreasing")
        return tuple(float(x) for x in v)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def lambda_max(self) -> float:
        return self.values[0]


def lambda_max(spec: SmoothedLossSpec, data: Dataset) -> float:
    """
    Smallest λ at which β = 0 is stationary: ‖∇_β Q_h(α̃, 0)‖∞ with α̃
    the marginal smoothed quantiles of y.
    """
    alpha = marginal_smoothed_quantiles(spec, data.y)
    _, grad_beta = loss_gradient(spec, data, ParamVector(alpha, np.zeros(data.p)))
    return float(np.max(np.abs(grad_beta)))


def estimator_lambda_max(estimator, data: Dataset) -> float:
    """λ_max on the scale the estimator fits on"""
    work = estimator.prepare(data)
    return lambda_max(estimator.loss_spec(work), work)


def lambda_grid(lam_max: float, n_values: int = 50, min_ratio: float = 0.01) -> LambdaGrid:
    """``n_values`` geometrically spaced values from λ_max down to min_ratio·λ_max"""
    if not lam_max > 0:
        raise DomainError(f"lambda_max must be positive, got {lam_max}")
    if not 0 < min_ratio < 1:
        raise DomainError(f"min_ratio must lie in (0, 1), got {min_ratio}")
    if n_values < 1:
        raise DomainError("n_values must be at least 1")
    if n_values == 1:
        return LambdaGrid(values=(float(lam_max),))
    return LambdaGrid(values=tuple(np.geomspace(lam_max, min_ratio * lam_max, n_values)))
