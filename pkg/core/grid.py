"""Quantile level grids"""
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from .exceptions import DomainError


class QuantileGrid(BaseModel):
    """Strictly increasing quantile levels τ_1 < ... < τ_q inside (0, 1)"""

    levels: Tuple[float, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("levels")
    @classmethod
    def validate_levels(cls, v):
        if len(v) < 1:
            raise ValueError("a quantile grid needs at least one level")
        for tau in v:
            if not 0.0 < tau < 1.0:
                raise ValueError(f"quantile level {tau} is outside (0, 1)")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("quantile levels must be strictly increasing")
        return tuple(float(t) for t in v)

    @property
    def q(self) -> int:
        return len(self.levels)

    @property
    def taus(self) -> np.ndarray:
        return np.asarray(self.levels, dtype=float)

    @property
    def mean_level(self) -> float:
        """τ̄ = q⁻¹ Σ τ_k"""
        return float(np.mean(self.levels))


def quantile_grid(q: int) -> QuantileGrid:
    """Equally spaced levels k/(q+1), k = 1..q"""
    if int(q) != q or q < 1:
        raise DomainError(f"q must be a positive integer, got {q}")
    q = int(q)
    return QuantileGrid(levels=tuple(k / (q + 1) for k in range(1, q + 1)))


def validate_level(tau) -> np.ndarray:
    """Check that every level lies in (0, 1); returns the levels as an array"""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau <= 0.0) or np.any(tau >= 1.0) or np.any(np.isnan(tau)):
        raise DomainError(f"quantile level must lie in (0, 1), got {tau}")
    return tau
