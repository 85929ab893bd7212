"""Simulation scenarios for the sparse linear model y = xᵀβ* + ε"""
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from core.penalties import PenaltyFamily
from solvers.estimator import Method

SIGNAL = (3.0, 1.5, 0.0, 0.0, 2.0)


class ErrorLaw(str, Enum):
    NORMAL3 = "normal3"
    MIXTURE_NORMAL = "mixture_normal"
    T3 = "t3"
    CAUCHY = "cauchy"


class BenchMethod(str, Enum):
    CQR_ADMM_LASSO = "cqr-admm-lasso"
    SCQR_LASSO = "scqr-lasso"
    SCQR_SCAD = "scqr-scad"
    SCQR_MCP = "scqr-mcp"
    SCQR_ORACLE = "scqr-oracle"

    @property
    def solver_method(self) -> Method:
        return Method.CQR_ADMM if self is BenchMethod.CQR_ADMM_LASSO else Method.SCQR

    @property
    def penalty(self) -> PenaltyFamily:
        if self is BenchMethod.SCQR_SCAD:
            return PenaltyFamily.SCAD
        if self is BenchMethod.SCQR_MCP:
            return PenaltyFamily.MCP
        return PenaltyFamily.L1


class TuningMode(str, Enum):
    FIXED = "fixed"
    CV = "cv"
    BIC = "bic"
    PIVOTAL = "pivotal"
    ORACLE_SCAN = "oracle-scan"


def default_beta_star(p: int) -> Tuple[float, ...]:
    """β* = (3, 1.5, 0, 0, 2, 0, ..., 0) truncated or padded to length p"""
    beta = np.zeros(p)
    m = min(p, len(SIGNAL))
    beta[:m] = SIGNAL[:m]
    return tuple(beta)


class Scenario(BaseModel):
    """One benchmark cell: a data-generating design, a method and a tuning mode"""

    name: str = "scenario"
    n: int = Field(..., ge=2)
    p: int = Field(..., ge=1)
    beta_star: Optional[Tuple[float, ...]] = Field(None, validate_default=True)
    rho: float = Field(0.5, gt=-1.0, lt=1.0)
    error_law: ErrorLaw = ErrorLaw.NORMAL3
    method: BenchMethod = BenchMethod.SCQR_LASSO
    tuning: TuningMode = TuningMode.PIVOTAL
    lam: Optional[float] = Field(None, gt=0.0)
    replications: int = Field(20, ge=0)
    pilot_replications: int = Field(10, ge=1)
    seed: int = 0
    q: int = Field(19, ge=1)
    folds: int = Field(5, ge=2)
    n_lambda: int = Field(50, ge=2)
    lambda_min_ratio: float = Field(0.01, gt=0.0, lt=1.0)

    model_config = ConfigDict(frozen=True)

    @field_validator("beta_star")
    @classmethod
    def validate_beta_star(cls, v, info: ValidationInfo):
        p = info.data.get("p")
        if v is None:
            return None if p is None else default_beta_star(p)
        if not all(np.isfinite(v)):
            raise ValueError("beta_star must be finite")
        if p is not None and len(v) != p:
            raise ValueError(f"beta_star has length {len(v)}, expected p = {p}")
        return tuple(float(b) for b in v)

    @model_validator(mode="after")
    def validate_tuning(self):
        if self.tuning is TuningMode.FIXED and self.lam is None and self.method is not BenchMethod.SCQR_ORACLE:
            raise ValueError("fixed tuning needs lam")
        return self

    @property
    def beta(self) -> np.ndarray:
        return np.asarray(self.beta_star, dtype=float)

    @property
    def true_support(self) -> np.ndarray:
        return np.flatnonzero(self.beta != 0.0)

    @property
    def label(self) -> str:
        return f"{self.name}:{self.method.value}:{self.error_law.value}:n{self.n}p{self.p}"
