"""Tuning reports"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class LambdaRecord(BaseModel):
    """Criterion value and fit summary at one λ"""

    lam: float
    criterion: Optional[float] = None
    support_size: int
    converged: bool
    iterations: int
    kkt_residual: float
    degenerate: bool = False


class TuneReport(BaseModel):
    """
    Outcome of a λ selection run.

    For cv and bic, ``records`` follows the grid (largest λ first) and
    ``chosen_lambda`` is one of its values; for pivotal there is a single
    record at the simulated λ.
    """

    method: Literal["cv", "bic", "pivotal"]
    chosen_lambda: float
    records: List[LambdaRecord] = Field(default_factory=list)
    fit: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def lambdas(self) -> List[float]:
        return [r.lam for r in self.records]

    @property
    def criteria(self) -> List[Optional[float]]:
        return [r.criterion for r in self.records]


def record_for(fit, criterion: Optional[float] = None, degenerate: bool = False) -> LambdaRecord:
    """Build a record from an ``EstimatorFit``"""
    return LambdaRecord(
        lam=fit.lam,
        criterion=criterion,
        support_size=int(fit.support.size),
        converged=fit.converged,
        iterations=fit.iterations,
        kkt_residual=float(fit.kkt_residual),
        degenerate=degenerate,
    )
