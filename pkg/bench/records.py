"""Benchmark records and aggregates"""
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field


class BenchRecord(BaseModel):
    """Outcome of one replication"""

    scenario: str
    method: str
    replication: int
    me: float = Field(..., ge=0.0)
    tp: int = Field(..., ge=0)
    fp: int = Field(..., ge=0)
    runtime_seconds: float
    lam: Optional[float] = None
    converged: bool = True


class BenchAggregate(BaseModel):
    """Summary over the converged replications of one scenario"""

    scenario: str
    method: str
    error_law: str
    n: int
    p: int
    ME_mean: float
    ME_se: float
    TP_mean: float
    FP_mean: float
    runtime_mean: float
    replications: int
    excluded: int


class RuntimeRow(BaseModel):
    """One (n, p) point of a solver runtime comparison"""

    n: int
    p: int
    admm_ME: float
    lamm_ME: float
    admm_runtime: float
    lamm_runtime: float
    runtime_ratio: float
    admm_converged: int
    lamm_converged: int


def aggregate(records: List[BenchRecord], scenario, label: str) -> Optional[BenchAggregate]:
    """Mean/standard error over converged records; None when there is nothing to aggregate"""
    kept = [r for r in records if r.converged]
    if not kept:
        return None
    me = np.array([r.me for r in kept])
    se = float(me.std(ddof=1) / np.sqrt(me.size)) if me.size > 1 else 0.0
    return BenchAggregate(
        scenario=label,
        method=scenario.method.value,
        error_law=scenario.error_law.value,
        n=scenario.n,
        p=scenario.p,
        ME_mean=float(me.mean()),
        ME_se=se,
        TP_mean=float(np.mean([r.tp for r in kept])),
        FP_mean=float(np.mean([r.fp for r in kept])),
        runtime_mean=float(np.mean([r.runtime_seconds for r in kept])),
        replications=len(kept),
        excluded=len(records) - len(kept),
    )
