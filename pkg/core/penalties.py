"""
Penalty families and their reweighting derivatives

The reweighting step of the iteratively reweighted L1 scheme needs
only the penalty derivative: w_j = λ·P′(|β_j|/λ).
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from .exceptions import DomainError

DEFAULT_CONCAVITY = {"scad": 3.7, "mcp": 3.0}


class PenaltyFamily(str, Enum):
    L1 = "l1"
    SCAD = "scad"
    MCP = "mcp"


@dataclass(frozen=True)
class PenaltySpec:
    """Penalty family, level λ and concavity a (unused for L1)"""

    family: PenaltyFamily = PenaltyFamily.L1
    lam: float = 0.0
    a: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family", PenaltyFamily(self.family))
        if not np.isfinite(self.lam) or self.lam < 0:
            raise DomainError(f"lambda must be a nonnegative finite number, got {self.lam}")
        if self.family is PenaltyFamily.SCAD:
            if self.a is None or not self.a > 2.0:
                raise DomainError(f"SCAD requires a > 2, got {self.a}")
        elif self.family is PenaltyFamily.MCP:
            if self.a is None or not self.a >= 1.0:
                raise DomainError(f"MCP requires a >= 1, got {self.a}")

    @classmethod
    def with_default_a(cls, family, lam: float = 0.0, a: Optional[float] = None) -> "PenaltySpec":
        """Build a spec, filling in a = 3.7 (SCAD) or a = 3.0 (MCP) when not given"""
        family = PenaltyFamily(str(getattr(family, "value", family)).lower())
        if a is None:
            a = DEFAULT_CONCAVITY.get(family.value)
        return cls(family=family, lam=float(lam), a=a)

    def with_lambda(self, lam: float) -> "PenaltySpec":
        return replace(self, lam=float(lam))

    @property
    def is_concave(self) -> bool:
        return self.family is not PenaltyFamily.L1


def penalty_weight(spec: PenaltySpec, t):
    """λ·P′(t/λ), elementwise over t ≥ 0"""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise DomainError("penalty_weight expects nonnegative arguments")
    lam = spec.lam
    if spec.family is PenaltyFamily.L1:
        return np.full_like(t, lam)
    if lam <= 0:
        raise DomainError(f"{spec.family.value.upper()} reweighting needs lambda > 0")
    a = spec.a
    if spec.family is PenaltyFamily.SCAD:
        u = t / lam
        tail = np.maximum(a - u, 0.0) / (a - 1.0)
        return lam * np.where(u <= 1.0, 1.0, tail)
    return np.maximum(lam - t / a, 0.0)
