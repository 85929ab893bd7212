"""Solver results"""
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np


@dataclass(frozen=True)
class FitResult:
    """
    Output of a single weighted-L1 solve.

    ``objective_trace`` holds the penalized objective after every accepted
    iterate (index 0 is the starting point). ``converged`` is False when the
    iteration budget ran out or the step-size search gave up; ``message``
    then says which.
    """

    alpha_hat: np.ndarray
    beta_hat: np.ndarray
    iterations: int
    final_phi: float
    objective_trace: Tuple[float, ...]
    kkt_residual: float
    converged: bool
    message: str = ""
    solver: str = "lamm"
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def support(self) -> np.ndarray:
        """Indices j with beta_hat[j] != 0 (exact zeros only)"""
        return np.flatnonzero(self.beta_hat != 0.0)

    @property
    def objective(self) -> float:
        return self.objective_trace[-1]

    def summary(self) -> Dict[str, Any]:
        return {
            "solver": self.solver,
            "iterations": self.iterations,
            "final_phi": self.final_phi,
            "objective": self.objective,
            "kkt_residual": self.kkt_residual,
            "support_size": int(self.support.size),
            "converged": self.converged,
            "message": self.message,
        }
