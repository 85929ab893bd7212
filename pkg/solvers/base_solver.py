"""
Base Solver Class
Shared validation, timing and logging for the weighted-L1 solvers
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

import numpy as np

from config.logging_config import get_solver_logger, log_solver_execution
from core.exceptions import ContractError
from smoothing.smoothed_loss import ParamVector
from .results import FitResult


@dataclass
class SolveRecord:
    """Bookkeeping for one call of ``BaseSolver.run``"""

    started: str
    status: str = "running"
    elapsed_seconds: float = 0.0
    iterations: int = 0
    converged: bool = False
    error: Optional[str] = None
    metrics: Dict[str, Any] = field(default_factory=dict)


def problem_error(weights, p: int, q: int, init: Optional[ParamVector]) -> Optional[str]:
    """Message describing why (weights, init) do not fit a (q, p) problem, or None"""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (p,):
        return f"weights have shape {weights.shape}, expected ({p},)"
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        return "weights must be finite and nonnegative"
    if init is not None and (init.alpha.shape != (q,) or init.beta.shape != (p,)):
        return "initial point does not match (q, p)"
    return None


class BaseSolver(ABC):
    """
    Abstract base for the penalized CQR solvers.

    Subclasses implement ``validate_input`` and ``execute``; ``run`` wraps
    them with validation, timing, one ``SolveRecord`` per call and the
    solver log record. Failed solves are recorded, logged with traceback
    and re-raised.
    """

    def __init__(self, name: str, config: Any):
        self.name = name
        self.config = config
        self.logger = get_solver_logger(name)
        self.records: List[SolveRecord] = []

    @abstractmethod
    def execute(self, problem: Dict[str, Any]) -> FitResult:
        """Solve one validated problem instance"""

    @abstractmethod
    def validate_input(self, problem: Dict[str, Any]) -> tuple[bool, Optional[str]]:
        """
        Returns:
            Tuple of (is_valid, error_message)
        """

    @property
    def last(self) -> Optional[SolveRecord]:
        return self.records[-1] if self.records else None

    def log_metric(self, metric_name: str, value: Any):
        """Attach a metric to the solve in progress"""
        if self.last is not None:
            self.last.metrics[metric_name] = value
        self.logger.debug("%s = %s", metric_name, value)

    def run(self, **problem) -> FitResult:
        """
        Validate and solve one problem instance

        Raises:
            ContractError: when the problem fails validation
            NumericalError: when the objective becomes non-finite
        """
        record = SolveRecord(started=datetime.now().isoformat())
        self.records.append(record)
        start = time.perf_counter()
        try:
            is_valid, error_msg = self.validate_input(problem)
            if not is_valid:
                raise ContractError(f"Input validation failed: {error_msg}")
            result = self.execute(problem)
        except Exception as e:
            record.status = "failed"
            record.error = f"{type(e).__name__}: {e}"
            record.elapsed_seconds = time.perf_counter() - start
            self.logger.error("%s solve failed: %s", self.name, e, exc_info=True)
            raise

        record.elapsed_seconds = time.perf_counter() - start
        record.iterations = result.iterations
        record.converged = result.converged
        record.status = "completed" if result.converged else "not_converged"
        log_solver_execution(
            self.name, "completed", dict(result.summary(), **record.metrics, seconds=record.elapsed_seconds)
        )
        return result

    def __repr__(self) -> str:
        status = self.last.status if self.last else "idle"
        return f"{self.__class__.__name__}(name='{self.name}', status='{status}')"


__all__ = ['BaseSolver', 'SolveRecord', 'problem_error']
