"""Synthetic data for the benchmark scenarios"""
from dataclasses import dataclass

import numpy as np

from core.dataset import Dataset
from utils.random_streams import stream
from .scenarios import ErrorLaw, Scenario

# √6 × {0.5 N(0, 1) + 0.5 N(0, 0.5⁶)}
_MIXTURE_SCALE = np.sqrt(6.0)
_MIXTURE_NARROW_SD = 0.5 ** 3


@dataclass(frozen=True)
class SimulatedSample:
    data: Dataset
    beta_star: np.ndarray
    noise: np.ndarray


def ar1_design(rng: np.random.Generator, n: int, p: int, rho: float) -> np.ndarray:
    """Rows iid N_p(0, Σ) with Σ_jk = ρ^|j-k|, via x_j = ρ·x_{j-1} + √(1 - ρ²)·z_j"""
    Z = rng.standard_normal((n, p))
    X = np.empty((n, p))
    X[:, 0] = Z[:, 0]
    innovation = np.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        X[:, j] = rho * X[:, j - 1] + innovation * Z[:, j]
    return X


def draw_errors(rng: np.random.Generator, law: ErrorLaw, n: int) -> np.ndarray:
    if law is ErrorLaw.NORMAL3:
        return np.sqrt(3.0) * rng.standard_normal(n)
    if law is ErrorLaw.MIXTURE_NORMAL:
        wide = rng.random(n) < 0.5
        sd = np.where(wide, 1.0, _MIXTURE_NARROW_SD)
        return _MIXTURE_SCALE * sd * rng.standard_normal(n)
    if law is ErrorLaw.T3:
        return rng.standard_t(3, size=n)
    return rng.standard_cauchy(n)


def generate(scenario: Scenario, index: int, stream_name: str = "replication") -> SimulatedSample:
    """Replication ``index`` of the scenario; a function of (seed, stream_name, index) only"""
    rng = stream(scenario.seed, stream_name, index)
    X = ar1_design(rng, scenario.n, scenario.p, scenario.rho)
    eps = draw_errors(rng, scenario.error_law, scenario.n)
    beta = scenario.beta
    y = X @ beta + eps
    return SimulatedSample(data=Dataset(y=y, X=X), beta_star=beta, noise=eps)
