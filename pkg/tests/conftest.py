"""Shared fixtures"""
import logging

import numpy as np
import pytest

from core import Dataset, quantile_grid
from core.kernels import KernelSpec
from smoothing import SmoothedLossSpec


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    logging.getLogger().handlers.clear()


def make_data(seed: int, n: int = 40, p: int = 5, signal=(1.0, -0.5), noise: float = 1.0) -> Dataset:
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    beta = np.zeros(p)
    beta[: len(signal)] = signal[:p]
    y = X @ beta + noise * rng.standard_normal(n)
    return Dataset(y=y, X=X)


@pytest.fixture
def small_data() -> Dataset:
    return make_data(0)


@pytest.fixture
def small_spec() -> SmoothedLossSpec:
    return SmoothedLossSpec(grid=quantile_grid(3), kernel=KernelSpec(), h=0.5)
