"""Regression data container"""
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import ContractError


@dataclass(frozen=True)
class Dataset:
    """
    Response vector y (length n) and covariate matrix X (n × p).

    When ``standardized`` is set, the columns of X have been centered and
    scaled; ``column_means`` and ``column_scales`` hold the original
    location and scale so coefficients can be mapped back.
    """

    y: np.ndarray
    X: np.ndarray
    standardized: bool = False
    column_means: Optional[np.ndarray] = field(default=None, repr=False)
    column_scales: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        X = np.array(self.X, dtype=float)
        if y.ndim != 1:
            raise ContractError(f"y must be one-dimensional, got shape {y.shape}")
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2 or X.shape[0] != y.shape[0]:
            raise ContractError(f"X has shape {X.shape}, expected ({y.shape[0]}, p)")
        if y.shape[0] < 2:
            raise ContractError(f"at least 2 observations are required, got {y.shape[0]}")
        if X.shape[1] < 1:
            raise ContractError("X needs at least one column")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(X))):
            raise ContractError("data contain non-finite values")
        y.setflags(write=False)
        X.setflags(write=False)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "X", X)

        if self.standardized:
            if self.column_means is None or self.column_scales is None:
                raise ContractError("standardized data must carry column means and scales")
            means = np.asarray(self.column_means, dtype=float)
            scales = np.asarray(self.column_scales, dtype=float)
            if means.shape != (X.shape[1],) or scales.shape != (X.shape[1],):
                raise ContractError("standardization metadata does not match the number of columns")
            if np.any(scales <= 0):
                raise ContractError("standardization scales must be positive")
            object.__setattr__(self, "column_means", means)
            object.__setattr__(self, "column_scales", scales)
        elif self.column_means is not None or self.column_scales is not None:
            raise ContractError("column metadata is only stored for standardized data")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    def standardize(self) -> "Dataset":
        """Center every column and scale it to unit standard deviation"""
        if self.standardized:
            return self
        means = self.X.mean(axis=0)
        scales = self.X.std(axis=0)
        constant = np.flatnonzero(scales <= 0)
        if constant.size:
            raise ContractError(f"columns {constant.tolist()} are constant and cannot be standardized")
        return Dataset(
            y=self.y,
            X=(self.X - means) / scales,
            standardized=True,
            column_means=means,
            column_scales=scales,
        )

    def restore_coefficients(self, alpha, beta):
        """Map (α, β) fitted on this data back to the original covariate scale"""
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        if beta.shape != (self.p,):
            raise ContractError(f"beta has shape {beta.shape}, expected ({self.p},)")
        if not self.standardized:
            return alpha.copy(), beta.copy()
        beta_orig = beta / self.column_scales
        alpha_orig = alpha - float(self.column_means @ beta_orig)
        return alpha_orig, beta_orig

    def subset(self, rows: Sequence[int]) -> "Dataset":
        """Rows of the data, keeping standardization metadata as is"""
        rows = np.asarray(rows, dtype=int)
        return Dataset(
            y=self.y[rows],
            X=self.X[rows],
            standardized=self.standardized,
            column_means=self.column_means,
            column_scales=self.column_scales,
        )

    def select_columns(self, cols: Sequence[int]) -> "Dataset":
        cols = np.asarray(cols, dtype=int)
        return Dataset(
            y=self.y,
            X=self.X[:, cols],
            standardized=self.standardized,
            column_means=None if self.column_means is None else self.column_means[cols],
            column_scales=None if self.column_scales is None else self.column_scales[cols],
        )
