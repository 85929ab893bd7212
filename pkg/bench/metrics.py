"""Estimation and selection metrics"""
from typing import Tuple

import numpy as np
from scipy.signal import lfilter

from core.exceptions import ContractError


def ar1_quadratic_form(d, rho: float) -> float:
    """dᵀΣd for Σ_jk = ρ^|j-k| without forming Σ (forward and backward AR filters)"""
    d = np.asarray(d, dtype=float)
    if d.size == 0:
        return 0.0
    forward = lfilter([1.0], [1.0, -rho], d)
    backward = lfilter([1.0], [1.0, -rho], d[::-1])[::-1]
    return float(d @ (forward + backward - d))


def model_error(beta_hat, beta_star, rho: float) -> float:
    """Squared model error ‖β̂ - β*‖²_Σ"""
    beta_hat = np.asarray(beta_hat, dtype=float)
    beta_star = np.asarray(beta_star, dtype=float)
    if beta_hat.shape != beta_star.shape:
        raise ContractError(f"beta_hat has shape {beta_hat.shape}, beta_star has {beta_star.shape}")
    return max(ar1_quadratic_form(beta_hat - beta_star, rho), 0.0)


def selection_counts(beta_hat, true_support) -> Tuple[int, int]:
    """(TP, FP): selected coordinates inside and outside the true support"""
    selected = np.flatnonzero(np.asarray(beta_hat) != 0.0)
    truth = np.zeros(np.asarray(beta_hat).size, dtype=bool)
    truth[np.asarray(true_support, dtype=int)] = True
    tp = int(np.count_nonzero(truth[selected]))
    return tp, int(selected.size - tp)
