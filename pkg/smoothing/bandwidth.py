"""Bandwidth selection"""
import numpy as np

from core.grid import QuantileGrid

BANDWIDTH_FLOOR = 0.01


def default_bandwidth(n: int, p: int, grid: QuantileGrid) -> float:
    """h = max{0.01, √(τ̄(1 - τ̄))·(log(p)/n)^{1/4}} with τ̄ the mean level"""
    tau_bar = grid.mean_level
    rate = max(np.log(p), 0.0) / n
    return float(max(BANDWIDTH_FLOOR, np.sqrt(tau_bar * (1.0 - tau_bar)) * rate ** 0.25))
