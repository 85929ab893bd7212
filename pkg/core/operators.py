"""Scalar operators: the check loss and its two proximal maps"""
import numpy as np

from .exceptions import DomainError
from .grid import validate_level


def check_loss(tau, u):
    """ρ_τ(u) = (τ - 1(u < 0))·u"""
    tau = validate_level(tau)
    u = np.asarray(u, dtype=float)
    out = (tau - (u < 0)) * u
    return out[()] if out.ndim == 0 else out


def soft_threshold(v, a):
    """Shrink(v, a) = sign(v)·(|v| - a)₊"""
    a = np.asarray(a, dtype=float)
    if np.any(a < 0):
        raise DomainError("soft-threshold level must be nonnegative")
    v = np.asarray(v, dtype=float)
    out = np.sign(v) * np.maximum(np.abs(v) - a, 0.0)
    return out[()] if out.ndim == 0 else out


def prox_check(tau, v, a):
    """
    Proximal map of the check loss: v - max{(τ - 1)/a, min(v, τ/a)}.

    This is argmin_z ρ_τ(z) + (a/2)(z - v)².
    """
    tau = validate_level(tau)
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise DomainError("prox_check needs a > 0")
    v = np.asarray(v, dtype=float)
    out = v - np.maximum((tau - 1.0) / a, np.minimum(v, tau / a))
    return out[()] if out.ndim == 0 else out
