"""
Smoothing kernels

Each kernel K is a symmetric density with unit scale; the bandwidth h
enters through K_h(u) = K(u/h)/h. Besides the density and the
distribution function K̄, every kernel provides the closed form of
L(t) = E|t - S| for S ~ K, which gives the convolution-smoothed check
loss without quadrature:

    (ρ_τ * K_h)(u) = (h/2)·L(u/h) + (τ - 1/2)·u
"""
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import expit, ndtr

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)
CDF_CLAMP = 40.0


class KernelFamily(str, Enum):
    GAUSSIAN = "gaussian"
    LOGISTIC = "logistic"
    UNIFORM = "uniform"
    EPANECHNIKOV = "epanechnikov"


class KernelSpec(BaseModel):
    """Kernel family; scale enters only through the bandwidth"""

    family: KernelFamily = KernelFamily.GAUSSIAN

    model_config = ConfigDict(frozen=True)

    @property
    def positive_everywhere(self) -> bool:
        """Whether K > 0 on the whole real line (Uniform and Epanechnikov are compactly supported)"""
        return self.family in (KernelFamily.GAUSSIAN, KernelFamily.LOGISTIC)


def as_kernel(kernel) -> KernelSpec:
    if isinstance(kernel, KernelSpec):
        return kernel
    return KernelSpec(family=KernelFamily(str(kernel).lower()))


def kernel_pdf(spec: KernelSpec, u):
    """Kernel density K(u)"""
    u = np.asarray(u, dtype=float)
    family = spec.family
    if family is KernelFamily.GAUSSIAN:
        return _INV_SQRT_2PI * np.exp(-0.5 * u * u)
    if family is KernelFamily.LOGISTIC:
        e = np.exp(-np.abs(u))
        return e / (1.0 + e) ** 2
    inside = np.abs(u) <= 1.0
    if family is KernelFamily.UNIFORM:
        return np.where(inside, 0.5, 0.0)
    return np.where(inside, 0.75 * (1.0 - u * u), 0.0)


def kernel_cdf(spec: KernelSpec, u):
    """Kernel distribution function K̄(u); arguments beyond ±40 map to 0 / 1"""
    u = np.asarray(u, dtype=float)
    family = spec.family
    if family is KernelFamily.GAUSSIAN:
        out = ndtr(u)
    elif family is KernelFamily.LOGISTIC:
        out = expit(u)
    elif family is KernelFamily.UNIFORM:
        out = np.clip(0.5 * (u + 1.0), 0.0, 1.0)
    else:
        v = np.clip(u, -1.0, 1.0)
        out = 0.5 + 0.75 * v - 0.25 * v ** 3
    out = np.where(u >= CDF_CLAMP, 1.0, np.where(u <= -CDF_CLAMP, 0.0, out))
    return out[()] if out.ndim == 0 else out


def kernel_abs_moment(spec: KernelSpec, t):
    """L(t) = E|t - S| with S distributed as K"""
    t = np.asarray(t, dtype=float)
    family = spec.family
    a = np.abs(t)
    if family is KernelFamily.GAUSSIAN:
        return t * (2.0 * ndtr(t) - 1.0) + 2.0 * _INV_SQRT_2PI * np.exp(-0.5 * t * t)
    if family is KernelFamily.LOGISTIC:
        return a + 2.0 * np.log1p(np.exp(-a))
    if family is KernelFamily.UNIFORM:
        return np.where(a <= 1.0, 0.5 * (t * t + 1.0), a)
    t2 = t * t
    return np.where(a <= 1.0, 0.75 * t2 - t2 * t2 / 8.0 + 0.375, a)
