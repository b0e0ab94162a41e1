"""Closed-form heat kernels and their analytic time derivatives.

Covers the free Euclidean Gaussian kernel, the reflection (Neumann)
half-space kernel, and the wrapped-Gaussian circle kernel.  All functions are
pure; batch variants used by the estimators live in the backend modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import GeometryError
from .geometry import AmbientSpace


@dataclass(frozen=True)
class KernelEval:
    """One kernel evaluation point; b = |x-y|^2 / 4 is cached at construction."""

    space: AmbientSpace
    x: tuple
    y: tuple
    t: float
    b: float

    @staticmethod
    def at(space: AmbientSpace, x, y, t: float) -> "KernelEval":
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if space.kind == "euclidean":
            if x.shape != (space.m,) or y.shape != (space.m,):
                raise GeometryError("kernel points must match the space dimension")
            b = 0.25 * float(((x - y) ** 2).sum())
        else:
            if x.shape != (1,) or y.shape != (1,):
                raise GeometryError("circle points are single arclength coordinates")
            d = abs(float(x[0]) - float(y[0])) % space.L
            d = min(d, space.L - d)
            b = 0.25 * d * d
        return KernelEval(space, tuple(x), tuple(y), float(t), b)


def _require_positive_time(e: KernelEval):
    if not e.t > 0:
        raise ValueError(f"kernel time must be positive, got t={e.t}")


def log_heat_kernel(e: KernelEval) -> float:
    """log of the free Gaussian kernel; safe for exponents past underflow."""
    _require_positive_time(e)
    m = e.space.m
    return -0.5 * m * math.log(4.0 * math.pi * e.t) - e.b / e.t


def heat_kernel(e: KernelEval) -> float:
    """Free kernel (4 pi t)^(-m/2) exp(-|x-y|^2/(4t)) on R^m.

    Computed through the log form; underflows to 0 for extreme arguments,
    so bound checks at large separations should compare log_heat_kernel.
    """
    if e.space.kind != "euclidean":
        raise GeometryError("heat_kernel is the Euclidean kernel; use circle_kernel")
    return math.exp(log_heat_kernel(e))


def heat_kernel_time_derivative(e: KernelEval, order: int) -> float:
    """Analytic d^order/dt^order of the free kernel, order 1 or 2.

    order 1: p * (b/t - m/2) / t
    order 2: p * ((m+2)/2 - b/t)^2 - (m+2)/2) / t^2
    """
    if e.space.kind != "euclidean":
        raise GeometryError("time derivatives implemented for the Euclidean kernel")
    _require_positive_time(e)
    m = e.space.m
    p = heat_kernel(e)
    q = e.b / e.t
    if order == 1:
        return p * (q - 0.5 * m) / e.t
    if order == 2:
        h = 0.5 * (m + 2)
        return p * ((h - q) ** 2 - h) / (e.t * e.t)
    raise ValueError(f"derivative order must be 1 or 2, got {order}")


def neumann_halfspace_kernel(e: KernelEval) -> float:
    """Reflection kernel for the half-space {x_1 > 0} with zero normal flux.

    The image term uses the reflection of y across the hyperplane x_1 = 0,
    i.e. |x - (-y_1, y_2, ...)|, matching the usage where both points have
    positive first coordinate.
    """
    if e.space.kind != "euclidean":
        raise GeometryError("the half-space kernel lives in Euclidean space")
    _require_positive_time(e)
    if not (e.x[0] > 0 and e.y[0] > 0):
        raise GeometryError(
            f"half-space kernel needs positive first coordinates, got {e.x[0]}, {e.y[0]}"
        )
    x = np.asarray(e.x)
    y = np.asarray(e.y)
    yr = y.copy()
    yr[0] = -yr[0]
    m = e.space.m
    pref = (4.0 * math.pi * e.t) ** (-0.5 * m)
    direct = math.exp(-float(((x - y) ** 2).sum()) / (4.0 * e.t))
    image = math.exp(-float(((x - yr) ** 2).sum()) / (4.0 * e.t))
    return pref * (direct + image)


def circle_kernel(e: KernelEval) -> float:
    """Wrapped-Gaussian kernel on the circle of circumference L."""
    if e.space.kind != "circle":
        raise GeometryError("circle_kernel needs a circle ambient space")
    _require_positive_time(e)
    d = float(e.x[0]) - float(e.y[0])
    return float(_backend.wrapped_gaussian(np.array([d]), e.space.L, e.t)[0])


def gaussian_kernel_sq(m: int, t: float, sq_dist: np.ndarray) -> np.ndarray:
    """Batch free kernel from squared distances; hot path for the MC estimators."""
    if t <= 0:
        raise ValueError(f"kernel time must be positive, got t={t}")
    return (4.0 * math.pi * t) ** (-0.5 * m) * np.exp(-sq_dist / (4.0 * t))
