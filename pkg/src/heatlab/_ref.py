"""Pure-numpy implementations of the hot kernels.

Used when the compiled extension is unavailable (or forced via
HEATLAB_BACKEND=python).  Same contracts as heatlab._ext:

* angular_moments(a, m, tol): the three sphere-convolution moments
      J_k(a) = int_0^pi cos^k(theta) exp(a (cos(theta) - 1)) sin^(m-2)(theta) dtheta
  for k = 0, 1, 2, evaluated for every entry of `a` by adaptive
  Gauss-Kronrod panels shared across the batch.
* wrapped_gaussian(d, L, t): circle heat kernel values
      sum_n (4 pi t)^(-1/2) exp(-(d + n L)^2 / (4 t)).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureError
from .quadrature import GK_NODES, GK_WEIGHTS_G, GK_WEIGHTS_K

BACKEND = "python"

_MAX_PANELS = 8192
_BLOCK = 2048


def _moments_block(a: np.ndarray, p: int, tol: float):
    amax = float(a.max(initial=0.0))
    # Geometric pre-split toward theta=0 so the exp(-a(1-cos)) peak is
    # always sampled even on the first pass.
    w = 4.0 * math.sqrt(2.0 / max(amax, 1.0))
    edges = [0.0]
    e = w
    while e < math.pi:
        edges.append(e)
        e *= 2.0
    edges.append(math.pi)
    edges = np.array(edges)

    for _ in range(64):
        xm = 0.5 * (edges[:-1] + edges[1:])
        xr = 0.5 * (edges[1:] - edges[:-1])
        theta = xm[:, None] + xr[:, None] * GK_NODES[None, :]
        c = np.cos(theta)
        s = np.sin(theta)
        base = s**p if p > 0 else np.ones_like(s)
        # a*(cos t - 1) written as -2a sin^2(t/2): relative accuracy survives
        # large a, keeping the Kronrod/Gauss error estimate above noise
        arg = -2.0 * np.sin(0.5 * theta) ** 2
        ex = np.exp(a[:, None, None] * arg[None, :, :]) * base[None, :, :]
        k = np.empty((3, a.size, xm.size))
        g = np.empty_like(k)
        mom = ex
        for j in range(3):
            k[j] = (mom @ GK_WEIGHTS_K) * xr[None, :]
            g[j] = (mom @ GK_WEIGHTS_G) * xr[None, :]
            if j < 2:
                mom = mom * c[None, :, :]
        err = np.abs(k - g).sum(axis=0)
        budget = tol * (2.0 * xr) / math.pi
        floor = 32.0 * np.finfo(float).eps * np.abs(k).sum(axis=0)
        bad = (err > np.maximum(budget[None, :], floor)).any(axis=0)
        if not bad.any():
            tot = k.sum(axis=2)
            return tot[0], tot[1], tot[2]
        if edges.size + int(bad.sum()) > _MAX_PANELS:
            raise QuadratureError(
                f"angular moments not converged with {edges.size - 1} panels"
            )
        mids = xm[bad]
        edges = np.sort(np.concatenate([edges, mids]))
    raise QuadratureError("angular moments refinement did not terminate")


def angular_moments(a, m: int, tol: float = 1e-13):
    """Moments J0, J1, J2 for every entry of `a`; requires m >= 2."""
    if m < 2:
        raise ValueError("angular moments are defined for dimension m >= 2")
    a = np.ascontiguousarray(np.atleast_1d(a), dtype=float)
    p = m - 2
    j0 = np.empty(a.size)
    j1 = np.empty(a.size)
    j2 = np.empty(a.size)
    for lo in range(0, a.size, _BLOCK):
        sl = slice(lo, min(lo + _BLOCK, a.size))
        j0[sl], j1[sl], j2[sl] = _moments_block(a[sl], p, tol)
    return j0, j1, j2


def wrapped_gaussian(d, L: float, t: float, cutoff: float = 1e-17):
    """Wrapped-Gaussian circle kernel at signed arc separations `d`."""
    if t <= 0.0:
        raise ValueError("wrapped_gaussian requires t > 0")
    d = np.ascontiguousarray(np.atleast_1d(d), dtype=float)
    r = np.mod(d + 0.5 * L, L) - 0.5 * L
    inv4t = 0.25 / t
    acc = np.exp(-r * r * inv4t)
    n = 1
    while n < 100000:
        term = np.exp(-((r + n * L) ** 2) * inv4t) + np.exp(
            -((r - n * L) ** 2) * inv4t
        )
        acc += term
        if float((term / acc).max()) < cutoff:
            break
        n += 1
    return acc / math.sqrt(4.0 * math.pi * t)
