"""Nested radial-angular quadrature for radially symmetric configurations.

For a domain and datum that are radial about a common center c, integrals of
the kernel (or its time derivatives) against psi reduce to an outer radius
integral and an inner angular integral.  With rho = |x - c|, r = |y - c| and
a = rho r / (2t), w = (rho - r)^2 / (4t):

    int_{S^{m-1}} p(x, c + r omega; t) r^{m-1} dS(omega)
        = (4 pi t)^{-m/2} |S^{m-2}| r^{m-1} e^{-w} J0(a)

where J0, J1, J2 are the angular moments provided by the backend.  The time
derivatives of the kernel are polynomials in cos(theta), so they use the
same three moments:

    order 1 factor: (A1 - a cos)/t          with A1 = (rho^2+r^2)/(4t) - m/2
    order 2 factor: ((D + a cos)^2 - h)/t^2 with h = (m+2)/2, D = h - w - a

In dimension one the angular measure degenerates to the two points
cos(theta) = +-1, giving J0 = 1 + E, J1 = 1 - E, J2 = 1 + E with E = e^{-2a}.
"""

from __future__ import annotations

import math

import numpy as np

from . import _backend
from .geometry import sphere_area
from .quadrature import integrate, integrate_vector

_THETA_TOL = 1e-13


def _surface_prefactor(m: int) -> float:
    # |S^(m-2)| for m >= 2; the m = 1 two-point measure carries weight 1
    if m == 1:
        return 1.0
    if m == 2:
        return 2.0
    return sphere_area(m - 1)


def _moment_combo(m: int, t: float, rho: np.ndarray, r: np.ndarray, order: int):
    """Angular part of the kernel (or derivative) integrand on a (rho, r) grid.

    Returns an array shaped like rho[:, None] * r[None, :].
    """
    P = rho[:, None]
    R = r[None, :]
    w = (P - R) ** 2 / (4.0 * t)
    a = P * R / (2.0 * t)
    shape = a.shape
    if m == 1:
        E = np.exp(-2.0 * a)
        j0 = 1.0 + E
        j1 = 1.0 - E
        j2 = 1.0 + E
    else:
        j0, j1, j2 = _backend.angular_moments(a.ravel(), m, _THETA_TOL)
        j0 = j0.reshape(shape)
        j1 = j1.reshape(shape)
        j2 = j2.reshape(shape)
    ew = np.exp(-w)
    if order == 0:
        combo = j0
    elif order == 1:
        A1 = (P * P + R * R) / (4.0 * t) - 0.5 * m
        combo = (A1 * j0 - a * j1) / t
    elif order == 2:
        h = 0.5 * (m + 2)
        D = h - w - a
        combo = ((D * D - h) * j0 + 2.0 * a * D * j1 + a * a * j2) / (t * t)
    else:
        raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")
    return ew * combo


def radial_profile(
    m: int,
    t: float,
    rho: np.ndarray,
    r_intervals,
    psi_r,
    order: int = 0,
    tol: float = 1e-12,
):
    """d^order/dt^order of int_Omega p(x, y; t) psi(y) dy at radii |x-c| = rho.

    `r_intervals` is the radial support of psi inside the domain and `psi_r`
    maps radii to datum values.  Returns (values, error_bounds, n_evals).
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    m = int(m)
    pref = (4.0 * math.pi * t) ** (-0.5 * m) * _surface_prefactor(m)
    spans = [(lo, hi) for lo, hi in r_intervals if hi > lo]
    if not spans:
        raise ValueError("empty radial support")
    per_tol = tol / (pref * len(spans))
    total = np.zeros(rho.size)
    err = np.zeros(rho.size)
    nev = 0

    for lo, hi in spans:

        def fvec(r_nodes):
            base = r_nodes ** (m - 1) * psi_r(r_nodes)
            return base[None, :] * _moment_combo(m, t, rho, r_nodes, order)

        v, e, n = integrate_vector(fvec, lo, hi, tol=per_tol)
        total += v
        err += e
        nev += n
    return pref * total, pref * err, nev


def radial_heat_content(
    m: int,
    t: float,
    x_intervals,
    r_intervals,
    psi_r,
    order: int = 0,
    tol: float = 1e-10,
):
    """d^order/dt^order of the heat content for a radial domain and datum.

    `x_intervals` is the radial decomposition of the domain (the outer
    integral over x), `r_intervals`/`psi_r` the radial support and profile of
    the datum.  Returns (value, error_bound, n_evals).
    """
    surf = sphere_area(m) if m >= 2 else 2.0
    spans = [(lo, hi) for lo, hi in x_intervals if hi > lo]
    # split the budget: half to the outer quadrature, half to inner profiles
    outer_tol = 0.5 * tol / (surf * len(spans))
    rho_mass = sum((hi**m - lo**m) / m for lo, hi in spans)
    inner_tol = 0.5 * tol / (surf * rho_mass)
    value = 0.0
    err = 0.0
    nev = 0
    inner_evals = [0]
    for lo, hi in spans:

        def g(rho_nodes):
            vals, _, n = radial_profile(
                m, t, rho_nodes, r_intervals, psi_r, order=order, tol=inner_tol
            )
            inner_evals[0] += n
            return rho_nodes ** (m - 1) * vals

        v, e, n = integrate(g, lo, hi, tol=outer_tol)
        value += surf * v
        err += surf * (e + inner_tol * (hi**m - lo**m) / m)
        nev += n
    return value, err, nev + inner_evals[0]
