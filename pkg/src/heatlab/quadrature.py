"""Adaptive Gauss-Kronrod panel quadrature.

All deterministic estimators in the package integrate through this module.
Each panel is evaluated with the classic 15-point Kronrod rule and its
embedded 7-point Gauss rule; the difference of the two drives bisection of
the worst panel until the summed error estimate drops below the tolerance.
Integrands receive a numpy array of nodes and must return an array of values.
"""

from __future__ import annotations

import numpy as np

from .errors import QuadratureError

# 15-point Kronrod nodes and weights with the embedded 7-point Gauss weights
# (zero on Kronrod-only nodes).  Values are the QUADPACK constants.
GK_NODES = np.array(
    [
        -0.991455371120812639206854697526329,
        -0.949107912342758524526189684047851,
        -0.864864423359769072789712788640926,
        -0.741531185599394439863864773280788,
        -0.586087235467691130294144838258730,
        -0.405845151377397166906606412076961,
        -0.207784955007898467600689403773245,
        0.0,
        0.207784955007898467600689403773245,
        0.405845151377397166906606412076961,
        0.586087235467691130294144838258730,
        0.741531185599394439863864773280788,
        0.864864423359769072789712788640926,
        0.949107912342758524526189684047851,
        0.991455371120812639206854697526329,
    ]
)

GK_WEIGHTS_K = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
        0.204432940075298892414161999234649,
        0.190350578064785409913256402421014,
        0.169004726639267902826583426598550,
        0.140653259715525918745189590510238,
        0.104790010322250183839876322541518,
        0.063092092629978553290700663189204,
        0.022935322010529224963732008058970,
    ]
)

GK_WEIGHTS_G = np.array(
    [
        0.0,
        0.129484966168869693270611432679082,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.417959183673469387755102040816327,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.129484966168869693270611432679082,
        0.0,
    ]
)


def panel_values(f, lo: float, hi: float):
    """Evaluate one Kronrod panel; returns (k15, g7) integral estimates."""
    xm = 0.5 * (lo + hi)
    xr = 0.5 * (hi - lo)
    fx = np.asarray(f(xm + xr * GK_NODES), dtype=float)
    k15 = xr * float(fx @ GK_WEIGHTS_K)
    g7 = xr * float(fx @ GK_WEIGHTS_G)
    return k15, g7


def integrate(f, lo: float, hi: float, tol: float = 1e-10, limit: int = 4000):
    """Adaptive integral of a vectorized integrand over [lo, hi].

    Returns (value, error_estimate, n_evals).  Raises QuadratureError if the
    panel budget is exhausted before the absolute tolerance is met.
    """
    if hi <= lo:
        return 0.0, 0.0, 0
    k, g = panel_values(f, lo, hi)
    panels = [(lo, hi, k, abs(k - g))]
    nev = 15
    while True:
        total = sum(p[2] for p in panels)
        err = sum(p[3] for p in panels)
        if err <= tol:
            return total, err, nev
        if len(panels) >= limit:
            raise QuadratureError(
                f"quadrature stalled at error {err:.3e} > tol {tol:.3e} "
                f"with {len(panels)} panels on [{lo}, {hi}]"
            )
        worst = max(range(len(panels)), key=lambda i: panels[i][3])
        plo, phi, _, _ = panels.pop(worst)
        mid = 0.5 * (plo + phi)
        for a, b in ((plo, mid), (mid, phi)):
            k, g = panel_values(f, a, b)
            panels.append((a, b, k, abs(k - g)))
            nev += 15


def integrate_vector(f, lo: float, hi: float, tol: float = 1e-10, limit: int = 4000):
    """Adaptive integral of a vector-valued integrand over [lo, hi].

    `f` maps an array of k nodes to an (n, k) array; all n component
    integrals are computed on shared panels, refining until every row's
    summed error estimate is below tol.  Returns (values (n,), errors (n,),
    n_evals).
    """
    if hi <= lo:
        raise ValueError(f"empty integration range [{lo}, {hi}]")

    def panel(a, b):
        xm = 0.5 * (a + b)
        xr = 0.5 * (b - a)
        fx = np.asarray(f(xm + xr * GK_NODES), dtype=float)
        k15 = xr * (fx @ GK_WEIGHTS_K)
        g7 = xr * (fx @ GK_WEIGHTS_G)
        return k15, np.abs(k15 - g7)

    k, e = panel(lo, hi)
    panels = [(lo, hi, k, e)]
    nev = 15
    while True:
        err = np.sum([p[3] for p in panels], axis=0)
        if np.all(err <= tol):
            return np.sum([p[2] for p in panels], axis=0), err, nev
        if len(panels) >= limit:
            raise QuadratureError(
                f"vector quadrature stalled at error {float(err.max()):.3e} > "
                f"tol {tol:.3e} with {len(panels)} panels on [{lo}, {hi}]"
            )
        worst = max(range(len(panels)), key=lambda i: float(panels[i][3].max()))
        plo, phi, _, _ = panels.pop(worst)
        mid = 0.5 * (plo + phi)
        for a, b in ((plo, mid), (mid, phi)):
            k, e = panel(a, b)
            panels.append((a, b, k, e))
            nev += 15


def integrate_intervals(f, intervals, tol: float = 1e-10, limit: int = 4000):
    """Integral over a union of disjoint intervals, tolerance shared evenly."""
    spans = [(a, b) for a, b in intervals if b > a]
    if not spans:
        return 0.0, 0.0, 0
    per = tol / len(spans)
    value = err = 0.0
    nev = 0
    for a, b in spans:
        v, e, n = integrate(f, a, b, tol=per, limit=limit)
        value += v
        err += e
        nev += n
    return value, err, nev
