"""Time derivatives of the heat content and uncertainty-aware curve scans.

dH computes d^k H/dt^k (k = 1, 2) by integrating the analytic kernel
derivatives; a Richardson-extrapolated central-difference route is available
for cross-checks.  scan() examines a sampled curve for monotonicity or
convexity: every comparison must clear z combined standard errors (with a
Bonferroni adjustment across the scan) before it counts as held or violated,
anything closer is inconclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from ._radial import radial_heat_content
from .errors import ConfigurationError
from .heat_content import (
    ConstantOne,
    Curve,
    Estimate,
    _auto_method,
    _intervals_1d,
    _mc_content_sums,
    _resolve_radial,
    interval_heat_content_derivative,
)
from .kernels import gaussian_kernel_sq
from . import rng as rngmod

SMALL_TIME_FLAG = 1e-3


def dH(
    domain,
    psi,
    t: float,
    order: int = 1,
    method: str = "auto",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-10,
) -> Estimate:
    """d^order H/dt^order via the analytic kernel time derivative.

    Estimates at t < 1e-3 are flagged low-confidence (the integrand
    concentrates near the diagonal); quadrature panels refine there, but
    prefer the finite-difference cross-check before trusting them blindly.
    """
    if t <= 0:
        raise ValueError(f"derivatives need t > 0, got {t}")
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    psi = psi if psi is not None else ConstantOne()
    psi.validate(domain)
    if method == "auto":
        method = _auto_method(domain, psi)
        if method not in ("radial_quad", "exact1d"):
            method = "mc"
    if method == "exact1d":
        ivs = _intervals_1d(domain)
        if ivs is None or len(ivs) != 1 or not isinstance(psi, ConstantOne):
            raise ConfigurationError(
                "exact1d derivatives cover a single 1-D interval with psi = 1"
            )
        a, b = ivs[0]
        return Estimate(
            interval_heat_content_derivative(b - a, t, order), 0.0, 1, "exact1d"
        )
    if method == "radial_quad":
        m = domain.space.m
        center, dom_iv, psi_r, r_iv = _resolve_radial(domain, psi)
        v, err, nev = radial_heat_content(
            m, t, dom_iv, r_iv, psi_r, order=order, tol=tol
        )
        return Estimate(v, 0.0, nev, "radial_quad")
    if method == "mc":
        return _mc_dH(domain, psi, t, order, samples, seed)
    raise ConfigurationError(f"unknown dH method {method!r}")


def _mc_dH(domain, psi, t, order, samples, seed):
    """Pair estimator |S| |Omega| mean[ d_t^k p(X, Y) psi(Y) ] with X ~ Omega, Y ~ S."""
    S = psi.sampling_domain(domain)
    W = S.measure() * domain.measure()
    m = domain.space.m
    chunks = rngmod.n_chunks(samples)
    k = rngmod.CHUNK_SIZE
    h = 0.5 * (m + 2)

    def work(i, g):
        X = domain.sample_batch(g, k)
        Y = S.sample_batch(g, k)
        sq = ((X - Y) ** 2).sum(axis=1)
        p = gaussian_kernel_sq(m, t, sq)
        q = sq / (4.0 * t)
        if order == 1:
            vals = p * (q - 0.5 * m) / t
        else:
            vals = p * ((h - q) ** 2 - h) / (t * t)
        vals = vals * psi.eval_batch(Y, domain)
        return vals.sum(), (vals * vals).sum()

    parts = rngmod.map_chunks(work, chunks, seed)
    n = chunks * k
    mean = sum(p[0] for p in parts) / n
    var = max(sum(p[1] for p in parts) - n * mean * mean, 0.0) / max(n - 1, 1)
    return Estimate(W * mean, W * math.sqrt(var / n), n, "mc")


def central_difference(f, t: float, order: int, h: float) -> float:
    if order == 1:
        return (f(t + h) - f(t - h)) / (2.0 * h)
    if order == 2:
        return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h)
    raise ValueError(f"order must be 1 or 2, got {order}")


def richardson_derivative(f, t: float, order: int = 1, h0: float | None = None) -> float:
    """Central differences at steps h0, h0/2, h0/4 with two Richardson levels.

    Default step h0 = t/8; the extrapolation removes the h^2 and h^4 error
    terms of the central stencils.
    """
    h0 = t / 8.0 if h0 is None else h0
    d = [central_difference(f, t, order, h0 / 2**j) for j in range(3)]
    r1 = [(4.0 * d[j + 1] - d[j]) / 3.0 for j in range(2)]
    return (16.0 * r1[1] - r1[0]) / 15.0


# ---------------------------------------------------------------------------
# scans


@dataclass
class ScanReport:
    """Outcome of a monotonicity/convexity scan over a sampled curve.

    Each witness records one comparison: the time points involved, the
    inequality margin (positive = holds in the scanned direction), its
    standard error, and whether the comparison held, was violated, or was
    too close to call at the z threshold.
    """

    property: str
    verdict: str  # pass | fail | inconclusive
    witnesses: list
    z: float
    atol: float

    def to_json_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witnesses": [
                {
                    "t": w["t"],
                    "margin": w["margin"],
                    "std_error": w["std_error"],
                    "status": w["status"],
                }
                for w in self.witnesses
            ],
        }

    def min_margin(self) -> float:
        return min(w["margin"] for w in self.witnesses)


_PROPERTIES = ("decreasing", "strictly_decreasing", "midpoint_convex")


def _pair_se(curve: Curve, coeffs: dict[int, float]) -> float:
    """Standard error of a linear combination of curve points.

    Uses the correlated per-chunk means when the curve was built with common
    random numbers; otherwise combines the points' standard errors as if
    independent (conservative for positively correlated errors).
    """
    cm = curve.chunk_means
    if cm is not None and cm.shape[0] >= 2:
        combo = sum(c * cm[:, i] for i, c in coeffs.items())
        return float(np.std(combo, ddof=1) / math.sqrt(cm.shape[0]))
    return math.sqrt(
        sum((c * curve.points[i].std_error) ** 2 for i, c in coeffs.items())
    )


def scan(curve: Curve, property: str, z: float = 4.0, atol: float = 0.0) -> ScanReport:
    """Check a sampled curve for a monotonicity/convexity property.

    decreasing checks all adjacent pairs; midpoint_convex checks the chord
    inequality on consecutive triples (the midpoint form when the grid is
    arithmetic).  A comparison holds or is violated only when its margin
    clears max(z_eff * std_error, atol), where z_eff Bonferroni-adjusts z
    across the scan; everything closer is inconclusive.
    """
    if property not in _PROPERTIES:
        raise ConfigurationError(f"unknown scan property {property!r}")
    n = len(curve)
    if n < 3:
        raise ConfigurationError("scans need at least 3 curve points")
    ts = curve.ts
    vals = curve.values()

    comparisons = []
    if property in ("decreasing", "strictly_decreasing"):
        for i in range(n - 1):
            margin = vals[i] - vals[i + 1]
            se = _pair_se(curve, {i: 1.0, i + 1: -1.0})
            comparisons.append(((ts[i], ts[i + 1]), margin, se))
    else:
        if n < 3:
            raise ConfigurationError("convexity scans need at least 3 points")
        for i in range(n - 2):
            t1, t2, t3 = ts[i], ts[i + 1], ts[i + 2]
            lam = (t3 - t2) / (t3 - t1)
            margin = lam * vals[i] + (1.0 - lam) * vals[i + 2] - vals[i + 1]
            se = _pair_se(curve, {i: lam, i + 1: -1.0, i + 2: 1.0 - lam})
            comparisons.append(((t1, t2, t3), margin, se))

    z_eff = z
    if any(c[2] > 0 for c in comparisons):
        # Bonferroni: keep the scan-wide false-positive rate at the z level
        z_eff = float(norm.isf(norm.sf(z) / len(comparisons)))

    witnesses = []
    any_violation = False
    all_hold = True
    for where, margin, se in comparisons:
        thr = max(z_eff * se, atol)
        if margin > thr:
            status = "holds"
        elif margin < -thr:
            status = "violated"
            any_violation = True
            all_hold = False
        else:
            status = "unclear"
            all_hold = False
        witnesses.append(
            {
                "t": list(where),
                "margin": float(margin),
                "std_error": float(se),
                "status": status,
            }
        )
    verdict = "fail" if any_violation else ("pass" if all_hold else "inconclusive")
    return ScanReport(property, verdict, witnesses, z=z_eff, atol=atol)
