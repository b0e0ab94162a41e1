"""Temperature and heat content of explicit domains.

The temperature is u(x;t) = int_Omega p(x,y;t) psi(y) dy and the heat content
is H(t) = int_Omega u(x;t) dx; the heat loss is F(t) = H(0) - H(t).  Both are
computed by several independent routes, tagged on the returned Estimate:

====================  =======================================================
exact1d               closed erf/Gaussian forms, 1-D intervals, indicator data
box_exact             per-axis product of interval formulas, boxes with psi=1
radial_quad           nested radial-angular quadrature, radial domain + datum
eigensum              spectral sum for circle arcs
circle_quad           wrapped-kernel quadrature on the circle (fallback/oracle)
mc                    Monte Carlo with Gaussian jumps, common random numbers
mc_semigroup          Monte Carlo of the identity H(a+b) = int u(.;a) u(.;b)
====================  =======================================================

Monte Carlo estimates are deterministic functions of (inputs, seed): chunked
counter-based substreams make them independent of the worker count, and one
sample set is reused across a whole t-grid so curve differences are
low-variance for monotonicity checks.  t = 0 is always handled symbolically
(the kernel is singular there): H(0) = int_Omega psi exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf, erfc

from . import rng as rngmod
from ._backend import wrapped_gaussian
from ._radial import radial_heat_content, radial_profile
from .errors import ConfigurationError, GeometryError
from .geometry import (
    Annulus,
    Arc,
    Ball,
    Box,
    DisjointUnion,
    Domain,
    unit_ball_volume,
)
from .kernels import gaussian_kernel_sq
from .quadrature import integrate, integrate_intervals

DETERMINISTIC_METHODS = ("exact1d", "box_exact", "radial_quad", "eigensum", "circle_quad")
MC_METHODS = ("mc", "mc_semigroup")


# ---------------------------------------------------------------------------
# initial data


class InitialDatum:
    """Initial temperature profile psi on the domain."""

    def validate(self, domain: Domain) -> None:
        raise NotImplementedError

    def eval_batch(self, Y: np.ndarray, domain: Domain) -> np.ndarray:
        raise NotImplementedError

    def integral(self, domain: Domain) -> float:
        """Exact value of int_Omega psi, i.e. H(0)."""
        raise NotImplementedError

    def sup(self, domain: Domain) -> float:
        raise NotImplementedError

    def sampling_domain(self, domain: Domain) -> Domain:
        """Support of psi; Monte Carlo draws are restricted to it."""
        return domain

    def label(self) -> str:
        raise NotImplementedError


class ConstantOne(InitialDatum):
    """psi identically 1 on the domain."""

    def validate(self, domain):
        return None

    def eval_batch(self, Y, domain):
        return np.ones(Y.shape[0])

    def integral(self, domain):
        return domain.measure()

    def sup(self, domain):
        return 1.0

    def label(self):
        return "one"

    def __eq__(self, other):
        return isinstance(other, ConstantOne)


class IndicatorOf(InitialDatum):
    """psi = indicator of a sub-domain contained in the domain."""

    def __init__(self, sub: Domain):
        self.sub = sub

    def validate(self, domain):
        _check_subset(self.sub, domain)

    def eval_batch(self, Y, domain):
        return self.sub.contains_batch(Y).astype(float)

    def integral(self, domain):
        return self.sub.measure()

    def sup(self, domain):
        return 1.0

    def sampling_domain(self, domain):
        return self.sub

    def label(self):
        return f"indicator({next(iter(self.sub.to_dict()))})"


class RadialPower(InitialDatum):
    """psi(y) = |1 - |y - c||^alpha with alpha > 1, on a unit-radius ball."""

    def __init__(self, alpha: float, ball: Ball | None = None):
        if not alpha > 1:
            raise ConfigurationError(f"radial power needs alpha > 1, got {alpha}")
        self.alpha = float(alpha)
        if ball is not None:
            self._check_ball(ball)

    @staticmethod
    def _check_ball(ball):
        if not isinstance(ball, Ball) or abs(ball.r - 1.0) > 1e-12:
            raise ConfigurationError(
                "the radial power datum is defined on unit-radius balls"
            )

    def validate(self, domain):
        self._check_ball(domain)

    def eval_batch(self, Y, domain):
        rho = np.sqrt(((Y - domain.center[None, :]) ** 2).sum(axis=1))
        return np.abs(1.0 - rho) ** self.alpha

    def integral(self, domain):
        # m omega_m * Beta(m, alpha+1) from the radial integral of (1-r)^alpha
        m = domain.space.m
        lg = (
            math.lgamma(m)
            + math.lgamma(self.alpha + 1.0)
            - math.lgamma(m + self.alpha + 1.0)
        )
        return m * unit_ball_volume(m) * math.exp(lg)

    def sup(self, domain):
        return 1.0

    def label(self):
        return f"radial_power({self.alpha:g})"


def _check_subset(sub: Domain, dom: Domain):
    if sub is dom:
        return
    if isinstance(dom, DisjointUnion):
        if any(sub is p for p in dom.parts):
            return
        raise GeometryError(
            "indicator datum on a union must select one of the union's parts"
        )
    if isinstance(sub, Ball) and isinstance(dom, Ball):
        gap = math.sqrt(((sub.center - dom.center) ** 2).sum())
        if gap + sub.r <= dom.r:
            return
        raise GeometryError("indicator ball is not contained in the domain ball")
    if isinstance(sub, Box) and isinstance(dom, Box):
        if np.all(sub.lo >= dom.lo) and np.all(sub.hi <= dom.hi):
            return
        raise GeometryError("indicator box is not contained in the domain box")
    raise GeometryError(
        f"containment of {type(sub).__name__} in {type(dom).__name__} "
        "is not validated; refusing the datum"
    )


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Estimate:
    """A numeric estimate; std_error is 0 exactly for deterministic methods."""

    value: float
    std_error: float
    n: int
    method: str


@dataclass
class CircleSpectrum:
    """Arc coefficients of the circle eigenbasis, mu_1 = 0 first."""

    L: float
    modes: tuple  # (eigenvalue, coefficient = int_arc u_j)

    @staticmethod
    def for_arc(arc: Arc, K: int) -> "CircleSpectrum":
        L = arc.space.L
        ell = arc.length
        s0 = arc.start
        modes = [(0.0, ell / math.sqrt(L))]
        amp = math.sqrt(2.0 / L)
        for k in range(1, K + 1):
            w = 2.0 * math.pi * k / L
            mu = w * w
            modes.append((mu, amp / w * (math.sin(w * (s0 + ell)) - math.sin(w * s0))))
            modes.append((mu, amp / w * (math.cos(w * s0) - math.cos(w * (s0 + ell)))))
        return CircleSpectrum(L, tuple(modes))

    def heat_content(self, t: float) -> float:
        return sum(c * c * math.exp(-mu * t) for mu, c in self.modes)


@dataclass
class Curve:
    """Sampled t -> Estimate curve; chunk_means supports correlated scans."""

    ts: tuple
    points: tuple
    label: str = ""
    seed: int | None = None
    chunk_means: np.ndarray | None = field(default=None, repr=False)

    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.points])

    def std_errors(self) -> np.ndarray:
        return np.array([p.std_error for p in self.points])

    def __len__(self):
        return len(self.ts)


def _curve_label(domain: Domain, psi: InitialDatum) -> str:
    shape = next(iter(domain.to_dict()))
    if domain.space.kind == "circle":
        return f"{shape}|{psi.label()}|L={domain.space.L:g}"
    return f"{shape}|{psi.label()}|m={domain.space.m}"


# ---------------------------------------------------------------------------
# radial decompositions


def _intervals_1d(domain: Domain):
    """Disjoint 1-D intervals for m=1 Euclidean domains, else None."""
    if domain.space.kind != "euclidean" or domain.space.m != 1:
        return None
    if isinstance(domain, Ball):
        c = float(domain.center[0])
        return [(c - domain.r, c + domain.r)]
    if isinstance(domain, Box):
        return [(float(domain.lo[0]), float(domain.hi[0]))]
    if isinstance(domain, Annulus):
        c = float(domain.center[0])
        return [(c - domain.r2, c - domain.r1), (c + domain.r1, c + domain.r2)]
    if isinstance(domain, DisjointUnion):
        out = []
        for p in domain.parts:
            sub = _intervals_1d(p)
            if sub is None:
                return None
            out.extend(sub)
        return sorted(out)
    return None


def _radial_decomposition(domain: Domain):
    """(center, radius intervals) for domains radial about one point, else None."""
    if domain.space.kind != "euclidean":
        return None
    if isinstance(domain, Ball):
        return domain.center, [(0.0, domain.r)]
    if isinstance(domain, Annulus):
        return domain.center, [(domain.r1, domain.r2)]
    if isinstance(domain, Box) and domain.space.m == 1:
        c = 0.5 * (domain.lo + domain.hi)
        return c, [(0.0, 0.5 * float(domain.hi[0] - domain.lo[0]))]
    if isinstance(domain, DisjointUnion):
        parts = [_radial_decomposition(p) for p in domain.parts]
        if any(p is None for p in parts):
            return None
        center = parts[0][0]
        if any(not np.allclose(center, p[0]) for p in parts[1:]):
            return None
        intervals = sorted(iv for p in parts for iv in p[1])
        return center, intervals
    return None


def _radial_datum(psi: InitialDatum, domain: Domain, center, dom_intervals):
    """(profile psi(r), radial support of psi) about `center`, else None."""
    if isinstance(psi, ConstantOne):
        return (lambda r: np.ones_like(r)), dom_intervals
    if isinstance(psi, IndicatorOf):
        sub = _radial_decomposition(psi.sub)
        if sub is None or not np.allclose(sub[0], center):
            return None
        return (lambda r: np.ones_like(r)), sub[1]
    if isinstance(psi, RadialPower):
        if not isinstance(domain, Ball) or not np.allclose(domain.center, center):
            return None
        alpha = psi.alpha
        return (lambda r: np.abs(1.0 - r) ** alpha), [(0.0, 1.0)]
    return None


# ---------------------------------------------------------------------------
# closed 1-D forms


def _q_antiderivative(z: np.ndarray, t: float) -> np.ndarray:
    """Q with Q'' = Gaussian kernel G_t; rectangle sums of Q give int int G."""
    s = 2.0 * math.sqrt(t)
    return 0.5 * z * erf(z / s) + math.sqrt(t / math.pi) * np.exp(-(z * z) / (4.0 * t))


def _interval_pair_content(A, B, C, D, t):
    q = _q_antiderivative
    return float(q(B - C, t) - q(B - D, t) - q(A - C, t) + q(A - D, t))


def _exact1d_content(x_intervals, y_intervals, t):
    total = 0.0
    for A, B in x_intervals:
        for C, D in y_intervals:
            total += _interval_pair_content(A, B, C, D, t)
    return total


def _interval_temperature(x, intervals, t):
    s = 2.0 * math.sqrt(t)
    return float(
        sum(0.5 * (erf((b - x) / s) - erf((a - x) / s)) for a, b in intervals)
    )


def interval_heat_content(length: float, t: float) -> float:
    """Closed form for one interval with psi = 1:
    H(t) = L erf(L/(2 sqrt t)) - 2 sqrt(t/pi) (1 - exp(-L^2/(4t)))."""
    if t == 0.0:
        return length
    return length * math.erf(length / (2.0 * math.sqrt(t))) - 2.0 * math.sqrt(
        t / math.pi
    ) * (1.0 - math.exp(-(length * length) / (4.0 * t)))


def interval_heat_content_derivative(length: float, t: float, order: int = 1) -> float:
    """Symbolic t-derivatives of the closed interval form."""
    q = math.exp(-(length * length) / (4.0 * t))
    if order == 1:
        return -(1.0 - q) / math.sqrt(math.pi * t)
    if order == 2:
        return q * length * length / (4.0 * t * t * math.sqrt(math.pi * t)) + (
            1.0 - q
        ) / (2.0 * math.sqrt(math.pi) * t**1.5)
    raise ValueError(f"order must be 1 or 2, got {order}")


# ---------------------------------------------------------------------------
# circle forms


_EIGENSUM_CUT = math.log(1e16)
_EIGENSUM_MAX_K = 500_000


def circle_mode_count(L: float, t: float) -> int:
    """Smallest K with exp(-mu_K t) < 1e-16."""
    return int(math.ceil((L / (2.0 * math.pi)) * math.sqrt(_EIGENSUM_CUT / t))) + 1


def heat_content_circle(arc: Arc, t: float, K: int | None = None) -> Estimate:
    """Eigensum heat content of a circle arc.

    H(t) = ell^2/L + sum_k exp(-(2 pi k/L)^2 t) (2L/(pi k)^2 ... ) with the
    arc coefficients in closed form; falls back to wrapped-kernel quadrature
    when the requested t would need more than the mode cap.
    """
    if not isinstance(arc, Arc):
        raise ConfigurationError("heat_content_circle needs an Arc domain")
    L = arc.space.L
    ell = arc.length
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if t == 0.0:
        return Estimate(ell, 0.0, 1, "eigensum")
    if K is None:
        K = circle_mode_count(L, t)
    if K > _EIGENSUM_MAX_K:
        return _circle_quad_content(arc, t)
    ks = np.arange(1, K + 1, dtype=float)
    mu = (2.0 * math.pi * ks / L) ** 2
    coef2 = (2.0 * L / (math.pi * math.pi * ks * ks)) * np.sin(
        math.pi * ks * ell / L
    ) ** 2
    value = ell * ell / L + float(np.exp(-mu * t) @ coef2)
    return Estimate(value, 0.0, int(K), "eigensum")


def _circle_quad_content(arc: Arc, t: float, tol: float = 1e-12) -> Estimate:
    L = arc.space.L
    ell = arc.length

    def f(z):
        return (ell - z) * wrapped_gaussian(z, L, t)

    # H = int_{-ell}^{ell} (ell - |z|) p_L(z; t) dz, folded to [0, ell]
    v, err, nev = integrate(f, 0.0, ell, tol=tol)
    return Estimate(2.0 * v, 0.0, nev, "circle_quad")


def _circle_temperature(arc: Arc, x, t: float, tol: float = 1e-12) -> Estimate:
    L = arc.space.L
    x0 = float(np.atleast_1d(x)[0])

    def f(y):
        return wrapped_gaussian(x0 - y, L, t)

    v, err, nev = integrate(f, arc.start, arc.start + arc.length, tol=tol)
    return Estimate(v, 0.0, nev, "circle_quad")


# ---------------------------------------------------------------------------
# Monte Carlo engines


def _mc_content_sums(domain, psi, ts, samples, seed, exterior):
    """Common-random-number jump estimator over a t-grid.

    For each chunk draws Y ~ psi's support S and Z ~ N(0, I); the estimate at
    t is |S| * mean(psi(Y) 1[Y + sqrt(2t) Z in/notin Omega]).
    """
    S = psi.sampling_domain(domain)
    W = S.measure()
    chunks = rngmod.n_chunks(samples)
    k = rngmod.CHUNK_SIZE
    ts = [float(t) for t in ts]
    if any(t <= 0 for t in ts):
        raise ValueError("Monte Carlo times must be positive; t=0 is symbolic")

    def work(i, g):
        Y = S.sample_batch(g, k)
        Z = g.standard_normal(Y.shape)
        psiY = psi.eval_batch(Y, domain)
        sums = np.empty(len(ts))
        sqs = np.empty(len(ts))
        for j, t in enumerate(ts):
            X = Y + math.sqrt(2.0 * t) * Z
            inside = domain.contains_batch(X)
            vals = psiY * (~inside if exterior else inside)
            sums[j] = vals.sum()
            sqs[j] = (vals * vals).sum()
        return sums, sqs

    parts = rngmod.map_chunks(work, chunks, seed)
    sums = np.stack([p[0] for p in parts])
    sqs = np.stack([p[1] for p in parts])
    n = chunks * k
    mean = sums.sum(axis=0) / n
    var = np.maximum(sqs.sum(axis=0) - n * mean * mean, 0.0) / max(n - 1, 1)
    se = W * np.sqrt(var / n)
    return W * mean, se, n, W * sums / k


def _mc_temperature(domain, psi, x, t, samples, seed):
    S = psi.sampling_domain(domain)
    W = S.measure()
    m = domain.space.m
    chunks = rngmod.n_chunks(samples)
    k = rngmod.CHUNK_SIZE
    x = np.asarray(x, dtype=float)

    def work(i, g):
        Y = S.sample_batch(g, k)
        sq = ((Y - x[None, :]) ** 2).sum(axis=1)
        vals = gaussian_kernel_sq(m, t, sq) * psi.eval_batch(Y, domain)
        return vals.sum(), (vals * vals).sum()

    parts = rngmod.map_chunks(work, chunks, seed)
    n = chunks * k
    total = sum(p[0] for p in parts)
    sq_total = sum(p[1] for p in parts)
    mean = total / n
    var = max(sq_total - n * mean * mean, 0.0) / max(n - 1, 1)
    return Estimate(W * mean, W * math.sqrt(var / n), n, "mc")


def _mc_semigroup_sums(domain, psi, ts, samples, seed, split=None):
    """Estimator of H(a+b) = int_M u(z;a) u(z;b) dz (the semigroup identity).

    u(z;s)^2 is estimated without bias as the product of two independent
    one-sample estimates |S| p(z, Y_i; s) psi(Y_i).  The integral over M is
    truncated to a proposal ball of radius diam(Omega) + 8 sqrt(2t) around
    the domain's bounding-box center; the discarded mass involves kernel
    factors exp(-32 t / t) and is far below the Monte Carlo noise.
    """
    if domain.space.kind != "euclidean":
        raise ConfigurationError("mc_semigroup requires a Euclidean domain")
    S = psi.sampling_domain(domain)
    W = S.measure()
    m = domain.space.m
    lo, hi = domain.bounding_box()
    c0 = 0.5 * (lo + hi)
    diam = domain.diameter()
    chunks = rngmod.n_chunks(samples)
    k = rngmod.CHUNK_SIZE
    ts = [float(t) for t in ts]
    if any(t <= 0 for t in ts):
        raise ValueError("Monte Carlo times must be positive; t=0 is symbolic")
    splits = [split(t) if split else (0.5 * t, 0.5 * t) for t in ts]
    vol_m = unit_ball_volume(m)
    unit = Ball(np.zeros(m), 1.0)

    def work(i, g):
        U = unit.sample_batch(g, k)
        Y1 = S.sample_batch(g, k)
        Y2 = S.sample_batch(g, k)
        p1 = psi.eval_batch(Y1, domain)
        p2 = psi.eval_batch(Y2, domain)
        sums = np.empty(len(ts))
        sqs = np.empty(len(ts))
        for j, t in enumerate(ts):
            ta, tb = splits[j]
            R = diam + 8.0 * math.sqrt(2.0 * t)
            Z = c0[None, :] + R * U
            u1 = W * gaussian_kernel_sq(m, ta, ((Z - Y1) ** 2).sum(axis=1)) * p1
            u2 = W * gaussian_kernel_sq(m, tb, ((Z - Y2) ** 2).sum(axis=1)) * p2
            vals = (vol_m * R**m) * u1 * u2
            sums[j] = vals.sum()
            sqs[j] = (vals * vals).sum()
        return sums, sqs

    parts = rngmod.map_chunks(work, chunks, seed)
    sums = np.stack([p[0] for p in parts])
    sqs = np.stack([p[1] for p in parts])
    n = chunks * k
    mean = sums.sum(axis=0) / n
    var = np.maximum(sqs.sum(axis=0) - n * mean * mean, 0.0) / max(n - 1, 1)
    return mean, np.sqrt(var / n), n, sums / k


# ---------------------------------------------------------------------------
# method resolution


def _auto_method(domain: Domain, psi: InitialDatum) -> str:
    if isinstance(domain, Arc):
        return "eigensum"
    if _intervals_1d(domain) is not None and isinstance(
        psi, (ConstantOne, IndicatorOf)
    ):
        return "exact1d"
    dec = _radial_decomposition(domain)
    if dec is not None and _radial_datum(psi, domain, dec[0], dec[1]) is not None:
        return "radial_quad"
    if isinstance(domain, Box) and isinstance(psi, ConstantOne):
        return "box_exact"
    return "mc"


def _resolve_radial(domain, psi):
    dec = _radial_decomposition(domain)
    if dec is None:
        raise ConfigurationError(
            f"radial_quad needs a domain radial about one center, got "
            f"{type(domain).__name__}"
        )
    center, dom_intervals = dec
    datum = _radial_datum(psi, domain, center, dom_intervals)
    if datum is None:
        raise ConfigurationError(
            "radial_quad needs a datum radial about the domain center"
        )
    psi_r, r_intervals = datum
    return center, dom_intervals, psi_r, r_intervals


def _exact1d_y_intervals(domain, psi):
    x_iv = _intervals_1d(domain)
    if x_iv is None:
        raise ConfigurationError("exact1d applies to 1-D interval domains")
    if isinstance(psi, ConstantOne):
        return x_iv, x_iv
    if isinstance(psi, IndicatorOf):
        y_iv = _intervals_1d(psi.sub)
        if y_iv is None:
            raise ConfigurationError("exact1d indicator datum must be 1-D intervals")
        return x_iv, y_iv
    raise ConfigurationError("exact1d supports constant or indicator data only")


# ---------------------------------------------------------------------------
# public operations


def temperature(
    domain: Domain,
    psi: InitialDatum,
    x,
    t: float,
    method: str = "auto",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-12,
) -> Estimate:
    """u(x;t) = int_Omega p(x,y;t) psi(y) dy; at t=0 returns psi(x) 1[x in Omega]."""
    psi.validate(domain)
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if t == 0.0:
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        val = (
            float(psi.eval_batch(x_arr[None, :], domain)[0])
            if domain.contains(x_arr)
            else 0.0
        )
        return Estimate(val, 0.0, 1, "exact")
    if method == "auto":
        method = _auto_method(domain, psi)
        if method == "box_exact":
            method = "exact1d" if domain.space.m == 1 else "box_exact"
    if method == "eigensum" or (method == "circle_quad" and isinstance(domain, Arc)):
        if not isinstance(psi, ConstantOne):
            raise ConfigurationError("circle temperature supports psi = 1 only")
        return _circle_temperature(domain, x, t, tol)
    if method == "exact1d":
        x_iv, y_iv = _exact1d_y_intervals(domain, psi)
        x0 = float(np.atleast_1d(x)[0])
        return Estimate(_interval_temperature(x0, y_iv, t), 0.0, len(y_iv), "exact1d")
    if method == "box_exact":
        if not isinstance(domain, Box) or not isinstance(psi, ConstantOne):
            raise ConfigurationError("box_exact needs a Box domain with psi = 1")
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        val = 1.0
        for lo, hi, xi in zip(domain.lo, domain.hi, x_arr):
            val *= _interval_temperature(float(xi), [(float(lo), float(hi))], t)
        return Estimate(val, 0.0, domain.space.m, "box_exact")
    if method == "radial_quad":
        center, dom_iv, psi_r, r_iv = _resolve_radial(domain, psi)
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        rho = math.sqrt(float(((x_arr - center) ** 2).sum()))
        vals, errs, nev = radial_profile(
            domain.space.m, t, [rho], r_iv, psi_r, order=0, tol=tol
        )
        return Estimate(float(vals[0]), 0.0, nev, "radial_quad")
    if method == "mc":
        return _mc_temperature(domain, psi, x, t, samples, seed)
    raise ConfigurationError(f"unknown temperature method {method!r}")


def heat_content(
    domain: Domain,
    psi: InitialDatum | None,
    t: float,
    method: str = "auto",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-10,
    split=None,
) -> Estimate:
    """H(t) = int int_{Omega x Omega} p(x,y;t) psi(y) dx dy."""
    curve = heat_content_curve(
        domain, psi, [t], method, samples=samples, seed=seed, tol=tol, split=split
    )
    return curve.points[0]


def heat_content_curve(
    domain: Domain,
    psi: InitialDatum | None,
    ts,
    method: str = "auto",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-10,
    split=None,
) -> Curve:
    """Heat content on a t-grid; Monte Carlo methods share one sample set."""
    psi = psi if psi is not None else ConstantOne()
    psi.validate(domain)
    ts = [float(t) for t in ts]
    if any(t < 0 for t in ts):
        raise ValueError("times must be >= 0")
    if len(ts) >= 2 and not all(a < b for a, b in zip(ts, ts[1:])):
        raise ValueError("t grid must be strictly increasing")
    if not math.isfinite(domain.measure()):
        raise ConfigurationError("heat content needs a finite-measure domain")
    if method == "auto":
        method = _auto_method(domain, psi)
    label = _curve_label(domain, psi)

    pos = [t for t in ts if t > 0.0]
    points: dict[float, Estimate] = {}
    chunk_means = None
    if 0.0 in ts:
        points[0.0] = Estimate(psi.integral(domain), 0.0, 1, method)

    if method in ("mc", "mc_semigroup"):
        if pos:
            if method == "mc":
                vals, ses, n, chunk_means = _mc_content_sums(
                    domain, psi, pos, samples, seed, exterior=False
                )
            else:
                vals, ses, n, chunk_means = _mc_semigroup_sums(
                    domain, psi, pos, samples, seed, split=split
                )
            for t, v, s in zip(pos, vals, ses):
                points[t] = Estimate(float(v), float(s), n, method)
    elif method == "eigensum":
        if not isinstance(domain, Arc) or not isinstance(psi, ConstantOne):
            raise ConfigurationError("eigensum needs an Arc domain with psi = 1")
        for t in pos:
            points[t] = heat_content_circle(domain, t)
    elif method == "circle_quad":
        if not isinstance(domain, Arc) or not isinstance(psi, ConstantOne):
            raise ConfigurationError("circle_quad needs an Arc domain with psi = 1")
        for t in pos:
            points[t] = _circle_quad_content(domain, t, tol=min(tol, 1e-12))
    elif method == "exact1d":
        x_iv, y_iv = _exact1d_y_intervals(domain, psi)
        for t in pos:
            v = _exact1d_content(x_iv, y_iv, t)
            points[t] = Estimate(v, 0.0, len(x_iv) * len(y_iv), "exact1d")
    elif method == "box_exact":
        if not isinstance(domain, Box) or not isinstance(psi, ConstantOne):
            raise ConfigurationError("box_exact needs a Box domain with psi = 1")
        sides = [float(h - l) for l, h in zip(domain.lo, domain.hi)]
        for t in pos:
            v = math.prod(interval_heat_content(s, t) for s in sides)
            points[t] = Estimate(v, 0.0, len(sides), "box_exact")
    elif method == "radial_quad":
        center, dom_iv, psi_r, r_iv = _resolve_radial(domain, psi)
        for t in pos:
            v, err, nev = radial_heat_content(
                domain.space.m, t, dom_iv, r_iv, psi_r, order=0, tol=tol
            )
            points[t] = Estimate(v, 0.0, nev, "radial_quad")
    else:
        raise ConfigurationError(f"unknown heat content method {method!r}")

    ordered = tuple(points[t] for t in ts)
    return Curve(tuple(ts), ordered, label=label, seed=seed, chunk_means=chunk_means)


def heat_loss(
    domain: Domain,
    psi: InitialDatum | None,
    t: float,
    method: str = "auto",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-10,
) -> Estimate:
    """F(t) = H(0) - H(t), or the direct exterior integral for method 'mc'."""
    return heat_loss_curve(
        domain, psi, [t], method, samples=samples, seed=seed, tol=tol
    ).points[0]


def heat_loss_curve(
    domain: Domain,
    psi: InitialDatum | None,
    ts,
    method: str = "auto",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-10,
) -> Curve:
    """Heat loss on a grid.

    * 'mc' integrates psi over jumps that land outside the domain (the
      exterior-mass form): low variance at small F, no near-equal subtraction.
    * deterministic 1-D radial configurations use an erfc complement
      integrand for the same reason.
    * other deterministic methods return H(0) - H(t).
    """
    psi = psi if psi is not None else ConstantOne()
    psi.validate(domain)
    ts = [float(t) for t in ts]
    if method == "auto":
        method = _auto_method(domain, psi)
    label = _curve_label(domain, psi) + "|loss"
    points: dict[float, Estimate] = {}
    pos = [t for t in ts if t > 0.0]
    chunk_means = None
    if 0.0 in ts:
        points[0.0] = Estimate(0.0, 0.0, 1, method)

    if method == "mc":
        if pos:
            vals, ses, n, chunk_means = _mc_content_sums(
                domain, psi, pos, samples, seed, exterior=True
            )
            for t, v, s in zip(pos, vals, ses):
                points[t] = Estimate(float(v), float(s), n, "mc")
    elif (
        method == "radial_quad"
        and domain.space.kind == "euclidean"
        and domain.space.m == 1
    ):
        for t in pos:
            points[t] = _erfc_heat_loss_1d(domain, psi, t, tol)
    else:
        h0 = psi.integral(domain)
        base = heat_content_curve(
            domain, psi, pos, method, samples=samples, seed=seed, tol=tol
        )
        for t, pt in zip(pos, base.points):
            points[t] = Estimate(h0 - pt.value, pt.std_error, pt.n, pt.method)
        chunk_means = (
            h0 - base.chunk_means if base.chunk_means is not None else None
        )
    ordered = tuple(points[t] for t in ts)
    return Curve(tuple(ts), ordered, label=label, seed=seed, chunk_means=chunk_means)


def _erfc_heat_loss_1d(domain, psi, t, tol):
    """F(t) = int psi(y) (1 - u_Omega(y;t)) dy via erfc complements."""
    intervals = _intervals_1d(domain)
    support = _intervals_1d(psi.sampling_domain(domain))
    s = 2.0 * math.sqrt(t)
    center, _, psi_r, _ = _resolve_radial(domain, psi)
    c = float(np.atleast_1d(center)[0])

    def q_complement(y):
        # 1 - sum_i u_i(y): erfc form for the interval containing y, minus the
        # (tiny, well-separated) erf contributions of the other intervals
        out = np.empty_like(y)
        for j, yj in enumerate(y):
            own = None
            for a, b in intervals:
                if a <= yj <= b:
                    own = (a, b)
                    break
            if own is None:
                own = min(intervals, key=lambda iv: min(abs(yj - iv[0]), abs(yj - iv[1])))
            a, b = own
            val = 0.5 * (erfc((b - yj) / s) + erfc((yj - a) / s))
            for a2, b2 in intervals:
                if (a2, b2) != own:
                    val -= 0.5 * (erf((b2 - yj) / s) - erf((a2 - yj) / s))
            out[j] = val
        return out

    def f(y):
        rho = np.abs(y - c)
        return psi_r(rho) * q_complement(y)

    # integrate over the datum's support, split at the radial kink y = c
    spans = []
    for a, b in support:
        if a < c < b:
            spans.extend([(a, c), (c, b)])
        else:
            spans.append((a, b))
    v, err, nev = integrate_intervals(f, spans, tol=min(tol, 1e-12))
    return Estimate(v, 0.0, nev, "radial_quad")


def two_ball_temperature_dt(
    delta: float, m: int, x, t: float, tol: float = 1e-12
) -> Estimate:
    """du/dt at x in B_delta(c2) for the two-ball union of the mirror pair
    B_delta(-(1+delta) e1) and B_delta((1+delta) e1), psi = 1.

    By the reflection symmetry across {x_1 = 0} this is the time derivative
    of the Neumann half-space solution: the quadrature integrates the kernel
    derivative over B_delta(c2) for the source x and its mirror image.
    """
    if not delta > 0:
        raise GeometryError(f"ball radius must be positive, got {delta}")
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (m,):
        raise GeometryError(f"point of dimension {x.size} in {m}-dimensional space")
    c2 = np.zeros(m)
    c2[0] = 1.0 + delta
    if ((x - c2) ** 2).sum() >= delta * delta:
        raise GeometryError("x must lie inside the ball around c2")
    x_img = x.copy()
    x_img[0] = -x_img[0]
    one = lambda r: np.ones_like(r)
    total = 0.0
    nev = 0
    for xi in (x, x_img):
        rho = math.sqrt(float(((xi - c2) ** 2).sum()))
        vals, errs, n = radial_profile(
            m, t, [rho], [(0.0, delta)], one, order=1, tol=0.5 * tol
        )
        total += float(vals[0])
        nev += n
    return Estimate(total, 0.0, nev, "radial_quad")
