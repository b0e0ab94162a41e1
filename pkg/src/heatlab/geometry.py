"""Explicit domains in R^m and on the circle.

Shapes are immutable after construction and validated eagerly; membership is
strict (open sets), measures and diameters are exact closed forms, and
uniform sampling is rejection-free for every supported shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError


def unit_ball_volume(m: int) -> float:
    """Volume of the unit ball in R^m: pi^(m/2) / Gamma(m/2 + 1)."""
    if m < 1:
        raise GeometryError(f"dimension must be >= 1, got {m}")
    return math.pi ** (m / 2.0) / math.gamma(m / 2.0 + 1.0)


def sphere_area(m: int) -> float:
    """Surface measure of the unit sphere S^(m-1) in R^m."""
    return m * unit_ball_volume(m)


@dataclass(frozen=True)
class AmbientSpace:
    """Euclidean space of dimension m, or a circle of circumference L."""

    kind: str
    m: int = 1
    L: float = 0.0

    def __post_init__(self):
        if self.kind == "euclidean":
            if self.m < 1:
                raise GeometryError(f"euclidean dimension must be >= 1, got {self.m}")
        elif self.kind == "circle":
            if not self.L > 0:
                raise GeometryError(f"circle circumference must be > 0, got {self.L}")
        else:
            raise GeometryError(f"unknown ambient space kind {self.kind!r}")

    @staticmethod
    def euclidean(m: int) -> "AmbientSpace":
        return AmbientSpace("euclidean", m=int(m))

    @staticmethod
    def circle(L: float) -> "AmbientSpace":
        return AmbientSpace("circle", m=1, L=float(L))


def _point(space: AmbientSpace, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if space.kind == "euclidean":
        if x.shape != (space.m,):
            raise GeometryError(
                f"point of dimension {x.size} in {space.m}-dimensional space"
            )
    elif x.shape != (1,):
        raise GeometryError("circle points are single arclength coordinates")
    return x


class Domain:
    """Base class for explicit open sets."""

    space: AmbientSpace

    def measure(self) -> float:
        raise NotImplementedError

    def diameter(self) -> float:
        raise NotImplementedError

    def contains_batch(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains(self, x) -> bool:
        x = _point(self.space, x)
        return bool(self.contains_batch(x[None, :])[0])

    def sample_batch(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


class Ball(Domain):
    """Open ball B_r(center) in R^m (an open interval when m = 1)."""

    def __init__(self, center, r: float, space: AmbientSpace | None = None):
        center = np.atleast_1d(np.asarray(center, dtype=float))
        if space is None:
            space = AmbientSpace.euclidean(center.size)
        if space.kind != "euclidean":
            raise GeometryError("balls live in Euclidean space")
        self.space = space
        self.center = _point(space, center)
        self.center.flags.writeable = False
        if not r > 0:
            raise GeometryError(f"ball radius must be positive, got r={r}")
        self.r = float(r)

    def measure(self):
        return unit_ball_volume(self.space.m) * self.r**self.space.m

    def diameter(self):
        return 2.0 * self.r

    def contains_batch(self, X):
        d2 = ((X - self.center[None, :]) ** 2).sum(axis=1)
        return d2 < self.r * self.r

    def sample_batch(self, rng, n):
        # Gaussian direction times radius r * U^(1/m): exact and rejection-free.
        m = self.space.m
        g = rng.standard_normal((n, m))
        norm = np.sqrt((g * g).sum(axis=1))
        norm[norm == 0.0] = 1.0
        u = rng.random(n)
        rad = self.r * u ** (1.0 / m)
        return self.center[None, :] + g * (rad / norm)[:, None]

    def bounding_box(self):
        return self.center - self.r, self.center + self.r

    def to_dict(self):
        return {"ball": {"center": [float(c) for c in self.center], "r": self.r}}


class Annulus(Domain):
    """Open annulus {r1 < |x - center| < r2} in R^m."""

    def __init__(self, center, r1: float, r2: float, space: AmbientSpace | None = None):
        center = np.atleast_1d(np.asarray(center, dtype=float))
        if space is None:
            space = AmbientSpace.euclidean(center.size)
        if space.kind != "euclidean":
            raise GeometryError("annuli live in Euclidean space")
        self.space = space
        self.center = _point(space, center)
        self.center.flags.writeable = False
        if not (0 < r1 < r2 < math.inf):
            raise GeometryError(f"annulus radii must satisfy 0 < r1 < r2 < inf, got {r1}, {r2}")
        self.r1 = float(r1)
        self.r2 = float(r2)

    def measure(self):
        m = self.space.m
        return unit_ball_volume(m) * (self.r2**m - self.r1**m)

    def diameter(self):
        return 2.0 * self.r2

    def contains_batch(self, X):
        d2 = ((X - self.center[None, :]) ** 2).sum(axis=1)
        return (d2 > self.r1 * self.r1) & (d2 < self.r2 * self.r2)

    def sample_batch(self, rng, n):
        m = self.space.m
        g = rng.standard_normal((n, m))
        norm = np.sqrt((g * g).sum(axis=1))
        norm[norm == 0.0] = 1.0
        u = rng.random(n)
        rad = (self.r1**m + u * (self.r2**m - self.r1**m)) ** (1.0 / m)
        return self.center[None, :] + g * (rad / norm)[:, None]

    def bounding_box(self):
        return self.center - self.r2, self.center + self.r2

    def to_dict(self):
        return {
            "annulus": {
                "center": [float(c) for c in self.center],
                "r1": self.r1,
                "r2": self.r2,
            }
        }


class Box(Domain):
    """Open axis-aligned box {lo < x < hi componentwise}."""

    def __init__(self, lo, hi, space: AmbientSpace | None = None):
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if space is None:
            space = AmbientSpace.euclidean(lo.size)
        if space.kind != "euclidean":
            raise GeometryError("boxes live in Euclidean space")
        self.space = space
        self.lo = _point(space, lo)
        self.hi = _point(space, hi)
        if not np.all(self.lo < self.hi):
            raise GeometryError(f"box needs lo < hi componentwise, got lo={lo}, hi={hi}")
        self.lo.flags.writeable = False
        self.hi.flags.writeable = False

    def measure(self):
        return float(np.prod(self.hi - self.lo))

    def diameter(self):
        return float(np.sqrt(((self.hi - self.lo) ** 2).sum()))

    def contains_batch(self, X):
        return np.all((X > self.lo[None, :]) & (X < self.hi[None, :]), axis=1)

    def sample_batch(self, rng, n):
        u = rng.random((n, self.space.m))
        return self.lo[None, :] + u * (self.hi - self.lo)[None, :]

    def bounding_box(self):
        return self.lo.copy(), self.hi.copy()

    def to_dict(self):
        return {"box": {"lo": [float(v) for v in self.lo], "hi": [float(v) for v in self.hi]}}


class Arc(Domain):
    """Open arc of given start angle and arclength on a circle of circumference L."""

    def __init__(self, start: float, length: float, space: AmbientSpace):
        if space.kind != "circle":
            raise GeometryError("arcs live on a circle")
        self.space = space
        if not (0 < length <= space.L):
            raise GeometryError(
                f"arc length must lie in (0, L], got {length} with L={space.L}"
            )
        self.start = float(start) % space.L
        self.length = float(length)

    def measure(self):
        return self.length

    def diameter(self):
        # geodesic diameter; a full-circle arc is capped at L/2
        return min(self.length, 0.5 * self.space.L)

    def contains_batch(self, X):
        d = np.mod(X[:, 0] - self.start, self.space.L)
        return (d > 0.0) & (d < self.length)

    def sample_batch(self, rng, n):
        u = rng.random(n)
        return np.mod(self.start + u * self.length, self.space.L)[:, None]

    def bounding_box(self):
        raise GeometryError("arcs have no Euclidean bounding box")

    def to_dict(self):
        return {"arc": {"start": self.start, "length": self.length}}


def _separated(a: Domain, b: Domain) -> bool:
    """Disjointness test for the supported shape pairs; GeometryError otherwise."""
    if isinstance(a, Ball) and isinstance(b, Ball):
        gap = math.sqrt(((a.center - b.center) ** 2).sum())
        return gap >= a.r + b.r
    if isinstance(a, Annulus) and isinstance(b, Ball):
        return _separated(b, a)
    if isinstance(a, Ball) and isinstance(b, Annulus):
        if not np.allclose(a.center, b.center):
            raise GeometryError(
                "ball-annulus disjointness is only validated for a common center"
            )
        return a.r <= b.r1
    if isinstance(a, Annulus) and isinstance(b, Annulus):
        if not np.allclose(a.center, b.center):
            raise GeometryError(
                "annulus-annulus disjointness is only validated for a common center"
            )
        return a.r2 <= b.r1 or b.r2 <= a.r1
    if isinstance(a, Box) and isinstance(b, Box):
        return bool(np.any((a.hi <= b.lo) | (b.hi <= a.lo)))
    if isinstance(a, Arc) and isinstance(b, Arc):
        # open arcs are disjoint iff each starts at or after the other ends
        L = a.space.L
        fwd = (b.start - a.start) % L
        bwd = (a.start - b.start) % L
        return fwd >= a.length and bwd >= b.length
    raise GeometryError(
        f"disjointness validation not supported for {type(a).__name__} and "
        f"{type(b).__name__}; refusing the union"
    )


class DisjointUnion(Domain):
    """Finite union of pairwise disjoint parts sharing one ambient space."""

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise GeometryError("union needs at least one part")
        self.space = parts[0].space
        for p in parts[1:]:
            if p.space != self.space:
                raise GeometryError("all union parts must share one ambient space")
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if not _separated(parts[i], parts[j]):
                    raise GeometryError(
                        f"union parts {i} and {j} overlap (or touch with interior)"
                    )
        self.parts = parts

    def measure(self):
        return sum(p.measure() for p in self.parts)

    def diameter(self):
        best = max(p.diameter() for p in self.parts)
        for i in range(len(self.parts)):
            for j in range(i + 1, len(self.parts)):
                best = max(best, _cross_extent(self.parts[i], self.parts[j]))
        return best

    def contains_batch(self, X):
        out = self.parts[0].contains_batch(X)
        for p in self.parts[1:]:
            out = out | p.contains_batch(X)
        return out

    def sample_batch(self, rng, n):
        # choose parts by measure, then sample each part; a single uniform
        # stream drives the selection so the draw stays reproducible
        weights = np.array([p.measure() for p in self.parts])
        cum = np.cumsum(weights) / weights.sum()
        pick = np.searchsorted(cum, rng.random(n), side="right")
        pick = np.minimum(pick, len(self.parts) - 1)
        dim = 1 if self.space.kind == "circle" else self.space.m
        out = np.empty((n, dim))
        for i, p in enumerate(self.parts):
            idx = np.nonzero(pick == i)[0]
            if idx.size:
                out[idx] = p.sample_batch(rng, idx.size)
        return out

    def bounding_box(self):
        lohi = [p.bounding_box() for p in self.parts]
        lo = np.min([b[0] for b in lohi], axis=0)
        hi = np.max([b[1] for b in lohi], axis=0)
        return lo, hi

    def to_dict(self):
        return {"union": [p.to_dict() for p in self.parts]}


def _cross_extent(a: Domain, b: Domain) -> float:
    """Supremum distance between points of two disjoint parts."""
    def outer_radius(s):
        if isinstance(s, Ball):
            return s.center, s.r
        if isinstance(s, Annulus):
            return s.center, s.r2
        if isinstance(s, Box):
            c = 0.5 * (s.lo + s.hi)
            return c, 0.5 * s.diameter()
        raise GeometryError(f"diameter unsupported for union with {type(s).__name__}")

    if isinstance(a, Box) and isinstance(b, Box):
        corners = lambda s: np.array(
            np.meshgrid(*[(lo, hi) for lo, hi in zip(s.lo, s.hi)], indexing="ij")
        ).reshape(s.space.m, -1).T
        ca, cb = corners(a), corners(b)
        d2 = ((ca[:, None, :] - cb[None, :, :]) ** 2).sum(axis=2)
        return float(np.sqrt(d2.max()))
    ca, ra = outer_radius(a)
    cb, rb = outer_radius(b)
    return float(np.sqrt(((ca - cb) ** 2).sum())) + ra + rb


def measure(domain: Domain) -> float:
    """Exact Lebesgue measure (arclength on the circle)."""
    return domain.measure()


def diameter(domain: Domain) -> float:
    """Supremum of pairwise distances (geodesic on the circle)."""
    return domain.diameter()


def contains(domain: Domain, x) -> bool:
    """Strict membership in the open set."""
    return domain.contains(x)


def sample_uniform(domain: Domain, rng: np.random.Generator) -> np.ndarray:
    """One uniform draw from the domain; deterministic given the generator state."""
    return domain.sample_batch(rng, 1)[0]


_SHAPE_KEYS = {"ball", "annulus", "box", "union", "arc"}


def space_from_dict(d: dict) -> AmbientSpace:
    if not isinstance(d, dict) or len(d) != 1:
        raise GeometryError(f"space must be one of euclidean/circle, got {d!r}")
    key, val = next(iter(d.items()))
    if key == "euclidean":
        return AmbientSpace.euclidean(int(val))
    if key == "circle":
        return AmbientSpace.circle(float(val))
    raise GeometryError(f"unknown space key {key!r}")


def shape_from_dict(d: dict, space: AmbientSpace) -> Domain:
    if not isinstance(d, dict) or len(d) != 1:
        raise GeometryError(f"shape must be a single-key object, got {d!r}")
    key, val = next(iter(d.items()))
    if key not in _SHAPE_KEYS:
        raise GeometryError(f"unknown shape key {key!r}")
    if key == "union":
        if not isinstance(val, list) or not val:
            raise GeometryError("union must be a non-empty list of shapes")
        return DisjointUnion([shape_from_dict(v, space) for v in val])
    if not isinstance(val, dict):
        raise GeometryError(f"shape body must be an object, got {val!r}")
    if key == "ball":
        _require_keys(val, {"center", "r"})
        return Ball(val["center"], val["r"], space)
    if key == "annulus":
        _require_keys(val, {"center", "r1", "r2"})
        return Annulus(val["center"], val["r1"], val["r2"], space)
    if key == "box":
        _require_keys(val, {"lo", "hi"})
        return Box(val["lo"], val["hi"], space)
    _require_keys(val, {"start", "length"})
    return Arc(val["start"], val["length"], space)


def domain_from_dict(d: dict) -> Domain:
    _require_keys(d, {"space", "shape"}, optional={"datum"})
    space = space_from_dict(d["space"])
    return shape_from_dict(d["shape"], space)


def _require_keys(d: dict, required: set, optional: set = frozenset()):
    missing = required - d.keys()
    if missing:
        raise GeometryError(f"missing keys {sorted(missing)}")
    unknown = d.keys() - required - optional
    if unknown:
        raise GeometryError(f"unknown keys {sorted(unknown)}")
