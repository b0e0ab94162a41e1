import math

import numpy as np
import pytest
from scipy.stats import chi2

from heatlab import (
    AmbientSpace,
    Annulus,
    Arc,
    Ball,
    Box,
    DisjointUnion,
    GeometryError,
    contains,
    diameter,
    measure,
    sample_uniform,
    unit_ball_volume,
)
from heatlab.geometry import domain_from_dict
from heatlab.rng import substream


def test_measure_unit_disc():
    assert measure(Ball([0.0, 0.0], 1.0)) == pytest.approx(math.pi, rel=1e-15)


def test_measure_annulus():
    assert measure(Annulus([0.0, 0.0], 2.0, 3.0)) == pytest.approx(5 * math.pi, rel=1e-15)


def test_measure_two_ball_union():
    # the Theorem 3 configuration at delta = 1/20: total length 4 delta = 0.2
    d = 0.05
    u = DisjointUnion([Ball([-1 - d], d), Ball([1 + d], d)])
    assert measure(u) == pytest.approx(0.2, rel=1e-15)


def test_union_measure_is_sum_of_parts():
    parts = [Ball([0.0, 0.0], 1.0), Annulus([0.0, 0.0], 2.0, 5.0)]
    u = DisjointUnion(parts)
    assert measure(u) == sum(p.measure() for p in parts)


def test_diameter_ball():
    assert diameter(Ball([0.0, 0.0, 0.0], 0.5)) == 1.0


def test_diameter_two_ball_union():
    d = 0.05
    u = DisjointUnion([Ball([-1 - d], d), Ball([1 + d], d)])
    assert diameter(u) == pytest.approx(2 + 4 * d, rel=1e-15)


def test_diameter_box():
    assert diameter(Box([0.0, 0.0], [3.0, 4.0])) == pytest.approx(5.0, rel=1e-15)


def test_diameter_translation_invariant():
    rng = substream(424242, 0)
    for _ in range(20):
        shift = rng.normal(size=2) * 10
        b0 = Ball([0.0, 0.0], 1.5)
        b1 = Ball(shift, 1.5)
        assert diameter(b0) == diameter(b1)
        x0 = Box([0.0, 0.0], [2.0, 1.0])
        x1 = Box(shift, shift + np.array([2.0, 1.0]))
        assert diameter(x0) == pytest.approx(diameter(x1), rel=1e-12)


def test_contains_open_ball():
    b = Ball([0.0, 0.0], 1.0)
    assert contains(b, [0.0, 0.0])
    assert not contains(b, [1.0, 0.0])  # boundary excluded


def test_contains_theorem2_gap():
    omega = DisjointUnion(
        [Ball([0.0, 0.0], 1.0), Annulus([0.0, 0.0], 2.0, 10.0)]
    )
    assert not contains(omega, [1.5, 0.0])
    assert contains(omega, [0.5, 0.0])
    assert contains(omega, [3.0, 0.0])


def test_contains_dimension_mismatch():
    with pytest.raises(GeometryError):
        contains(Ball([0.0, 0.0], 1.0), [0.0])


def test_unit_ball_volume_low_dims():
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-15)


def test_unit_ball_volume_recursion():
    # omega_m = omega_{m-2} * 2 pi / m
    for m in range(3, 31):
        lhs = unit_ball_volume(m)
        rhs = unit_ball_volume(m - 2) * 2 * math.pi / m
        assert lhs == pytest.approx(rhs, rel=1e-14)


def test_sample_uniform_mean_1d():
    # CLT bound: mean of 1e6 uniform draws on (-1,1) is 0 +- 4/(sqrt(3) * 1e3)
    rng = substream(7, 0)
    xs = Ball([0.0], 1.0).sample_batch(rng, 1_000_000)
    assert abs(xs.mean()) < 4 * (1 / math.sqrt(3)) / 1e3


def test_sample_uniform_box_contained():
    rng = substream(8, 0)
    box = Box([0.0, -1.0], [2.0, 1.0])
    pts = box.sample_batch(rng, 10_000)
    assert box.contains_batch(pts).all()


def test_sample_union_hit_frequency():
    # two equal-measure parts: part-1 frequency 0.5 +- 4 * 0.0005 over 1e6 draws
    u = DisjointUnion([Ball([-2.0], 0.5), Ball([2.0], 0.5)])
    rng = substream(9, 0)
    pts = u.sample_batch(rng, 1_000_000)
    frac = (pts[:, 0] < 0).mean()
    assert abs(frac - 0.5) < 4 * 0.0005


def test_sample_ball_radial_chi_square():
    # radial CDF of a uniform ball sample is (r/R)^m: equiprobable bins
    rng = substream(10, 0)
    m, n, bins = 2, 1_000_000, 20
    pts = Ball([0.0, 0.0], 1.0).sample_batch(rng, n)
    r = np.sqrt((pts**2).sum(axis=1))
    u = r**m
    counts, _ = np.histogram(u, bins=np.linspace(0, 1, bins + 1))
    stat = ((counts - n / bins) ** 2 / (n / bins)).sum()
    assert stat < chi2.ppf(0.999, bins - 1)


def test_samples_always_contained():
    rng = substream(11, 0)
    for dom in (
        Ball([1.0, 2.0, 3.0], 0.7),
        Annulus([0.0, 0.0], 1.0, 2.0),
        Box([0.0], [1.0]),
        DisjointUnion([Ball([-2.0, 0.0], 0.5), Ball([2.0, 0.0], 0.5)]),
    ):
        pts = dom.sample_batch(rng, 5000)
        assert dom.contains_batch(pts).all()
    point = sample_uniform(Ball([0.0, 0.0], 1.0), rng)
    assert contains(Ball([0.0, 0.0], 1.0), point)


def test_arc_geometry():
    circ = AmbientSpace.circle(2 * math.pi)
    arc = Arc(0.0, math.pi, circ)
    assert measure(arc) == pytest.approx(math.pi)
    assert diameter(arc) == pytest.approx(math.pi)  # geodesic cap at L/2
    big = Arc(0.0, 1.75 * math.pi, circ)
    assert diameter(big) == pytest.approx(math.pi)
    assert contains(arc, [1.0])
    assert not contains(arc, [4.0])
    rng = substream(12, 0)
    pts = arc.sample_batch(rng, 2000)
    assert arc.contains_batch(pts).all()


def test_invalid_shapes_rejected():
    with pytest.raises(GeometryError):
        Ball([0.0], -1.0)
    with pytest.raises(GeometryError):
        Annulus([0.0, 0.0], 3.0, 2.0)
    with pytest.raises(GeometryError):
        Box([0.0, 0.0], [1.0, -1.0])
    with pytest.raises(GeometryError):
        Arc(0.0, 10.0, AmbientSpace.circle(2 * math.pi))
    with pytest.raises(GeometryError):
        AmbientSpace.circle(-1.0)


def test_overlapping_union_rejected():
    with pytest.raises(GeometryError):
        DisjointUnion([Ball([0.0], 1.0), Ball([1.0], 1.0)])
    with pytest.raises(GeometryError):
        DisjointUnion([Ball([0.0, 0.0], 3.0), Annulus([0.0, 0.0], 2.0, 4.0)])


def test_unsupported_union_pair_rejected_conservatively():
    # ball-annulus disjointness is only validated for a common center
    with pytest.raises(GeometryError):
        DisjointUnion([Ball([5.0, 5.0], 0.1), Annulus([0.0, 0.0], 1.0, 2.0)])


def test_union_parts_share_space():
    with pytest.raises(GeometryError):
        DisjointUnion([Ball([0.0], 1.0), Ball([5.0, 0.0], 1.0)])


def test_domain_from_dict_round_trip():
    spec = {
        "space": {"euclidean": 2},
        "shape": {
            "union": [
                {"ball": {"center": [0.0, 0.0], "r": 1.0}},
                {"annulus": {"center": [0.0, 0.0], "r1": 2.0, "r2": 10.0}},
            ]
        },
    }
    dom = domain_from_dict(spec)
    assert dom.to_dict() == spec["shape"]


def test_domain_from_dict_rejects_unknown_keys():
    with pytest.raises(GeometryError):
        domain_from_dict(
            {"space": {"euclidean": 2}, "shape": {"ball": {"center": [0, 0], "r": 1, "color": "red"}}}
        )
    with pytest.raises(GeometryError):
        domain_from_dict({"space": {"flat": 2}, "shape": {"ball": {"center": [0], "r": 1}}})
