import math

import numpy as np
import pytest

from heatlab import (
    AmbientSpace,
    KernelEval,
    circle_kernel,
    heat_kernel,
    heat_kernel_time_derivative,
    log_heat_kernel,
    neumann_halfspace_kernel,
)
from heatlab.quadrature import integrate
from heatlab.rng import substream

E1 = AmbientSpace.euclidean(1)
E2 = AmbientSpace.euclidean(2)
E3 = AmbientSpace.euclidean(3)
CIRC = AmbientSpace.circle(2 * math.pi)


def test_prefactor_only():
    e = KernelEval.at(E1, [0.3], [0.3], 1.0 / (4 * math.pi))
    assert heat_kernel(e) == pytest.approx(1.0, rel=1e-15)


def test_direct_substitution():
    e = KernelEval.at(E2, [0.0, 0.0], [2.0, 0.0], 1.0)
    assert heat_kernel(e) == pytest.approx(math.exp(-1.0) / (4 * math.pi), rel=1e-15)


def test_symmetry_is_bitwise():
    rng = substream(21, 0)
    for _ in range(50):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        t = float(rng.random()) + 0.05
        assert heat_kernel(KernelEval.at(E3, x, y, t)) == heat_kernel(
            KernelEval.at(E3, y, x, t)
        )


def test_normalization_m1():
    # int_R p(x, y; t) dy = 1 (stochastic completeness)
    x, t = 0.37, 0.3

    def f(y):
        return np.array([heat_kernel(KernelEval.at(E1, [x], [yi], t)) for yi in y])

    v, err, _ = integrate(f, x - 20 * math.sqrt(t), x + 20 * math.sqrt(t), tol=1e-13)
    assert abs(v - 1.0) < 1e-12


def test_semigroup_m1_randomized():
    # int p(x,z;s) p(z,y;t) dz = p(x,y;s+t)
    rng = substream(22, 0)
    for _ in range(5):
        x = float(rng.uniform(-2, 2))
        y = float(rng.uniform(-2, 2))
        s = float(rng.uniform(0.1, 2))
        t = float(rng.uniform(0.1, 2))

        def f(z):
            return np.array(
                [
                    heat_kernel(KernelEval.at(E1, [x], [zi], s))
                    * heat_kernel(KernelEval.at(E1, [zi], [y], t))
                    for zi in z
                ]
            )

        mid = (t * x + s * y) / (s + t)
        half = 15 * math.sqrt(2 * s * t / (s + t)) + abs(x - y)
        v, err, _ = integrate(f, mid - half, mid + half, tol=1e-12)
        target = heat_kernel(KernelEval.at(E1, [x], [y], s + t))
        assert abs(v - target) < 1e-10


def test_derivative_root_of_quadratic_factor():
    # order 2 vanishes when b/t = (m+2)/2 + sqrt((m+2)/2)
    for m in (1, 2, 5):
        space = AmbientSpace.euclidean(m)
        t = 0.8
        h = 0.5 * (m + 2)
        b = t * (h + math.sqrt(h))
        x = np.zeros(m)
        y = np.zeros(m)
        y[0] = 2.0 * math.sqrt(b)
        e = KernelEval.at(space, x, y, t)
        d2 = heat_kernel_time_derivative(e, 2)
        scale = heat_kernel(e) * h / t**2
        assert abs(d2) < 1e-12 * scale


def test_derivative_order1_at_diagonal():
    e = KernelEval.at(E2, [0.0, 0.0], [0.0, 0.0], 1.0)
    assert heat_kernel_time_derivative(e, 1) == pytest.approx(
        -1.0 / (4 * math.pi), rel=1e-14
    )


def _richardson_dt(f, t, order, h0):
    def cd(h):
        if order == 1:
            return (f(t + h) - f(t - h)) / (2 * h)
        return (f(t + h) - 2 * f(t) + f(t - h)) / h**2

    d = [cd(h0 / 2**j) for j in range(3)]
    r1 = [(4 * b - a) / 3 for a, b in zip(d, d[1:])]
    return (16 * r1[1] - r1[0]) / 15


@pytest.mark.parametrize("order", [1, 2])
def test_derivatives_match_finite_differences(order):
    x = np.zeros(3)
    y = np.array([0.7, 0.0, 0.0])
    t = 0.5

    def f(tt):
        return heat_kernel(KernelEval.at(E3, x, y, tt))

    fd = _richardson_dt(f, t, order, t / 16)
    an = heat_kernel_time_derivative(KernelEval.at(E3, x, y, t), order)
    assert an == pytest.approx(fd, rel=1e-6)


def test_neumann_wall_limit():
    # x = y with x1 -> 0+: both exponents vanish, value -> 2 (4 pi t)^{-m/2}
    t = 0.7
    eps = 1e-9
    e = KernelEval.at(E2, [eps, 0.3], [eps, 0.3], t)
    assert neumann_halfspace_kernel(e) == pytest.approx(
        2 * (4 * math.pi * t) ** -1.0, rel=1e-8
    )


def test_neumann_substitution():
    delta = 0.05
    v = neumann_halfspace_kernel(KernelEval.at(E1, [1 + delta], [1 + delta], 1.0))
    expected = (4 * math.pi) ** -0.5 * (1 + math.exp(-(2.1**2) / 4))
    assert v == pytest.approx(expected, rel=1e-14)


def test_neumann_reflection_symmetry():
    # swapping x and y leaves both the direct and the image distance unchanged
    t = 0.4
    a = neumann_halfspace_kernel(KernelEval.at(E2, [0.5, 1.0], [1.5, -0.3], t))
    b = neumann_halfspace_kernel(KernelEval.at(E2, [1.5, -0.3], [0.5, 1.0], t))
    assert a == pytest.approx(b, rel=1e-15)


def test_neumann_requires_positive_first_coordinates():
    with pytest.raises(Exception):
        neumann_halfspace_kernel(KernelEval.at(E2, [-0.5, 0.0], [1.0, 0.0], 1.0))


def test_neumann_normal_derivative_vanishes_at_wall():
    # build the even extension from two free-kernel calls and difference it
    t, eps = 0.3, 1e-6
    y = np.array([0.8, 0.2])
    yr = np.array([-0.8, 0.2])

    def even_ext(x1):
        x = np.array([x1, -0.4])
        return heat_kernel(KernelEval.at(E2, x, y, t)) + heat_kernel(
            KernelEval.at(E2, x, yr, t)
        )

    d = (even_ext(eps) - even_ext(-eps)) / (2 * eps)
    assert abs(d) < 1e-8


def test_circle_normalization():
    x, t = 0.7, 0.1

    def f(y):
        return np.array(
            [circle_kernel(KernelEval.at(CIRC, [x], [yi], t)) for yi in y]
        )

    v, err, _ = integrate(f, 0.0, 2 * math.pi, tol=1e-13)
    assert abs(v - 1.0) < 1e-12


def test_circle_long_time_uniformizes():
    v = circle_kernel(KernelEval.at(CIRC, [1.0], [4.0], 50.0))
    assert abs(v - 1 / (2 * math.pi)) < 1e-12


def test_circle_matches_spectral_sum():
    # Poisson-summation cross-check: wrapped Gaussian against the eigensum
    L, t = 2 * math.pi, 0.2
    ks = np.arange(1, 80)
    for d in (0.0, 0.5, 2.0, math.pi):
        spectral = (1 + 2 * (np.exp(-((2 * math.pi * ks / L) ** 2) * t) * np.cos(2 * math.pi * ks * d / L)).sum()) / L
        v = circle_kernel(KernelEval.at(CIRC, [d], [0.0], t))
        assert v == pytest.approx(spectral, abs=1e-12)


def test_log_kernel_handles_underflow():
    e = KernelEval.at(E1, [0.0], [200.0], 1e-2)
    assert heat_kernel(e) == 0.0  # underflows as documented
    assert log_heat_kernel(e) == pytest.approx(
        -0.5 * math.log(4 * math.pi * 1e-2) - 1e4 / 1e-2, rel=1e-15
    )


def test_nonpositive_time_rejected():
    with pytest.raises(ValueError):
        heat_kernel(KernelEval.at(E1, [0.0], [1.0], 0.0))
    with pytest.raises(ValueError):
        heat_kernel_time_derivative(KernelEval.at(E1, [0.0], [1.0], -1.0), 1)
    with pytest.raises(ValueError):
        circle_kernel(KernelEval.at(CIRC, [0.0], [1.0], 0.0))
