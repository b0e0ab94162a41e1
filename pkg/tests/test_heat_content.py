import math

import numpy as np
import pytest
from scipy import integrate as si

from heatlab import (
    AmbientSpace,
    Annulus,
    Arc,
    Ball,
    Box,
    CircleSpectrum,
    ConfigurationError,
    ConstantOne,
    DisjointUnion,
    IndicatorOf,
    RadialPower,
    heat_content,
    heat_content_circle,
    heat_content_curve,
    heat_loss,
    heat_loss_curve,
    temperature,
    two_ball_temperature_dt,
)
from heatlab.heat_content import interval_heat_content

ONE = ConstantOne()
INTERVAL = Box([0.0], [1.0])
DISC = Ball([0.0, 0.0], 1.0)


def oracle_interval_content(t, a=0.0, b=1.0):
    """Independent 2-D adaptive quadrature of the kernel over the square."""
    val, err = si.dblquad(
        lambda y, x: math.exp(-((x - y) ** 2) / (4 * t)) / math.sqrt(4 * math.pi * t),
        a,
        b,
        a,
        b,
        epsabs=1e-12,
    )
    return val


# --- temperature -----------------------------------------------------------


def test_interval_temperature_closed_form():
    for t in (0.01, 0.1, 1.0):
        u = temperature(INTERVAL, ONE, [0.5], t)
        assert u.value == pytest.approx(math.erf(1 / (4 * math.sqrt(t))), rel=1e-14)
        assert u.std_error == 0.0


def test_interval_temperature_initial_limit():
    assert temperature(INTERVAL, ONE, [0.5], 1e-6).value == pytest.approx(1.0, abs=1e-12)
    assert temperature(INTERVAL, ONE, [0.5], 0.0).value == 1.0
    assert temperature(INTERVAL, ONE, [2.0], 0.0).value == 0.0


def test_temperature_bounds_unit_datum():
    # 0 <= u <= 1 forced by kernel normalization
    for t in (0.05, 0.7, 9.0):
        for x in ([0.0, 0.0], [0.9, 0.0], [3.0, -1.0]):
            u = temperature(DISC, ONE, x, t, "radial_quad").value
            assert -1e-12 <= u <= 1.0 + 1e-12


def test_disc_temperature_quadrature_vs_mc():
    t = 0.5
    exact = temperature(DISC, ONE, [0.0, 0.0], t, "radial_quad")
    mc = temperature(DISC, ONE, [0.0, 0.0], t, "mc", samples=1_000_000, seed=5)
    assert abs(mc.value - exact.value) < 4 * mc.std_error


def test_temperature_method_mismatch():
    with pytest.raises(ConfigurationError):
        temperature(DISC, ONE, [0.0, 0.0], 0.5, "exact1d")


# --- heat content ----------------------------------------------------------


def test_interval_content_closed_form_value():
    # H(0.25) = erf(1) - 2 sqrt(0.25/pi) (1 - 1/e)
    h = heat_content(INTERVAL, ONE, 0.25, "exact1d")
    expected = math.erf(1.0) - 2 * math.sqrt(0.25 / math.pi) * (1 - math.exp(-1))
    assert h.value == pytest.approx(expected, abs=1e-15)
    assert h.value == pytest.approx(0.48606, abs=5e-6)


def test_interval_content_vs_2d_quadrature_oracle():
    for t in (0.01, 0.25, 1.0):
        h = heat_content(INTERVAL, ONE, t, "exact1d")
        assert abs(h.value - oracle_interval_content(t)) < 1e-9


def test_content_at_zero_is_measure():
    assert heat_content(INTERVAL, ONE, 0.0).value == 1.0
    assert heat_content(DISC, ONE, 0.0).value == pytest.approx(math.pi, rel=1e-15)


def test_content_upper_bounds():
    # H(t) <= |Omega| and H(t) <= |Omega|^2 / (4 pi t)^{m/2}
    vol = DISC.measure()
    for t in (0.02, 0.5, 4.0):
        h = heat_content(DISC, ONE, t, "radial_quad").value
        assert h <= vol + 1e-10
        assert h <= vol * vol / (4 * math.pi * t) ** 1.0 + 1e-10


def test_content_long_time_kernel_lower_bound():
    # for t >= diam^2: H >= e^{-1/4} |Omega|^2 / (4 pi t)^{m/2}
    vol = DISC.measure()
    for t in (4.0, 9.0, 30.0):
        h = heat_content(DISC, ONE, t, "radial_quad").value
        assert h >= math.exp(-0.25) * vol * vol / (4 * math.pi * t) - 1e-10


def test_box_content_is_product_of_intervals():
    box = Box([0.0, 0.0], [1.0, 2.0])
    t = 0.2
    h = heat_content(box, ONE, t, "box_exact")
    prod = interval_heat_content(1.0, t) * interval_heat_content(2.0, t)
    assert h.value == pytest.approx(prod, rel=1e-15)
    mc = heat_content(box, ONE, t, "mc", samples=500_000, seed=4)
    assert abs(mc.value - h.value) < 4 * mc.std_error


def test_disc_content_vs_covariance_oracle():
    # independent oracle: H = int m omega_m s^{m-1} C(s) p(s;t) ds with the
    # closed-form set covariance of the unit disc
    def oracle(t):
        f = lambda s: (
            2 * math.pi * s
            * (2 * np.arccos(s / 2) - (s / 2) * np.sqrt(4 - s * s))
            * math.exp(-s * s / (4 * t)) / (4 * math.pi * t)
        )
        v, _ = si.quad(f, 0, 2, epsabs=1e-13, limit=300)
        return v

    for t in (0.05, 0.6, 3.0):
        h = heat_content(DISC, ONE, t, "radial_quad", tol=1e-11)
        assert h.value == pytest.approx(oracle(t), abs=5e-11)


def test_radial_content_mc_cross_check():
    h = heat_content(DISC, ONE, 0.5, "radial_quad")
    mc = heat_content(DISC, ONE, 0.5, "mc", samples=500_000, seed=17)
    assert abs(h.value - mc.value) < 4 * mc.std_error


def test_semigroup_split_consistency():
    # H estimates from splits (t/2, t/2) and (t/4, 3t/4) agree (common seed)
    t = 0.8
    a = heat_content(DISC, ONE, t, "mc_semigroup", samples=400_000, seed=9)
    b = heat_content(
        DISC,
        ONE,
        t,
        "mc_semigroup",
        samples=400_000,
        seed=9,
        split=lambda tt: (0.25 * tt, 0.75 * tt),
    )
    se = math.hypot(a.std_error, b.std_error)
    assert abs(a.value - b.value) < 4 * se
    exact = heat_content(DISC, ONE, t, "radial_quad").value
    assert abs(a.value - exact) < 4 * a.std_error


def test_annulus_radial_content_vs_mc():
    ann = Annulus([0.0, 0.0], 1.0, 2.0)
    h = heat_content(ann, ONE, 0.3, "radial_quad")
    mc = heat_content(ann, ONE, 0.3, "mc", samples=500_000, seed=23)
    assert abs(h.value - mc.value) < 4 * mc.std_error


def test_indicator_datum_radial_vs_mc():
    omega = DisjointUnion([Ball([0.0, 0.0], 1.0), Annulus([0.0, 0.0], 2.0, 4.0)])
    psi = IndicatorOf(omega.parts[0])
    h = heat_content(omega, psi, 0.5, "radial_quad")
    mc = heat_content(omega, psi, 0.5, "mc", samples=500_000, seed=31)
    assert abs(h.value - mc.value) < 4 * mc.std_error
    assert heat_content(omega, psi, 0.0).value == pytest.approx(math.pi, rel=1e-15)


def test_infinite_measure_rejected():
    with pytest.raises(Exception):
        heat_content(Annulus([0.0, 0.0], 1.0, math.inf), ONE, 1.0)


# --- circle ----------------------------------------------------------------


def test_circle_limit_and_zero():
    circ = AmbientSpace.circle(2 * math.pi)
    arc = Arc(0.0, math.pi, circ)
    assert heat_content_circle(arc, 0.0).value == pytest.approx(math.pi)
    # t -> infinity limit |arc|^2 / L = pi/2
    assert abs(heat_content_circle(arc, 50.0).value - math.pi / 2) < 1e-10


def test_circle_small_time_against_interval_form():
    # for t so small that wrap-around images vanish, the arc behaves as an
    # interval: H = ell erf(ell/(2 sqrt t)) - 2 sqrt(t/pi)(1 - e^{-ell^2/4t})
    circ = AmbientSpace.circle(2 * math.pi)
    arc = Arc(0.0, math.pi, circ)
    for t in (1e-4, 1e-3):
        h = heat_content_circle(arc, t).value
        assert h == pytest.approx(interval_heat_content(math.pi, t), abs=1e-12)


def test_circle_eigensum_vs_wrapped_quadrature():
    circ = AmbientSpace.circle(2 * math.pi)
    arc = Arc(0.3, math.pi, circ)
    for t in (0.05, 0.2, 1.0):
        a = heat_content_circle(arc, t).value
        b = heat_content(arc, ONE, t, "circle_quad").value
        assert a == pytest.approx(b, abs=1e-8)


def test_circle_spectrum_type():
    circ = AmbientSpace.circle(2 * math.pi)
    arc = Arc(0.0, math.pi, circ)
    spec = CircleSpectrum.for_arc(arc, 60)
    assert spec.modes[0][0] == 0.0
    assert spec.modes[0][1] == pytest.approx(math.pi / math.sqrt(2 * math.pi), rel=1e-15)
    mus = [mu for mu, _ in spec.modes]
    assert all(a <= b for a, b in zip(mus, mus[1:]))
    assert spec.heat_content(0.2) == pytest.approx(
        heat_content_circle(arc, 0.2).value, abs=1e-12
    )


# --- heat loss -------------------------------------------------------------


def test_heat_loss_zero():
    assert heat_loss(DISC, ONE, 0.0).value == 0.0


def test_heat_loss_routes_agree():
    t = 0.5
    f_mc = heat_loss(DISC, ONE, t, "mc", samples=500_000, seed=11)
    f_quad = heat_loss(DISC, ONE, t, "radial_quad")
    assert abs(f_mc.value - f_quad.value) < 4 * f_mc.std_error


def test_heat_loss_theorem2_lower_bound():
    # F(1) >= e^{-9/4} omega_m^2 (2^m - 1)/(4 pi)^{m/2} = e^{-9/4} 3 pi / 4 at m=2
    omega = DisjointUnion([Ball([0.0, 0.0], 1.0), Annulus([0.0, 0.0], 2.0, 10.0)])
    psi = IndicatorOf(omega.parts[0])
    f = heat_loss(omega, psi, 1.0, "mc", samples=500_000, seed=13)
    bound = math.exp(-9 / 4) * 3 * math.pi / 4
    assert f.value - 4 * f.std_error > bound


def test_heat_loss_erfc_route_matches_direct_subtraction():
    ball = Ball([0.0], 1.0)
    psi = RadialPower(2.0)
    for t in (0.01, 0.2):
        direct = psi.integral(ball) - heat_content(ball, psi, t, "radial_quad", tol=1e-13).value
        erfc_route = heat_loss(ball, psi, t, "radial_quad").value
        assert erfc_route == pytest.approx(direct, abs=1e-11)


def test_radial_power_integral():
    # int_{B_1} (1-|y|)^alpha dy = m omega_m B(m, alpha+1)
    ball = Ball([0.0], 1.0)
    assert RadialPower(2.0).integral(ball) == pytest.approx(2 / 3, rel=1e-14)
    ball2 = Ball([0.0, 0.0], 1.0)
    assert RadialPower(2.0).integral(ball2) == pytest.approx(
        2 * math.pi * (1 / 2 - 2 / 3 + 1 / 4), rel=1e-12
    )


def test_radial_power_needs_unit_ball():
    with pytest.raises(ConfigurationError):
        RadialPower(2.0).validate(Ball([0.0], 2.0))
    with pytest.raises(ConfigurationError):
        RadialPower(0.5)


# --- two-ball temperature derivative ---------------------------------------


def test_two_ball_dt_strictly_negative_at_center():
    d = two_ball_temperature_dt(0.05, 2, [1.05, 0.0], 1.0)
    assert d.value < 0
    assert d.std_error == 0.0


def test_two_ball_dt_pointwise_bound():
    # value <= |B_delta| (2t (4pi t)^{m/2})^{-1} * rhs(ba-style bound), t >= 4 delta^2
    delta, m = 0.05, 2
    x = np.array([1.0 + delta, 0.0])
    for t in (0.01, 0.1, 1.0, 5.0):
        rhs = (
            0.005 / t
            - math.exp(-0.25)
            + (2.42 / t) * math.exp(-1 / t)
            - math.exp(-1.21 / t)
        )
        norm = (
            math.pi * delta**2 / (2 * t * (4 * math.pi * t) ** (m / 2))
        )
        v = two_ball_temperature_dt(delta, m, x, t).value
        assert v <= norm * rhs + 1e-12


def test_two_ball_dt_matches_temperature_fd():
    # central difference of the union temperature (free kernel over both balls)
    delta = 0.05
    omega = DisjointUnion([Ball([-1 - delta], delta), Ball([1 + delta], delta)])
    x = [1.0 + delta + 0.01]
    t0 = 0.5

    def u(t):
        return temperature(omega, ONE, x, t, "exact1d").value

    h = t0 / 64
    d = [(u(t0 + h / 2**j) - u(t0 - h / 2**j)) / (2 * h / 2**j) for j in range(3)]
    r1 = [(4 * b - a) / 3 for a, b in zip(d, d[1:])]
    fd = (16 * r1[1] - r1[0]) / 15
    v = two_ball_temperature_dt(delta, 1, x, t0).value
    assert v == pytest.approx(fd, rel=1e-5)


def test_two_ball_dt_requires_point_in_ball():
    with pytest.raises(Exception):
        two_ball_temperature_dt(0.05, 2, [0.0, 0.0], 1.0)


# --- curves and determinism -------------------------------------------------


def test_curve_t_zero_entry_exact():
    curve = heat_content_curve(INTERVAL, ONE, [0.0, 0.1, 0.2], "exact1d")
    assert curve.points[0].value == 1.0


def test_mc_curve_deterministic_across_worker_counts(monkeypatch):
    ts = [0.1, 0.5, 1.0]

    monkeypatch.setenv("HEATLAB_THREADS", "1")
    a = heat_content_curve(DISC, ONE, ts, "mc", samples=200_000, seed=42)
    monkeypatch.setenv("HEATLAB_THREADS", "4")
    b = heat_content_curve(DISC, ONE, ts, "mc", samples=200_000, seed=42)
    assert a.values().tolist() == b.values().tolist()
    assert a.std_errors().tolist() == b.std_errors().tolist()


def test_mc_loss_curve_has_chunk_means():
    curve = heat_loss_curve(DISC, ONE, [0.5, 1.0], "mc", samples=200_000, seed=3)
    assert curve.chunk_means is not None
    assert curve.chunk_means.shape[1] == 2
