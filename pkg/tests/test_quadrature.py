import math

import numpy as np
import pytest
from scipy.special import erf

from heatlab.errors import QuadratureError
from heatlab.quadrature import integrate, integrate_intervals, integrate_vector


def test_polynomial_is_exact():
    v, err, _ = integrate(lambda x: 3 * x**2, 0.0, 2.0, tol=1e-12)
    assert v == pytest.approx(8.0, abs=1e-13)


def test_gaussian_vs_erf():
    v, err, _ = integrate(lambda x: np.exp(-(x**2)), -3.0, 5.0, tol=1e-13)
    exact = 0.5 * math.sqrt(math.pi) * (erf(5.0) + erf(3.0))
    assert v == pytest.approx(exact, abs=1e-13)


def test_sharp_peak_is_refined():
    # width-1e-3 Gaussian inside a unit interval
    s = 1e-3
    v, err, nev = integrate(
        lambda x: np.exp(-((x - 0.3) ** 2) / (2 * s * s)), 0.0, 1.0, tol=1e-12
    )
    exact = math.sqrt(2 * math.pi) * s
    assert v == pytest.approx(exact, rel=1e-10)
    assert nev > 100


def test_budget_exhaustion_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.abs(x - math.pi / 7) ** -0.9, 0.0, 1.0, tol=1e-14, limit=8)


def test_interval_union():
    v, err, _ = integrate_intervals(lambda x: np.ones_like(x), [(0, 1), (2, 4)], tol=1e-12)
    assert v == pytest.approx(3.0, abs=1e-12)


def test_vector_integrand_shares_panels():
    scales = np.array([0.5, 1.0, 2.0])

    def f(x):
        return np.exp(-np.outer(1.0 / scales**2, x**2))

    vals, errs, _ = integrate_vector(f, -10.0, 10.0, tol=1e-12)
    exact = np.sqrt(math.pi) * scales
    assert np.allclose(vals, exact, rtol=1e-12)
    assert (errs <= 1e-12 + 1e-15).all()
