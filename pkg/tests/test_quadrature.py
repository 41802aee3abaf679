import math

import numpy as np
import pytest

from discrete_cs.errors import QuadratureNotConverged
from discrete_cs.quadrature import QuadraturePolicy, composite_gauss, integrate, integrate_semi_infinite


def test_polynomial_exact():
    val, err = integrate(lambda x: x**5 - 3 * x, 0.0, 2.0)
    assert val == pytest.approx(64 / 6 - 6, rel=1e-14)
    assert err < 1e-12


def test_reversed_limits_flip_sign():
    a, _ = integrate(np.sin, 0.0, 1.0)
    b, _ = integrate(np.sin, 1.0, 0.0)
    assert a == pytest.approx(1 - math.cos(1.0), rel=1e-14)
    assert b == -a


def test_sharp_peak_with_breakpoint():
    f = lambda x: np.exp(-((x - 0.3) ** 2) / 1e-6)
    val, _ = integrate(f, 0.0, 1.0, breakpoints=(0.3,))
    assert val == pytest.approx(math.sqrt(math.pi * 1e-6), rel=1e-12)


def test_semi_infinite_gamma_integral():
    val, _ = integrate_semi_infinite(lambda x: x**3 * np.exp(-x), 0.0)
    assert val == pytest.approx(6.0, rel=1e-12)


def test_not_converged_is_raised():
    policy = QuadraturePolicy(rel_tol=1e-14, abs_tol=1e-300, max_intervals=3)
    with pytest.raises(QuadratureNotConverged):
        integrate(lambda x: np.abs(np.sin(50 * x)) ** 0.5, 0.0, 3.0, policy)


def test_composite_oscillatory():
    w = 37.0
    val = composite_gauss(lambda x: np.cos(w * x), 0.0, 10.0, panels=200)
    assert val == pytest.approx(math.sin(w * 10.0) / w, abs=1e-14)


def test_policy_rejects_bad_tolerances():
    with pytest.raises(ValueError):
        QuadraturePolicy(rel_tol=0.0)
