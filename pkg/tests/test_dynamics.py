import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import discrete_cs as dcs
from discrete_cs.dynamics import TimeGrid, l2_distance


@pytest.mark.parametrize("t", [0.0, 0.1, 1.0, 10.0, 100.0])
def test_direct_equals_label(builtin, t):
    omega = 1.7
    spec = dcs.from_config({"kind": builtin.kind.value, "omega": omega})
    for J in (0.05, 0.5, 0.95):
        s = dcs.coefficients(spec, J, 0.4)
        d = dcs.evolve_direct(s, t / omega)
        lab = dcs.evolve_label(s, t / omega)
        assert l2_distance(d, lab) <= 1e-12
        assert d.J == s.J and d.N == s.N and d.tail_bound == s.tail_bound


def test_zero_time_is_identity(builtin):
    s = dcs.coefficients(builtin, 0.5, 1.0)
    assert np.array_equal(dcs.evolve_direct(s, 0.0).coeffs, s.coeffs)
    assert l2_distance(dcs.evolve_label(s, 0.0), s) == 0.0


def test_ground_coefficient_is_stationary(builtin):
    s = dcs.coefficients(builtin, 0.7, 0.0)
    for t in (0.3, 12.0, 1e4):
        assert dcs.evolve_direct(s, t).coeffs[0] == s.coeffs[0]


def test_harmonic_full_period_recurrence(H):
    s = dcs.coefficients(H, 3.0, 0.2)
    back = dcs.evolve_label(s, 2 * math.pi / H.omega)
    assert l2_distance(back, s) <= 1e-12


def test_hydrogen_no_full_period_recurrence(hyd):
    s = dcs.coefficients(hyd, 0.5, 0.2)
    later = dcs.evolve_label(s, 2 * math.pi / hyd.omega)
    # oracle: phases (1 - 1/(n+1)^2) 2 pi differ from multiples of 2 pi for n >= 1
    e = dcs.levels(hyd, s.N)
    expected = np.linalg.norm(s.coeffs * (np.exp(-2j * math.pi * e) - 1))
    assert l2_distance(later, s) == pytest.approx(expected, rel=1e-10)
    assert expected > 0.1


@settings(max_examples=25, deadline=None)
@given(t1=st.floats(-50, 50), t2=st.floats(-50, 50), J=st.floats(0.0, 0.9))
def test_group_property(t1, t2, J):
    s = dcs.coefficients(dcs.hydrogen1d(), J, 0.3)
    two = dcs.evolve_label(dcs.evolve_label(s, t1), t2)
    one = dcs.evolve_label(s, t1 + t2)
    assert l2_distance(two, one) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(t=st.floats(-1e4, 1e4), J=st.floats(0.0, 5.0))
def test_norm_preservation(t, J):
    s = dcs.coefficients(dcs.harmonic(), J, 0.0)
    d = dcs.evolve_direct(s, t)
    # a unit-modulus multiply changes moduli by a few ulps at most
    np.testing.assert_allclose(np.abs(d.coeffs), np.abs(s.coeffs), rtol=4 * np.finfo(float).eps, atol=0)
    assert np.linalg.norm(d.coeffs) == pytest.approx(np.linalg.norm(s.coeffs), rel=1e-15)


def test_autocorrelation_harmonic_closed_form(H):
    J = 1.4
    grid = TimeGrid.uniform(20.0, 400)
    P = dcs.autocorrelation(H, J, grid)
    t = P[:, 0]
    np.testing.assert_allclose(P[:, 1], np.exp(-2 * J * (1 - np.cos(H.omega * t))), atol=1e-10)
    assert P[0, 1] == pytest.approx(1.0, abs=1e-14)
    assert np.all(P[:, 1] <= 1 + 1e-14)


def test_autocorrelation_independent_of_gamma(hyd):
    J = 0.8
    t = np.linspace(0, 30, 61)
    P = dcs.autocorrelation(hyd, J, t)[:, 1]
    for gamma in (2.1, -17.3):
        a = dcs.coefficients(hyd, J, gamma)
        direct = [abs(dcs.overlap(a, dcs.evolve_label(a, ti))) ** 2 for ti in t]
        np.testing.assert_allclose(direct, P, atol=1e-12)


def test_autocorrelation_narrow_hydrogen(hyd):
    P = dcs.autocorrelation(hyd, 0.99, TimeGrid.uniform(10.0 / hyd.omega, 500))
    assert P[:, 1].min() > 0.9


def test_time_grid_validation():
    with pytest.raises(ValueError):
        TimeGrid((0.0, 1.0, 1.0))
    assert len(TimeGrid.uniform(1.0, 10).t_values) == 11
