import math

import numpy as np
import pytest

import discrete_cs as dcs
from discrete_cs.errors import DegeneratePair
from discrete_cs.unity import bohr_envelope, bohr_offdiagonal_analytic, decay_slope, verify_diagonal


def test_diagonal_harmonic(H):
    err = verify_diagonal(H, dcs.canonical_measure(H), 50)
    assert err.max() <= 1e-10
    assert err[0] <= 1e-14


def test_diagonal_hydrogen(hyd):
    err = verify_diagonal(hyd, dcs.canonical_measure(hyd), 200)
    assert err.max() <= 1e-12


def test_sinc_zero_window(hyd):
    # (e_1 - e_0) Gamma = pi
    gamma = math.pi / 0.75
    val = dcs.bohr_offdiagonal(hyd, 1, 0, 0.5, gamma)
    assert abs(val) <= 1e-14


def test_window_average_matches_envelope(hyd):
    J = 0.5
    pref = bohr_offdiagonal_analytic(hyd, 0, 1, J, 1e-9)  # sinc ~ 1 at tiny window
    for gamma in (3.0, 40.0, 555.0):
        val = dcs.bohr_offdiagonal(hyd, 0, 1, J, gamma)
        assert abs(val - bohr_offdiagonal_analytic(hyd, 0, 1, J, gamma)) <= 1e-8 * pref
        assert abs(val) <= pref / (0.75 * gamma) * (1 + 1e-12)


def test_harmonic_full_circle_annihilates(H):
    for n, m in ((0, 1), (2, 5), (3, 4)):
        assert abs(dcs.bohr_offdiagonal(H, n, m, 1.0, math.pi)) <= 1e-14


@pytest.mark.parametrize("kind", ["harmonic", "hydrogen1d"])
def test_decay_slope(kind):
    spec = dcs.from_config({"kind": kind})
    gammas = [1e2, 1e3, 1e4]
    for n, m in ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3)):
        mags = [bohr_envelope(spec, n, m, 0.5, g) for g in gammas]
        assert decay_slope(gammas, mags) == pytest.approx(-1.0, abs=0.05)
        # doubling the window at least halves the envelope, up to one sample spacing
        assert bohr_envelope(spec, n, m, 0.5, 2e3) <= 0.55 * bohr_envelope(spec, n, m, 0.5, 1e3)


def test_degenerate_pair_rejected():
    spec = dcs.custom_table([0, 1, 1 + 1e-17, 2], validate_levels=False)
    with pytest.raises(DegeneratePair):
        dcs.bohr_offdiagonal(spec, 1, 2, 0.1, 10.0)


def test_resolution_check_harmonic(H):
    rep = dcs.resolution_check(H, dcs.canonical_measure(H), 20, 1e4)
    assert rep.passed
    assert rep.max_diag_error <= 1e-10
    assert rep.max_offdiag <= 1e-3 * rep.C_bound
    assert 0.01 < rep.C_fit < 10


def test_resolution_check_diagonal_independent_of_window(hyd):
    mu = dcs.canonical_measure(hyd)
    a = dcs.resolution_check(hyd, mu, 10, 1e2)
    b = dcs.resolution_check(hyd, mu, 10, 1e4)
    np.testing.assert_array_equal(a.diag_errors, b.diag_errors)
    assert b.max_offdiag < a.max_offdiag


def test_offdiagonal_rate_across_windows(H):
    mu = dcs.canonical_measure(H)
    gammas = np.array([1e2, 1e3, 1e4])
    c = [dcs.resolution_check(H, mu, 6, g).C_bound for g in gammas]
    assert c[0] == pytest.approx(c[-1])
