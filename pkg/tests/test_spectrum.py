import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import discrete_cs as dcs
from discrete_cs import spectrum as sp
from discrete_cs.errors import IndexBeyondTable, InvalidSpectrum, LimitUnavailable


def test_level_examples(H, hyd):
    assert dcs.level(H, 5) == 5
    assert dcs.level(hyd, 0) == 0
    assert dcs.level(hyd, 3) == 0.9375


def test_table_overrun():
    spec = dcs.custom_table([0, 0.5, 0.7])
    assert dcs.level(spec, 2) == 0.7
    with pytest.raises(IndexBeyondTable):
        dcs.level(spec, 3)


@pytest.mark.parametrize("make", [dcs.harmonic, dcs.hydrogen1d])
def test_validate_builtins(make):
    assert dcs.validate(make(), 100).valid


def test_validate_reports_tie():
    spec = dcs.custom_table([0, 0.5, 0.5], validate_levels=False)
    res = dcs.validate(spec, 2)
    assert not res.valid and res.first_violation == 2


def test_validate_nonzero_ground_level():
    spec = dcs.custom_table([0.1, 0.5], validate_levels=False)
    res = dcs.validate(spec, 1)
    assert not res.valid and res.first_violation == 0


def test_eager_validation_rejects_degenerate_table():
    with pytest.raises(InvalidSpectrum):
        dcs.custom_table([0, 1, 1, 2])


def test_limits(H, hyd):
    assert dcs.limit_level(H) == math.inf
    assert dcs.limit_level(hyd) == 1.0
    assert hyd.e_star == 1.0
    with pytest.raises(LimitUnavailable):
        dcs.limit_level(dcs.custom_table([0, 1, 2]))


@pytest.mark.parametrize(
    "family,params,expected",
    [
        ("rational", {"cap": 2, "b": 1}, 2.0),  # e_n = 2 - 2/(n+1)
        ("power_law", {"p": 1, "scale": 2}, 2.0),
        ("power_law", {"p": 2.5, "scale": 1}, 1.0),
        ("rational", {"cap": 3, "b": 7}, 3.0),
    ],
)
def test_formula_limit_estimate(family, params, expected):
    spec = dcs.custom_formula(family, **params)
    value, unc = sp.estimate_limit(spec)
    assert abs(value - expected) <= unc
    assert unc < 1e-6


def test_affine_family_is_unbounded():
    assert dcs.limit_level(dcs.custom_formula("affine", slope=0.5)) == math.inf


def test_builtin_invariants_up_to_a_million(H, hyd):
    for spec in (H, hyd):
        # float64 cannot separate hydrogen levels past n ~ 2.6e5
        e = dcs.levels(spec, 10**6, dtype=np.longdouble)
        assert e[0] == 0.0
        assert np.all(np.diff(e) > 0)
    e = dcs.levels(hyd, 10**6)
    n = np.arange(10**6 + 1, dtype=float)
    assert np.all(e < 1)
    np.testing.assert_allclose(1 - e, 1 / (n + 1) ** 2, rtol=0, atol=np.finfo(float).eps)


def test_float64_levels_saturate_near_one(hyd):
    e = dcs.levels(hyd, 10**6)
    assert np.any(np.diff(e) == 0)
    assert dcs.validate(hyd, 10**6).valid  # validation runs in long double


def test_log_levels_against_exact_rationals(hyd):
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 30
    ns = [1, 2, 3, 10, 100, 1000, 10**5]
    got = sp.log_levels(hyd, 10**5)
    for n in ns:
        exact = mpmath.log(mpmath.mpf(n * (n + 2)) / (n + 1) ** 2)
        assert abs(got[n - 1] - float(exact)) <= 2e-16 * abs(float(exact))


def test_dense_power_law_rejected_at_load():
    # (n+1)^-6 falls below long-double resolution well before n = 1e4
    with pytest.raises(InvalidSpectrum):
        dcs.custom_formula("power_law", p=6, scale=1)


def test_config_roundtrip():
    for block in (
        {"kind": "hydrogen1d", "omega": 1.0},
        {"kind": "custom_table", "omega": 2.5, "levels": [0.0, 0.75, 0.9]},
        {"kind": "custom_formula", "omega": 1.0, "family": "power_law", "params": {"p": 2.0, "scale": 1.0}},
    ):
        spec = dcs.from_config(block)
        assert sp.to_config(spec) == block


@pytest.mark.parametrize(
    "block",
    [
        {"kind": "nonsense"},
        {"kind": "harmonic", "omega": -1},
        {"kind": "custom_formula", "family": "power_law", "params": {"p": 1}},
        {"kind": "custom_table"},
        {"omega": 1.0},
    ],
)
def test_bad_config(block):
    with pytest.raises(InvalidSpectrum):
        dcs.from_config(block)


@settings(max_examples=40, deadline=None)
@given(
    family=st.sampled_from(["power_law", "rational"]),
    a=st.floats(0.2, 3.0),
    scale=st.floats(0.1, 10.0),
)
def test_formula_families_are_valid(family, a, scale):
    params = {"p": a, "scale": scale} if family == "power_law" else {"b": a, "cap": scale}
    spec = dcs.custom_formula(family, n_validate=2000, **params)
    e = dcs.levels(spec, 2000)
    assert e[0] == 0 and np.all(np.diff(e) > 0) and np.all(e < scale)
