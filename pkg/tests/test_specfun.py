import math

import mpmath as mp
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from neqtorque import specfun
from neqtorque.specfun import ExpansionRegime

Z_GRID = np.logspace(-3, 3, 20)


def _quad_I1(z):
    """I1 = R(w)/2 with Binet's integral R(w) = int_0^inf [1/2 - 1/t + 1/(e^t - 1)] e^{-wt} dt."""
    mp.mp.dps = 30
    w = mp.mpf(z) / (2 * mp.pi)
    f = lambda t: (mp.mpf(1) / 2 - 1 / t + 1 / mp.expm1(t)) * mp.exp(-w * t)
    return float(mp.quad(f, [0, 1, 10, 10 / w + 10, mp.inf]) / 2)


@pytest.mark.parametrize("z", [1e-3, 0.05, 0.7, 3.0, 40.0, 500.0])
def test_digamma_matches_scipy(z):
    assert specfun.digamma(z) == pytest.approx(sc.digamma(z), rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("z", [1e-3, 0.05, 0.7, 3.0, 40.0, 500.0])
def test_trigamma_matches_scipy(z):
    assert specfun.trigamma(z) == pytest.approx(sc.polygamma(1, z), rel=1e-14)


def test_digamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        specfun.digamma(0.0)
    with pytest.raises(ValueError):
        specfun.trigamma(-1.0)


def test_bernoulli_numbers():
    b = specfun.bernoulli_even(5)
    assert b == pytest.approx([1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66], rel=1e-15)


@pytest.mark.parametrize("z", Z_GRID[::3])
def test_I1_binet_representation(z):
    assert specfun.I1(z) == pytest.approx(_quad_I1(z), rel=1e-12)


@pytest.mark.parametrize("z", [0.01, 1.0, 30.0])
def test_I2_against_mpmath_frequency_integral(z):
    mp.mp.dps = 30
    zz = mp.mpf(z)
    val = mp.quad(lambda x: x**3 / (x * x + 1) ** 2 / mp.expm1(zz * x), [0, 1, 10 / zz + 1, mp.inf])
    assert specfun.I2(z) == pytest.approx(float(val), rel=1e-12)


@pytest.mark.parametrize("z", [0.01, 1.0, 30.0])
def test_J_against_mpmath_frequency_integral(z):
    mp.mp.dps = 30
    zz = mp.mpf(z)
    val = mp.quad(lambda x: x / (x * x + 1) ** 2 / mp.expm1(zz * x), [0, 1, 10 / zz + 1, mp.inf])
    assert specfun.J_slab(z) == pytest.approx(float(val), rel=1e-12)


@pytest.mark.parametrize("z", [1e-3, 1.0, 25.0])
def test_remainder_form_matches_naive_where_naive_is_safe(z):
    assert specfun.I1(z) == pytest.approx(specfun.I1_naive(z), rel=1e-10)
    assert specfun.I2(z) == pytest.approx(specfun.I2_naive(z), rel=1e-9)


def test_large_beta_eta_no_cancellation():
    # low-T expansions are accurate to O(z^-6) far out; the exact form must track them
    z = 1e3
    assert specfun.I2(z) == pytest.approx(specfun.I2_low_T(z), rel=1e-5)
    assert specfun.I1(z) == pytest.approx(specfun.I1_low_T(z), rel=1e-9)


@pytest.mark.parametrize("name", ["I1", "I2"])
def test_expansion_regimes_within_one_percent(name):
    exact = getattr(specfun, name)
    assert getattr(specfun, f"{name}_high_T")(0.01) == pytest.approx(exact(0.01), rel=1e-2)
    assert getattr(specfun, f"{name}_low_T")(100.0) == pytest.approx(exact(100.0), rel=1e-2)


def test_J_high_T_leading_term():
    assert specfun.J_high_T(1e-4) == pytest.approx(specfun.J_slab(1e-4), rel=1e-3)


def test_evaluate_default_regime():
    assert specfun.evaluate("I2", 0.05).regime is ExpansionRegime.HIGH_TEMPERATURE
    assert specfun.evaluate("I2", 50.0).regime is ExpansionRegime.LOW_TEMPERATURE
    ev = specfun.evaluate("I1", 1.0)
    assert ev.regime is ExpansionRegime.EXACT and ev.value == specfun.I1(1.0)
    with pytest.raises(ValueError):
        specfun.evaluate("I3", 1.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(1.01, 3.0))
def test_integrals_decrease_with_beta_eta(z, factor):
    # all three integrands are positive and decreasing in z
    for fn in (specfun.I1, specfun.I2, specfun.J_slab):
        assert fn(z * factor) < fn(z)
        assert fn(z) > 0


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-3, 50.0))
def test_J_relation_to_trigamma(z):
    w = z / (2 * math.pi)
    S = sc.polygamma(1, w) - 1 / w - 1 / (2 * w * w)
    assert specfun.J_slab(z) == pytest.approx(w * S / 4, rel=1e-9)
