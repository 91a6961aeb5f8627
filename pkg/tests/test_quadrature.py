import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neqtorque.quadrature import (
    Decay,
    IntegrandSpec,
    QuadratureError,
    bose,
    csch2_half,
    integrate_interval,
    integrate_semi_infinite,
)


def test_bose_is_finite_at_both_ends():
    x = np.array([1e-300, 1e-12, 1.0, 700.0, 1e5])
    n = bose(x)
    assert np.all(np.isfinite(n))
    assert n[-1] == 0.0
    assert n[1] == pytest.approx(1e12 - 0.5, rel=1e-12)
    assert n[2] == pytest.approx(1 / math.expm1(1.0), rel=1e-15)


def test_csch2_identity():
    x = np.array([1e-3, 0.5, 3.0, 40.0])
    assert csch2_half(x) == pytest.approx(1.0 / np.sinh(x / 2) ** 2, rel=1e-13)
    assert csch2_half(2000.0) == 0.0


def test_interval_polynomial_exact():
    r = integrate_interval(lambda x: 5 * x**4 - 3 * x**2, 0.0, 2.0, rel_tol=1e-14)
    assert r.value == pytest.approx(32 - 8, rel=1e-14)


def test_interval_endpoint_singularity():
    # integrable 1/sqrt singularity
    r = integrate_interval(lambda x: 1 / np.sqrt(x), 0.0, 1.0, rel_tol=1e-10)
    assert r.value == pytest.approx(2.0, rel=1e-9)


def test_interval_reversed_orientation():
    f = lambda x: np.cos(x)
    assert integrate_interval(f, 1.0, 0.0).value == pytest.approx(-math.sin(1.0), rel=1e-12)


@pytest.mark.parametrize("z", [1e-3, 0.1, 1.0, 10.0, 100.0])
def test_bose_moment(z):
    # int_0^inf x^3 n(zx) dx = pi^4 / (15 z^4)
    spec = IntegrandSpec(lambda x: x**3 * bose(z * x), rate=z)
    r = integrate_semi_infinite(spec, rel_tol=1e-12)
    assert r.value == pytest.approx(math.pi**4 / (15 * z**4), rel=1e-11)


def test_oscillatory_with_exponential_decay():
    # int_0^inf sin(k x) e^{-x} dx = k/(1 + k^2)
    k = 40.0
    spec = IntegrandSpec(lambda x: np.sin(k * x) * np.exp(-x), rate=1.0, oscillation_period=2 * math.pi / k)
    r = integrate_semi_infinite(spec, rel_tol=1e-11)
    assert r.value == pytest.approx(k / (1 + k * k), rel=1e-10)


def test_power_law_oscillatory():
    # int_0^inf sin x / (x (1 + x^2)) dx = (pi/2)(1 - 1/e)
    def f(x):
        x = np.asarray(x, dtype=float)
        return np.sinc(x / math.pi) / (1 + x * x)

    spec = IntegrandSpec(f, decay=Decay.POWER_LAW, oscillation_period=2 * math.pi, scales=(1.0,))
    r = integrate_semi_infinite(spec, rel_tol=1e-9)
    assert r.value == pytest.approx(math.pi / 2 * (1 - math.exp(-1)), rel=1e-8)


def test_lorentzian_with_narrow_scale():
    eps = 1e-4
    spec = IntegrandSpec(lambda x: eps / (x * x + eps * eps) * np.exp(-x), rate=1.0, scales=(eps,))
    # int_0^inf eps/(x^2+eps^2) e^{-x} ~ pi/2 for eps -> 0
    r = integrate_semi_infinite(spec, rel_tol=1e-10)
    assert r.value == pytest.approx(math.pi / 2, rel=2e-3)


def test_result_carries_diagnostics():
    r = integrate_semi_infinite(IntegrandSpec(lambda x: np.exp(-x), rate=1.0))
    assert float(r) == pytest.approx(1.0, rel=1e-12)
    assert r.evaluations > 0 and r.truncation_point > 0 and r.abs_error_estimate >= 0


def test_tolerance_bounds_validated():
    spec = IntegrandSpec(lambda x: np.exp(-x), rate=1.0)
    with pytest.raises(ValueError):
        integrate_semi_infinite(spec, rel_tol=1e-15)
    with pytest.raises(ValueError):
        IntegrandSpec(lambda x: x, rate=0.0)


def test_nonconvergence_raises_with_partial():
    with pytest.raises(QuadratureError) as info:
        integrate_interval(lambda x: np.sin(1 / x) / x**2, 1e-8, 1.0, rel_tol=1e-12, max_panels=200)
    assert info.value.partial.evaluations > 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 20.0), st.floats(0.05, 20.0))
def test_gaussian_moment_property(a, scale):
    # int_0^inf x e^{-a x^2} dx = 1/(2a), regardless of where the seed scale is put
    spec = IntegrandSpec(lambda x: x * np.exp(-a * x * x), rate=math.sqrt(a), scales=(scale,))
    assert integrate_semi_infinite(spec, rel_tol=1e-10).value == pytest.approx(1 / (2 * a), rel=1e-9)


@pytest.mark.parametrize("x0", [0.5, 3.0, 40.0])
def test_rotated_tail_sine_over_square(x0):
    # int_x^inf sin(u)/u^2 du = sin(x)/x - Ci(x)
    from scipy.special import sici

    from neqtorque.quadrature import integrate_rotated_tail

    ref = math.sin(x0) / x0 - sici(x0)[1]
    got = integrate_rotated_tail(lambda z: np.exp(1j * z) / z**2, x0, rel_tol=1e-12).value
    assert got == pytest.approx(ref, rel=1e-11)


def test_rotated_tail_needs_positive_start():
    from neqtorque.quadrature import integrate_rotated_tail

    with pytest.raises(ValueError):
        integrate_rotated_tail(lambda z: np.exp(1j * z), 0.0)


def test_bose_complex_matches_real_branch():
    from neqtorque.quadrature import bose_complex

    x = np.array([1e-8, 0.3, 5.0, 600.0])
    assert np.allclose(bose_complex(x).real, bose(x), rtol=1e-14)
    z = 0.2 + 0.7j
    assert bose_complex(z) == pytest.approx(1 / (np.exp(z) - 1), rel=1e-14)
