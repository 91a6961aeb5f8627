import math

import pytest

from neqtorque import cooling
from neqtorque.cooling import CoolingSpec
from neqtorque.force import pc_friction_linear
from neqtorque.specfun import ExpansionRegime
from neqtorque.torque import rotating_torque_linear
from neqtorque.units import GOLD, ThermalPair, inverse_energy_to_seconds, temperature_to_energy

HI, LO = ExpansionRegime.HIGH_TEMPERATURE, ExpansionRegime.LOW_TEMPERATURE
P = GOLD.material(100e-9, 1e-4)
T300 = temperature_to_energy(300.0)


@pytest.mark.parametrize("ratio", [0.3, 0.9, 1.5, 4.0])
def test_power_closed_form_vs_quadrature(ratio):
    th = ThermalPair(T300, ratio * T300)
    assert cooling.radiated_power(P, th) == pytest.approx(cooling.radiated_power_quadrature(P, th).value, rel=1e-8)


def test_power_sign():
    assert cooling.radiated_power(P, ThermalPair(T300, 2 * T300)) < 0  # hot body loses energy
    assert cooling.radiated_power(P, ThermalPair(T300, T300)) == 0.0


@pytest.mark.parametrize("y", [0.01, 0.5, 1.99, 2.0, 7.0, 60.0])
def test_debye_integral_series_vs_quadrature(y):
    assert cooling.debye_integral(y) == pytest.approx(cooling.debye_integral_quadrature(y).value, rel=1e-12)


def test_debye_limits():
    N = 1e6
    theta = GOLD.debye_theta
    assert cooling.debye_heat_capacity(100 * theta, theta, N) == pytest.approx(cooling.debye_high_T(N), rel=1e-4)
    T = theta / 100
    assert cooling.debye_heat_capacity(T, theta, N) == pytest.approx(cooling.debye_low_T(T, theta, N), rel=1e-8)
    assert cooling.debye_heat_capacity(T, theta, N, method="quadrature") == pytest.approx(
        cooling.debye_heat_capacity(T, theta, N), rel=1e-11
    )
    with pytest.raises(ValueError):
        cooling.debye_heat_capacity(T, theta, N, method="guess")


@pytest.mark.parametrize("regime", [HI, LO])
@pytest.mark.parametrize("start,end", [(4.0, 1.1), (1.5, 1.05), (1.2, 1.001), (30.0, 2.5), (3.0, 2.9)])
def test_cooling_integral_vs_quadrature(regime, start, end):
    closed = cooling.cooling_integral(start, end, regime)
    quad = cooling.cooling_integral_quadrature(start, end, regime).value
    assert closed == pytest.approx(quad, rel=1e-10)


@pytest.mark.parametrize("regime", [HI, LO])
def test_cool_from_hot_is_the_infinite_start_limit(regime):
    # the low-T tail beyond u falls only like 1/u^2
    assert cooling.cool_from_hot(1.3, regime) == pytest.approx(cooling.cooling_integral(1e8, 1.3, regime), rel=1e-12)


def test_logarithmic_divergence_near_equilibrium():
    for regime, slope in ((HI, 1 / 6), (LO, 1 / 3)):
        d1, d2 = 1e-6, 1e-7
        gap = cooling.cool_from_hot(1 + d2, regime) - cooling.cool_from_hot(1 + d1, regime)
        assert gap == pytest.approx(slope * math.log(10), rel=1e-5)


def test_monotone_in_end_temperature():
    vals = [cooling.cool_from_hot(u) for u in (1.05, 1.1, 1.5, 2.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_bad_ratios_rejected():
    with pytest.raises(ValueError):
        cooling.cooling_integral(2.0, 1.0, HI)
    with pytest.raises(ValueError):
        cooling.cooling_integral(1.5, 1.6, HI)
    with pytest.raises(ValueError):
        cooling.cooling_integral(2.0, 1.5, ExpansionRegime.EXACT)
    with pytest.raises(ValueError):
        CoolingSpec(T300, 1.2 * T300, 1.5 * T300, GOLD.debye_theta)


@pytest.mark.parametrize("u", [1.1, 2.0, 3.5])
def test_local_rate_matches_integrand(u):
    # dt/dT' = C/|P|, and t = t0 I(u) with u = T'/T
    hi = cooling.heating_rate_ratio(P, GOLD, T300, u * T300, HI)
    assert hi == pytest.approx(cooling.t0_high(GOLD, T300) / T300 / (u**6 - 1), rel=1e-12)
    T1 = temperature_to_energy(1.0)
    lo = cooling.heating_rate_ratio(P, GOLD, T1, u * T1, LO)
    assert lo == pytest.approx(cooling.t0_low(GOLD, T1) / T1 * 2 * u**3 / (u**6 - 1), rel=1e-12)


def test_volume_drops_out():
    small = GOLD.material(10e-9, 1e-4)
    a = cooling.heating_rate_ratio(P, GOLD, T300, 2 * T300, HI)
    b = cooling.heating_rate_ratio(small, GOLD, T300, 2 * T300, HI)
    assert a == pytest.approx(b, rel=1e-12)


def test_scale_ratio_closed_form():
    T1 = temperature_to_energy(1.0)
    r = cooling.t0_low(GOLD, T1) / cooling.t0_high(GOLD, T300)
    assert r == pytest.approx(cooling.scale_ratio(T1, T300, GOLD.debye_theta), rel=1e-12)


def test_cooling_results_in_seconds():
    spec = CoolingSpec(T300, 2 * T300, 1.1 * T300, GOLD.debye_theta)
    res = cooling.cooling_time_highT(spec, GOLD)
    assert res.scale_t0 == pytest.approx(inverse_energy_to_seconds(cooling.t0_high(GOLD, T300)))
    assert res.time_seconds == pytest.approx(res.scale_t0 * cooling.cooling_integral(2.0, 1.1, HI))
    T1 = temperature_to_energy(1.0)
    low = cooling.cooling_time_lowT(CoolingSpec(T1, 2 * T1, 1.1 * T1, GOLD.debye_theta), GOLD)
    assert low.scale_t0 == pytest.approx(inverse_energy_to_seconds(cooling.t0_low(GOLD, T1)))


def test_timescale_ordering_gold():
    # the sphere cools faster than it spins up, and spins up faster than it slides
    room = ThermalPair.from_kelvin(300.0, 600.0)
    t_cool = inverse_energy_to_seconds(cooling.t0_high(GOLD, T300))
    t_spin = rotating_torque_linear(P, room, GOLD.geometry(100e-9)).relaxation_time
    small = GOLD.material(10e-9, 1e-4)
    t_slide = pc_friction_linear(small, room, 100e-9, GOLD.geometry(10e-9)).damping_time
    assert t_cool < t_spin < t_slide
