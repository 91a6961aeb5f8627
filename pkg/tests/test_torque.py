import math

import numpy as np
import pytest

from neqtorque import torque
from neqtorque.materials import drude_epsilon
from neqtorque.units import GOLD, ThermalPair, temperature_to_energy

P = GOLD.material(100e-9, 1e-4)
GEO = GOLD.geometry(100e-9)
ROOM = ThermalPair.from_kelvin(300.0, 600.0)


@pytest.mark.parametrize("beta_eta", [0.05, 0.3, 1.0, 5.0, 50.0])
def test_vacuum_torque_closed_form_vs_quadrature(beta_eta):
    T = P.eta / beta_eta
    th = ThermalPair(T, 1.7 * T)
    closed = torque.vacuum_torque(P, th)
    quad = torque.vacuum_torque_quadrature(P, th, rel_tol=1e-11).value
    assert closed == pytest.approx(quad, rel=1e-8)


def test_vacuum_torque_antisymmetric_and_zero_in_equilibrium():
    a = torque.vacuum_torque(P, ROOM)
    b = torque.vacuum_torque(P, ROOM.swapped())
    assert abs(a + b) <= 1e-12 * abs(a)
    assert torque.vacuum_torque(P, ThermalPair(0.02, 0.02)) == 0.0
    assert a > 0  # hotter body spins along +z for omega_c > 0


def test_vacuum_torque_linear_in_field():
    t1 = torque.vacuum_torque(P, ROOM)
    t2 = torque.vacuum_torque(P.with_(omega_c=3e-4), ROOM)
    assert t2 == pytest.approx(3 * t1, rel=1e-14)
    assert torque.vacuum_torque(P.with_(omega_c=0.0), ROOM) == 0.0


def test_prefactor_value():
    # eta omega_c omega_p^2 V / 3 pi^2, checked by hand in SI
    assert torque.TorqueResult(torque.torque_prefactor(P)).tau_z_SI == pytest.approx(8.363e-25, rel=1e-3)


@pytest.mark.parametrize("Tp_K", [100.0, 300.0, 600.0, 3000.0])
def test_tau1_prime_three_ways(Tp_K):
    th = ThermalPair.from_kelvin(300.0, Tp_K)
    a = torque.tau1_prime(P, th)
    assert torque.tau1_prime_digamma(P, th) == pytest.approx(a, rel=1e-10)
    assert torque.tau1_prime_quadrature(P, th, rel_tol=1e-11).value == pytest.approx(a, rel=1e-8)


def test_terminal_ratio_independent_of_size_and_plasma_frequency():
    r = torque.terminal_omega_ratio(2 / 0.714, 1 / 0.714)
    dyn = torque.rotating_torque_linear(P, ThermalPair(P.eta * 1 / 0.714, P.eta * 2 / 0.714), GEO)
    from neqtorque.units import energy_to_angular_frequency

    assert dyn.terminal_omega == pytest.approx(r * energy_to_angular_frequency(P.omega_c), rel=1e-12)
    other = P.with_(omega_p=5.0, volume=3 * P.volume)
    dyn2 = torque.rotating_torque_linear(other, ThermalPair(P.eta / 0.714, P.eta * 2 / 0.714), GEO)
    assert dyn2.terminal_omega == pytest.approx(dyn.terminal_omega, rel=1e-12)


def test_critical_body_temperature_below_environment():
    T = temperature_to_energy(300.0)
    tc = torque.critical_body_temperature(P, T)
    assert 0 < tc < T
    assert abs(torque.tau1_prime(P, ThermalPair(T, tc))) < 1e-9 * abs(torque.tau1_prime(P, ThermalPair(T, T)))
    dyn = torque.rotating_torque_linear(P, ThermalPair(T, 0.5 * tc), GEO)
    assert dyn.growing and math.isnan(dyn.terminal_omega)
    with pytest.raises(ValueError):
        torque.spin_trajectory(dyn, [0.0, 1.0])


def test_spin_trajectory():
    dyn = torque.rotating_torque_linear(P, ROOM, GEO)
    t = np.array([0.0, dyn.relaxation_time, 50 * dyn.relaxation_time])
    om = torque.spin_trajectory(dyn, t)
    assert om[0] == 0.0
    assert om[1] == pytest.approx(dyn.terminal_omega * (1 - math.exp(-1)))
    assert om[2] == pytest.approx(dyn.terminal_omega, rel=1e-15)
    # initial slope is tau_0 / I
    h = 1e-6 * dyn.relaxation_time
    assert torque.spin_trajectory(dyn, [h])[0] / h == pytest.approx(dyn.initial_accel, rel=1e-5)


def test_bracket_regimes_shape():
    out = torque.torque_bracket_regimes([0.01, 1.0, 100.0], 0.714)
    assert set(out) == {"exact", "high_T", "low_T"}
    # T'/eta = 0.01 is deep in the low-T branch, 100 in the high-T one
    assert out["low_T"][0] == pytest.approx(out["exact"][0], rel=1e-2)
    assert out["high_T"][2] == pytest.approx(out["exact"][2], rel=1e-2)


def test_plate_torque_limits():
    vac = torque.vacuum_torque(P, ROOM)
    near = torque.plate_torque_pc(P, ROOM, 1e-9)
    far = torque.plate_torque_pc(P, ROOM, 1e-2)
    assert abs(near.tau_z) < 1e-4 * vac
    assert far.tau_z == pytest.approx(vac, rel=1e-3)
    mid = torque.plate_torque_pc(P, ROOM, 3e-6)
    assert mid.tau_z == pytest.approx(mid.components["vacuum"] + mid.components["scattering"], rel=1e-8)


def test_plate_torque_equilibrium_and_no_field():
    assert torque.plate_torque_pc(P, ThermalPair(0.03, 0.03), 1e-6).tau_z == 0.0
    assert torque.plate_torque_pc(P.with_(omega_c=0.0), ROOM, 1e-6).tau_z == 0.0


def test_plate_torque_rejects_bad_separation():
    with pytest.raises(ValueError):
        torque.plate_torque_pc(P, ROOM, 0.0)


def test_slab_with_infinite_permittivity_is_perfect_conductor():
    a = 1e-6
    pc = torque.plate_torque_pc(P, ROOM, a).tau_z
    slab = torque.plate_torque_slab(P, ROOM, a, lambda w: np.inf).tau_z
    assert slab == pytest.approx(pc, rel=1e-4)


def test_drude_slab_approaches_perfect_conductor():
    a = 1e-6
    pc = torque.plate_torque_pc(P, ROOM, a).tau_z
    gaps = [
        abs(torque.plate_torque_slab(P, ROOM, a, lambda w, wp=wp: drude_epsilon(wp, 0.035, w)).tau_z / pc - 1)
        for wp in (9.0, 1e2, 1e3)
    ]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2


def test_ll_closed_forms_vs_quadrature():
    T = temperature_to_energy(300.0)
    for tp in (0.2 * T, 0.7 * T, 1.5 * T):
        th = ThermalPair(T, tp)
        assert torque.ll_vacuum_torque(P, th) == pytest.approx(torque.ll_vacuum_torque_quadrature(P, th).value, rel=1e-6)
        assert torque.ll_tau1_prime(P, th) == pytest.approx(torque.ll_tau1_prime_quadrature(P, th).value, rel=1e-6)
        assert torque.ll_tau1_prime(P, th) > 0


def test_ll_terminal_omega_is_ratio():
    T = temperature_to_energy(300.0)
    th = ThermalPair(T, 0.3 * T)
    assert torque.ll_terminal_omega(P, th) == pytest.approx(
        torque.ll_vacuum_torque(P, th) / torque.ll_tau1_prime(P, th), rel=1e-12
    )
