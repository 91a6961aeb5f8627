import math

import numpy as np
import pytest

from neqtorque import force
from neqtorque.force import Mechanism
from neqtorque.materials import drude_epsilon
from neqtorque.units import GOLD, ThermalPair, length_to_natural, temperature_to_energy

SMALL = GOLD.material(10e-9, 1e-4)
BIG = GOLD.material(100e-9, 1e-4)
ROOM = ThermalPair.from_kelvin(300.0, 600.0)


def test_vacuum_force_is_zero():
    r = force.vacuum_force(BIG, ROOM)
    assert r.F_x == 0.0 and r.mechanism is Mechanism.VACUUM


@pytest.mark.parametrize("z,zp", [(1.4, 0.7), (0.1, 0.05), (10.0, 3.0), (3.0, 10.0)])
def test_slab_f_closed_form_vs_quadrature(z, zp):
    assert force.slab_f(z, zp) == pytest.approx(force.slab_f_quadrature(z, zp).value, rel=1e-9)


def test_slab_f_sign_and_antisymmetry():
    assert force.slab_f(1.4, 0.7) > 0
    assert force.slab_f(0.7, 1.4) == -force.slab_f(1.4, 0.7)
    assert force.slab_f(1.0, 1.0) == 0.0


def test_slab_f_high_T_limit():
    assert force.slab_f_high_T(1e-3, 5e-4) == pytest.approx(force.slab_f(1e-3, 5e-4), rel=1e-2)


def test_slab_force_scaling():
    a = force.slab_force(BIG, ROOM, 1e-6, 0.035)
    b = force.slab_force(BIG, ROOM, 2e-6, 0.035)
    assert b.F_x == pytest.approx(a.F_x / 16, rel=1e-12)
    c = force.slab_force(BIG, ROOM, 1e-6, 0.07, omega_p_slab=18.0)
    assert c.F_x == pytest.approx(a.F_x * 2 / 4, rel=1e-12)
    with pytest.raises(ValueError):
        force.slab_force_prefactor(BIG, 1e-6, 0.0)


def test_pc_force_vanishes_far_away_and_in_equilibrium():
    near = force.pc_force(SMALL, ROOM, 100e-9).F_x
    far = force.pc_force(SMALL, ROOM, 0.1).F_x
    assert abs(far) < 1e-6 * abs(near)
    assert force.pc_force(SMALL, ThermalPair(0.03, 0.03), 1e-7).F_x == 0.0


def test_pc_force_antisymmetric_in_temperatures():
    a = force.pc_force(SMALL, ROOM, 100e-9).F_x
    b = force.pc_force(SMALL, ROOM.swapped(), 100e-9).F_x
    assert b == pytest.approx(-a, rel=1e-8)


def test_f0_finite_eps_limit():
    assert force.f0_high_T_finite_eps(1e-6, 1.0) == pytest.approx(math.pi / 8, rel=1e-5)
    eps, b = 0.0355, 0.0227
    bp = 1e-4 * min(1 / eps, b)
    lim = force.f0_high_T_finite_eps(eps, bp)
    assert force.f0_integral(eps, b, bp).value == pytest.approx(lim, rel=1e-3)
    # the finite damping keeps the limit below pi/(8 b') by a fixed fraction
    assert lim * bp / (math.pi / 8) == pytest.approx(0.97204, rel=1e-4)


def test_einstein_hopf_constant():
    for x in (0.01, 1.0, 7.0):
        assert force.trace_g_k_moment(x, part="vacuum") == pytest.approx(2 / 3, rel=1e-12)


def test_friction_bracket_from_k_integral():
    from neqtorque.kernels import friction_bracket_2

    for x in (0.01, 1.0, 5.0, 30.0):
        assert force.trace_g_k_moment(x, part="plate") == pytest.approx(-(2 / 3) * (1 - friction_bracket_2(x)), rel=1e-9, abs=1e-14)


def test_friction_positive_and_terminal_velocity():
    dyn = force.pc_friction_linear(SMALL, ROOM, 100e-9, GOLD.geometry(10e-9))
    assert dyn.f1.total > 0 and dyn.f1.doppler > 0
    assert dyn.terminal_velocity_scaled == pytest.approx(dyn.f0 / dyn.f1.total, rel=1e-12)
    v = force.velocity_trajectory(dyn, [0.0, 100 * dyn.damping_time])
    assert v[0] == 0.0 and v[1] == pytest.approx(dyn.terminal_velocity_SI, rel=1e-12)


def test_friction_without_geometry_has_no_time():
    dyn = force.pc_friction_linear(SMALL, ROOM, 100e-9)
    assert math.isnan(dyn.damping_time) and dyn.f1.total > 0


def test_route_from_torque_matches_perfect_conductor():
    # the torque-derived route carries B along y; the closed forms take B along z
    a = 100e-9
    A = force.force_route_from_torque(SMALL, ROOM, a, lambda w: np.inf, rel_tol=1e-10)
    assert A == pytest.approx(-force.pc_force(SMALL, ROOM, a, rel_tol=1e-11).F_x, rel=1e-8)


def test_route_from_torque_tends_to_slab_law_at_short_range():
    eps = lambda w: drude_epsilon(GOLD.omega_p, GOLD.eta, w)
    a = 10e-9
    A = force.force_route_from_torque(BIG, ROOM, a, eps, rel_tol=1e-8)
    S = force.slab_force(BIG, ROOM, a, GOLD.eta).F_x
    assert A / S == pytest.approx(-1.0, rel=2e-2)


@pytest.mark.parametrize("a,Tp", [(50e-9, 450.0), (1e-6, 900.0)])
def test_two_orderings_agree(a, Tp):
    th = ThermalPair.from_kelvin(300.0, Tp)
    eps = lambda w: drude_epsilon(GOLD.omega_p, GOLD.eta, w)
    res = force.force_from_torque_consistency(SMALL, th, a, eps, rel_tol=1e-9)
    assert res.residual < 1e-8
    assert res.route_torque != 0.0


def test_no_field_no_force():
    p = SMALL.with_(omega_c=0.0)
    assert force.pc_force(p, ROOM, 1e-7).F_x == 0.0
    eps = lambda w: drude_epsilon(GOLD.omega_p, GOLD.eta, w)
    assert force.force_route_from_torque(p, ROOM, 1e-7, eps, rel_tol=1e-6) == 0.0


@pytest.mark.parametrize("a,Tp", [(10e-9, 600.0), (100e-9, 75.0), (100e-9, 301.0), (10e-6, 1200.0), (1e-3, 600.0)])
def test_f0_contour_matches_real_axis(a, Tp):
    from neqtorque.torque import _plate_scales

    _, eps, b, bp = _plate_scales(SMALL, ThermalPair.from_kelvin(300.0, Tp), a)
    rot = force.f0_integral(eps, b, bp, rel_tol=1e-10).value
    real = force.f0_integral_real_axis(eps, b, bp, rel_tol=1e-10).value
    assert rot == pytest.approx(real, rel=1e-9)


def test_f0_scales_as_inverse_cube_far_away():
    # eps and 1/b both grow like a; f0 ~ 1/a^3 once a >> thermal wavelength
    r1 = force.pc_force(SMALL, ROOM, 1e-2).f_dimensionless
    r2 = force.pc_force(SMALL, ROOM, 1e-1).f_dimensionless
    assert r2 / r1 == pytest.approx(1e-3, rel=1e-6)
