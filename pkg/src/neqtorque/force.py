"""Lateral forces on a nonreciprocal sphere near a plate, and the linear friction.

The sphere's field is along y, so the active nonreciprocal component is
hat_alpha_xz.  Natural units: forces in eV^2, velocities in units of c.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .kernels import force_kernel, friction_bracket_1, friction_bracket_2
from .materials import FieldAxis, hat_alpha_metal, reflection_from_kappa
from .quadrature import (
    Decay,
    IntegrandSpec,
    QuadratureResult,
    bose,
    bose_complex,
    csch2_half,
    integrate_interval,
    integrate_rotated_tail,
    integrate_semi_infinite,
)
from .torque import _plate_scales, slab_wavenumber_integral
from .units import (
    CONSTANTS,
    Geometry,
    MaterialParams,
    ThermalPair,
    force_to_SI,
    length_to_natural,
    linear_drag_to_SI,
)

PI2 = math.pi**2


class Mechanism(enum.Enum):
    VACUUM = "vacuum"
    SLAB_DISSIPATION = "slab_dissipation"
    RADIATION_PC = "radiation_pc"


@dataclass(frozen=True)
class ForceResult:
    F_x: float
    f_dimensionless: float
    mechanism: Mechanism
    prefactor: float = 0.0
    abs_error_estimate: float = 0.0

    @property
    def F_x_SI(self) -> float:
        return force_to_SI(self.F_x)

    @property
    def prefactor_SI(self) -> float:
        return force_to_SI(self.prefactor)


def vacuum_force(params: MaterialParams, thermal: ThermalPair) -> ForceResult:
    """No force at first order in free space: the bulk Green's function enters
    only through its coincidence limit, whose gradient vanishes by symmetry."""
    return ForceResult(0.0, 0.0, Mechanism.VACUUM)


# -- lossy metal slab, low-frequency approximation ---------------------------------------

def slab_force_prefactor(params: MaterialParams, a: float, nu: float, omega_p_slab: float | None = None) -> float:
    """(3V / 4 pi^2 a^4)(nu/eta) omega_c (omega_p/omega_p_slab)^2 in eV^2."""
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a}")
    if not nu > 0:
        raise ValueError("slab damping must be positive")
    wps = params.omega_p if omega_p_slab is None else omega_p_slab
    a_nat = length_to_natural(a)
    return (
        3.0 * params.volume_natural / (4.0 * PI2 * a_nat**4)
        * nu / params.eta * params.omega_c * (params.omega_p / wps) ** 2
    )


def slab_f(beta_eta: float, beta_eta_body: float) -> float:
    """f = -[J(beta eta) - J(beta' eta)]; positive for a hotter body."""
    if beta_eta == beta_eta_body:
        return 0.0
    return -(specfun.J_slab(beta_eta) - specfun.J_slab(beta_eta_body))


def slab_f_high_T(beta_eta: float, beta_eta_body: float) -> float:
    """Both temperatures large: J -> pi/(4 z)."""
    return -(specfun.J_high_T(beta_eta) - specfun.J_high_T(beta_eta_body))


def slab_f_quadrature(beta_eta: float, beta_eta_body: float, rel_tol: float = 1e-11):
    def g(x):
        return -x / (x * x + 1) ** 2 * (bose(beta_eta * x) - bose(beta_eta_body * x))

    return integrate_semi_infinite(
        IntegrandSpec(g, rate=min(beta_eta, beta_eta_body), scales=(1.0,)),
        rel_tol=rel_tol,
        abs_tol=1e-300,
    )


def slab_force(
    params: MaterialParams,
    thermal: ThermalPair,
    a: float,
    nu: float,
    omega_p_slab: float | None = None,
) -> ForceResult:
    """Lateral force above a Drude metal in the regime nu << omega << omega_p, omega << k."""
    pref = slab_force_prefactor(params, a, nu, omega_p_slab)
    f = slab_f(params.eta / thermal.T_env, params.eta / thermal.T_body)
    return ForceResult(pref * f, f, Mechanism.SLAB_DISSIPATION, prefactor=pref)


# -- perfect conductor ---------------------------------------------------------------------

def pc_force_prefactor(params: MaterialParams, a: float) -> float:
    """omega_c eta omega_p^2 V / (2 pi^2 a), eV^2."""
    a_nat = length_to_natural(a)
    return params.omega_c * params.eta * params.omega_p**2 * params.volume_natural / (2 * PI2 * a_nat)


# where the real-axis piece of f0 hands over to the rotated contour
_F0_SPLIT = 2 * math.pi


def f0_integral(eps: float, b: float, bp: float, rel_tol: float = 1e-9):
    """f0 = int_0^inf du N0(u)/(u^2 + eps^2)^2 [n(b u) - n(b' u)].

    Real axis up to 2 pi, then the contour is turned upwards: with
    N0(u) = Im[(2(u^2 - 3) + 6iu) e^{iu}] every singularity of the rest
    sits on Re u = 0, so the tail needs no oscillation tracking even when
    eps and 1/b are huge (large separations).
    """
    if b == bp:
        return QuadratureResult(0.0, 0.0, 0, 0.0)

    def g(u):
        return u**5 * force_kernel(u) / (u * u + eps * eps) ** 2 * (bose(b * u) - bose(bp * u))

    def G(z):
        w = (bose_complex(b * z) - bose_complex(bp * z)) / (z * z + eps * eps) ** 2
        return (2.0 * (z * z - 3.0) + 6j * z) * w * np.exp(1j * z)

    U = _F0_SPLIT
    inner = [s for s in (eps, 1 / b, 1 / bp) if s < U]
    near = integrate_interval(g, 0.0, U, rel_tol=rel_tol, abs_tol=1e-300, breakpoints=inner)
    tail = integrate_rotated_tail(G, U, rel_tol=rel_tol, abs_tol=0.5 * rel_tol * abs(near.value))
    return QuadratureResult(
        near.value + tail.value,
        near.abs_error_estimate + tail.abs_error_estimate,
        near.evaluations + tail.evaluations,
        math.inf,
    )


def f0_integral_real_axis(eps: float, b: float, bp: float, rel_tol: float = 1e-9):
    """Same integral straight along the real axis (oscillatory panels); a check on the contour form."""

    def g(u):
        return u**5 * force_kernel(u) / (u * u + eps * eps) ** 2 * (bose(b * u) - bose(bp * u))

    spec = IntegrandSpec(g, rate=min(b, bp), oscillation_period=2 * math.pi, scales=(eps, 1 / b, 1 / bp))
    return integrate_semi_infinite(spec, rel_tol=rel_tol, abs_tol=1e-300)


def pc_force(params: MaterialParams, thermal: ThermalPair, a: float, rel_tol: float = 1e-9) -> ForceResult:
    """Lateral force a metres above a perfect conductor."""
    _, eps, b, bp = _plate_scales(params, thermal, a)
    pref = pc_force_prefactor(params, a)
    if thermal.T_env == thermal.T_body:
        return ForceResult(0.0, 0.0, Mechanism.RADIATION_PC, prefactor=pref)
    r = f0_integral(eps, b, bp, rel_tol)
    return ForceResult(pref * r.value, r.value, Mechanism.RADIATION_PC, pref, pref * r.abs_error_estimate)


def f0_high_T(b_body: float) -> float:
    """Limit pi/(8 b') of f0 for b' << 1/eps, b."""
    return math.pi / (8.0 * b_body)


def f0_high_T_finite_eps(eps: float, b_body: float, rel_tol: float = 1e-8) -> float:
    """b' -> 0 limit of f0 at fixed eps: K(eps)/b' with K(eps) = -int N0(u) du / (u (u^2 + eps^2)^2).

    K(0) = pi/8; the relative shortfall of the pi/(8 b') form is about 0.8 eps
    for small eps and does not shrink with b'.
    """

    def g(u):
        return -(u**4) * force_kernel(u) / (u * u + eps * eps) ** 2

    spec = IntegrandSpec(g, decay=Decay.POWER_LAW, oscillation_period=2 * math.pi, scales=(eps, 1.0))
    return integrate_semi_infinite(spec, rel_tol=rel_tol, abs_tol=1e-300).value / b_body


# -- friction ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class FrictionParts:
    """f1 = nonequilibrium (b1) part + Einstein-Hopf-like (csch^2) part."""

    nonequilibrium: float
    doppler: float

    @property
    def total(self) -> float:
        return self.nonequilibrium + self.doppler


def f1_integral(eps: float, b: float, bp: float, rel_tol: float = 1e-9) -> FrictionParts:
    """The two pieces of f1(eps, b, b'), integrated separately."""

    def g2(u):
        return u**3 / (u * u + eps * eps) * friction_bracket_1(u) * (bose(bp * u) - bose(b * u))

    def g1(u):
        return u**3 / (u * u + eps * eps) * (b * u) * csch2_half(b * u) * friction_bracket_2(u) / 12.0

    common = dict(oscillation_period=2 * math.pi, scales=(eps, 1 / b, 1 / bp))
    neq = integrate_semi_infinite(IntegrandSpec(g2, rate=min(b, bp), **common), rel_tol=rel_tol, abs_tol=1e-300)
    dop = integrate_semi_infinite(IntegrandSpec(g1, rate=b, **common), rel_tol=rel_tol, abs_tol=1e-300)
    return FrictionParts(neq.value, dop.value)


def friction_prefactor(params: MaterialParams, a: float) -> float:
    """omega_p^2 eta V / (pi^2 (2a)^2), eV^2 per unit velocity."""
    a_nat = length_to_natural(a)
    return params.omega_p**2 * params.eta * params.volume_natural / (PI2 * (2 * a_nat) ** 2)


def trace_g_k_moment(x: float, a_scaled: float = 1.0, part: str = "total", rel_tol: float = 1e-12) -> float:
    """(1/omega^5) int_0^omega k^3 Im tr g dk for a perfect conductor, by quadrature in k.

    With x = 2 omega a.  The vacuum part gives 2/3 for every x; the plate part
    gives -(2/3)(1 - b2(x)).  Used to check the Einstein-Hopf constant and the
    second friction bracket against the elementary k integration.
    """
    # work at omega = 1, a = x/2; substitute k = sin(t) to tame 1/sqrt(1 - k^2)
    a = 0.5 * x

    def vac(t):
        k = np.sin(t)
        return k**3  # k^3 / sqrt(1-k^2) dk = k^3 dt

    def plate(t):
        k, c = np.sin(t), np.cos(t)
        return -(k**3) * c * c * np.cos(2 * a * c)

    out = 0.0
    if part in ("total", "vacuum"):
        out += integrate_interval(vac, 0.0, 0.5 * math.pi, rel_tol=rel_tol).value
    if part in ("total", "plate"):
        out += integrate_interval(plate, 0.0, 0.5 * math.pi, rel_tol=rel_tol, abs_tol=1e-16,
                                  max_width=max(0.05, math.pi / (2 * a + 1))).value
    return out


@dataclass(frozen=True)
class LinearDynamics:
    """m dv/dt = F_0 - v F_1'.  F_0 in eV^2, F_1' in eV^2 per unit c, mass in kg."""

    F_0: float
    F_1_prime: float
    mass: float
    terminal_velocity: float          # units of c
    velocity_scale: float             # 2 omega_c a, units of c
    damping_time: float               # s
    f0: float
    f1: FrictionParts
    defined: bool = True

    @property
    def terminal_velocity_SI(self) -> float:
        return self.terminal_velocity * CONSTANTS.speed_of_light

    @property
    def terminal_velocity_scaled(self) -> float:
        """v_T in units of 2 omega_c a, i.e. f0/f1."""
        return self.terminal_velocity / self.velocity_scale if self.velocity_scale else math.nan


def pc_friction_linear(
    params: MaterialParams,
    thermal: ThermalPair,
    a: float,
    geometry: Geometry | None = None,
    rel_tol: float = 1e-9,
) -> LinearDynamics:
    """Propulsion, friction and the terminal-velocity dynamics above a perfect conductor.

    ``geometry`` supplies the mass; without it the damping time is nan.
    """
    a_nat, eps, b, bp = _plate_scales(params, thermal, a)
    F0 = pc_force(params, thermal, a, rel_tol)
    parts = f1_integral(eps, b, bp, rel_tol)
    F1 = friction_prefactor(params, a) * parts.total
    mass = geometry.mass if geometry is not None else math.nan
    scale = 2.0 * params.omega_c * a_nat
    if parts.total <= 0:
        return LinearDynamics(F0.F_x, F1, mass, math.nan, scale, math.nan, F0.f_dimensionless, parts, False)
    return LinearDynamics(
        F_0=F0.F_x,
        F_1_prime=F1,
        mass=mass,
        terminal_velocity=scale * F0.f_dimensionless / parts.total,
        velocity_scale=scale,
        damping_time=mass / linear_drag_to_SI(F1),
        f0=F0.f_dimensionless,
        f1=parts,
    )


def velocity_trajectory(dyn: LinearDynamics, t_grid) -> np.ndarray:
    """v(t) in m/s from rest."""
    if not dyn.defined:
        raise ValueError("f1 <= 0: no terminal velocity")
    t = np.asarray(t_grid, dtype=float)
    return dyn.terminal_velocity_SI * -np.expm1(-t / dyn.damping_time)


# -- force read off from the torque, two orderings ----------------------------------------------

@dataclass(frozen=True)
class ConsistencyResult:
    route_torque: float      # omega outer, polar k inner
    route_direct: float      # k outer, omega inner, explicit angular integral
    residual: float


def force_route_from_torque(
    params: MaterialParams, thermal: ThermalPair, a: float, epsilon_fn, rel_tol: float = 1e-11
) -> float:
    """F_x = int d omega/2pi [n - n'] hat_alpha_xz int k^3 dk/2pi Im[r_H e^{-2 kappa a}]."""
    a_nat = length_to_natural(a)
    beta, beta_p = 1.0 / thermal.T_env, 1.0 / thermal.T_body
    eta = params.eta

    inner_tol = max(rel_tol * 1e-2, 1e-13)

    def f(x):
        w_arr = eta * np.asarray(x, dtype=float)
        inner = np.empty_like(w_arr)
        for idx, w in np.ndenumerate(w_arr):
            inner[idx] = slab_wavenumber_integral(w, a_nat, epsilon_fn(w), kind="force", rel_tol=inner_tol)
        hat = hat_alpha_metal(params, w_arr, field_axis=FieldAxis.Y)
        return eta * (bose(beta * w_arr) - bose(beta_p * w_arr)) * hat * inner / (2 * math.pi)

    spec = IntegrandSpec(f, rate=eta * min(beta, beta_p), scales=(1.0, 1.0 / (2 * a_nat * eta)))
    return integrate_semi_infinite(spec, rel_tol=rel_tol, abs_tol=1e-300, noise=10 * inner_tol).value


def force_route_direct(
    params: MaterialParams, thermal: ThermalPair, a: float, epsilon_fn, rel_tol: float = 1e-11
) -> float:
    """F_x = 2 int d omega/2pi int d^2k/(2pi)^2 hat_alpha_xz k_x^2 Im(r_H e^{-2 kappa a}) [n - n'].

    Integrates frequency innermost at fixed k, then k, with the angular factor
    int cos^2(theta) d theta done by quadrature.
    """
    a_nat = length_to_natural(a)
    two_a = 2.0 * a_nat
    beta, beta_p = 1.0 / thermal.T_env, 1.0 / thermal.T_body
    T_max = max(thermal.T_env, thermal.T_body)

    def weight(w):
        return hat_alpha_metal(params, w, field_axis=FieldAxis.Y) * (bose(beta * w) - bose(beta_p * w))

    def im_rh_phase(w, kappa):
        eps = np.broadcast_to(np.asarray(epsilon_fn(w)), np.shape(w))
        r = reflection_from_kappa(eps, w, kappa)
        phase = np.exp(-two_a * np.asarray(r.kappa))
        if np.all(np.isinf(eps)):
            return phase.imag
        # r_H = 1 + delta keeps Im accurate when r_H is close to 1
        c = np.asarray(r.kappa_prime) / eps
        delta = -2.0 * c / (np.asarray(r.kappa) + c)
        return phase.imag + (delta * phase).imag

    tol = max(rel_tol * 1e-2, 1e-13)

    def omega_integral(k):
        # omega < k/2 directly, k/2 < omega < k through q = sqrt(k^2 - omega^2)
        lo = integrate_interval(lambda w: weight(w) * im_rh_phase(w, np.sqrt(k * k - w * w)), 0.0, 0.5 * k, rel_tol=tol, abs_tol=1e-300)

        def mid(q):
            w = np.sqrt(k * k - q * q)
            return q / w * weight(w) * im_rh_phase(w, q)

        # r_H swings from +1 to -1 over q ~ k/sqrt|eps| near q = 0
        md = integrate_interval(
            mid, 0.0, math.sqrt(0.75) * k, rel_tol=tol, abs_tol=max(tol * abs(lo.value), 1e-300),
            breakpoints=k * 10.0 ** -np.arange(1, 17),
        )

        def hi(s):
            w = np.sqrt(k * k + s * s)
            return s / w * weight(w) * im_rh_phase(w, -1j * s)

        prop = integrate_semi_infinite(
            IntegrandSpec(hi, rate=1.0 / T_max, oscillation_period=math.pi / a_nat, scales=(k, T_max)),
            rel_tol=min(max(tol, 1e-12), 1e-2),
            # the propagating piece is often far smaller than the evanescent ones
            abs_tol=max(tol * (abs(lo.value) + abs(md.value)), 1e-300),
        )
        return lo.value + md.value + prop.value

    def g(k):
        k_arr = np.asarray(k, dtype=float)
        out = np.empty_like(k_arr)
        for idx, kk in np.ndenumerate(k_arr):
            out[idx] = kk**3 * omega_integral(kk)
        return out

    radial = integrate_semi_infinite(
        IntegrandSpec(g, rate=min(two_a, 1.0 / T_max), scales=(1.0 / two_a, T_max, params.eta)),
        rel_tol=rel_tol,
        abs_tol=1e-300,
        noise=10 * tol,
    ).value
    angular = integrate_interval(lambda t: np.cos(t) ** 2, 0.0, 2 * math.pi, rel_tol=1e-14).value
    return 2.0 * radial * angular / (2 * math.pi) / (2 * math.pi) ** 2


def force_from_torque_consistency(
    params: MaterialParams, thermal: ThermalPair, a: float, epsilon_fn, rel_tol: float = 1e-9
) -> ConsistencyResult:
    """Relative difference between the two orderings of the slab-force integral."""
    A = force_route_from_torque(params, thermal, a, epsilon_fn, rel_tol)
    B = force_route_direct(params, thermal, a, epsilon_fn, rel_tol)
    scale = max(abs(A), abs(B))
    residual = 0.0 if scale == 0 else abs(A - B) / scale
    return ConsistencyResult(A, B, residual)
