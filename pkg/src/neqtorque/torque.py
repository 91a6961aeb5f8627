"""Torques on a small nonreciprocal sphere out of thermal equilibrium.

Conventions: natural units throughout (torques in eV), T is the environment
and T' the body temperature.  Closed forms are paired with quadratures of
their defining frequency integrals, always in the dimensionless variables
x = omega/eta or u = 2 omega a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .kernels import n_over_u3, torque_bracket
from .materials import (
    hat_alpha_metal,
    im_alpha_trace_metal,
    ll_im_alpha_trace_approx,
    ll_re_alpha_xy_approx,
    reflection_from_kappa,
)
from .quadrature import (
    IntegrandSpec,
    QuadratureResult,
    bose,
    integrate_interval,
    integrate_semi_infinite,
)
from .units import (
    Geometry,
    MaterialParams,
    ThermalPair,
    angular_drag_to_SI,
    length_to_natural,
    torque_to_SI,
)

PI2 = math.pi**2


@dataclass(frozen=True)
class TorqueResult:
    """z torque in eV with its vacuum/scattering split (plate configurations)."""

    tau_z: float
    components: dict = field(default_factory=dict)
    abs_error_estimate: float = 0.0
    regime_notes: str = ""

    @property
    def tau_z_SI(self) -> float:
        return torque_to_SI(self.tau_z)


# -- stationary body in vacuum ----------------------------------------------------

def torque_prefactor(params: MaterialParams) -> float:
    """eta omega_c omega_p^2 V / (3 pi^2), in eV."""
    return params.eta * params.omega_c * params.omega_p**2 * params.volume_natural / (3 * PI2)


def vacuum_torque(params: MaterialParams, thermal: ThermalPair) -> float:
    """Closed form (4 eta omega_c omega_p^2 V / 3 pi^2) [I2(beta' eta) - I2(beta eta)]."""
    if thermal.T_env == thermal.T_body:
        return 0.0
    eta = params.eta
    return 4.0 * torque_prefactor(params) * (
        specfun.I2(eta / thermal.T_body) - specfun.I2(eta / thermal.T_env)
    )


def vacuum_torque_quadrature(
    params: MaterialParams, thermal: ThermalPair, rel_tol: float = 1e-10
) -> QuadratureResult:
    """tau_z = (1/3 pi^2) int_0^inf d omega omega^3 hat_alpha [n(beta omega) - n(beta' omega)].

    Evaluated with the model hat_alpha in x = omega/eta.
    """
    eta = params.eta
    z, zp = eta / thermal.T_env, eta / thermal.T_body

    def f(x):
        w = eta * x
        return eta * w**3 * hat_alpha_metal(params, w) * (bose(z * x) - bose(zp * x)) / (3 * PI2)

    spec = IntegrandSpec(f, rate=min(z, zp), scales=(1.0,))
    return integrate_semi_infinite(spec, rel_tol=rel_tol, abs_tol=1e-300)


def torque_bracket_regimes(T_body_over_eta, T_env_over_eta: float) -> dict:
    """I2(beta' eta) - I2(beta eta) exactly and with I2(beta' eta) expanded.

    The environment term is always exact.  Returns arrays keyed by
    ``exact``, ``high_T`` and ``low_T``.
    """
    tp = np.atleast_1d(np.asarray(T_body_over_eta, dtype=float))
    env = specfun.I2(1.0 / T_env_over_eta)
    exact = np.array([specfun.I2(1 / t) - env for t in tp])
    high = np.array([specfun.I2_high_T(1 / t) - env for t in tp])
    low = np.array([specfun.I2_low_T(1 / t) - env for t in tp])
    return {"exact": exact, "high_T": high, "low_T": low}


# -- rotating body -------------------------------------------------------------------

def tau1_prime(params: MaterialParams, thermal: ThermalPair) -> float:
    """Linear drag coefficient -d tau_z / d Omega at Omega = 0 (dimensionless).

    Closed form (2 omega_p^2 eta V / 3 pi^2)[3 I1(beta' eta) - I1(beta eta) - 2 I2(beta eta)].
    """
    eta = params.eta
    z, zp = eta / thermal.T_env, eta / thermal.T_body
    pref = 2.0 * params.omega_p**2 * eta * params.volume_natural / (3 * PI2)
    return pref * (3.0 * specfun.I1(zp) - specfun.I1(z) - 2.0 * specfun.I2(z))


def tau1_prime_digamma(params: MaterialParams, thermal: ThermalPair) -> float:
    """The same coefficient written directly with psi and psi' (textbook form)."""
    eta, T, Tp = params.eta, thermal.T_env, thermal.T_body
    w, wp = eta / (2 * math.pi * T), eta / (2 * math.pi * Tp)
    bracket = (
        math.pi / eta * (2 * T - 3 * Tp)
        + 3 * math.log(T / Tp)
        - 1
        + 3 * specfun.digamma(w)
        - 3 * specfun.digamma(wp)
        + w * specfun.trigamma(w)
    )
    return params.omega_p**2 * eta * params.volume_natural / (3 * PI2) * bracket


def tau1_prime_quadrature(
    params: MaterialParams, thermal: ThermalPair, rel_tol: float = 1e-10
) -> QuadratureResult:
    """(1/3 pi^2) int d omega omega^2 Im(a_xx + a_yy) {3[n' - n] + beta omega n (n + 1)}."""
    eta = params.eta
    z, zp = eta / thermal.T_env, eta / thermal.T_body

    def f(x):
        w = eta * x
        n, n_body = bose(z * x), bose(zp * x)
        brace = 3.0 * (n_body - n) + z * x * n * (n + 1.0)
        return eta * w**2 * im_alpha_trace_metal(params, w) * brace / (3 * PI2)

    spec = IntegrandSpec(f, rate=min(z, zp), scales=(1.0,))
    return integrate_semi_infinite(spec, rel_tol=rel_tol, abs_tol=1e-300)


@dataclass(frozen=True)
class SpinDynamics:
    """tau_z = tau_0 - Omega tau_1'.  Natural-unit inputs, SI-derived outputs.

    ``growing`` marks tau_1' <= 0, where the low-velocity solution grows
    exponentially and terminal quantities are undefined (nan).
    """

    tau_0: float
    tau_1_prime: float
    moment_of_inertia: float
    terminal_omega: float
    relaxation_time: float
    initial_accel: float
    growing: bool = False

    @classmethod
    def from_coefficients(cls, tau_0: float, tau_1_prime: float, moment_of_inertia: float):
        tau0_SI = torque_to_SI(tau_0)
        drag_SI = angular_drag_to_SI(tau_1_prime)
        accel = tau0_SI / moment_of_inertia
        if tau_1_prime <= 0:
            return cls(tau_0, tau_1_prime, moment_of_inertia, math.nan, math.nan, accel, True)
        return cls(
            tau_0,
            tau_1_prime,
            moment_of_inertia,
            terminal_omega=tau0_SI / drag_SI,
            relaxation_time=moment_of_inertia / drag_SI,
            initial_accel=accel,
        )

    @property
    def tau_0_SI(self) -> float:
        return torque_to_SI(self.tau_0)

    @property
    def tau_1_prime_SI(self) -> float:
        return angular_drag_to_SI(self.tau_1_prime)


def rotating_torque_linear(
    params: MaterialParams, thermal: ThermalPair, geometry: Geometry
) -> SpinDynamics:
    """Adiabatic spin dynamics of the metal sphere; inertia taken from ``geometry``."""
    return SpinDynamics.from_coefficients(
        vacuum_torque(params, thermal), tau1_prime(params, thermal), geometry.moment_of_inertia
    )


def terminal_omega_ratio(T_body_over_eta: float, T_env_over_eta: float) -> float:
    """Omega_T / omega_c = f/g, independent of omega_p and V."""
    z, zp = 1.0 / T_env_over_eta, 1.0 / T_body_over_eta
    f = 4.0 / 3.0 * (specfun.I2(zp) - specfun.I2(z))
    g = 2.0 / 3.0 * (3.0 * specfun.I1(zp) - specfun.I1(z) - 2.0 * specfun.I2(z))
    return f / g


def spin_trajectory(dyn: SpinDynamics, t_grid) -> np.ndarray:
    """Omega(t) = Omega_T (1 - exp(-t/t0)) in s^-1, starting from rest."""
    if dyn.growing:
        raise ValueError("tau_1' <= 0: the low-velocity solution grows without bound")
    t = np.asarray(t_grid, dtype=float)
    return dyn.terminal_omega * -np.expm1(-t / dyn.relaxation_time)


def critical_body_temperature(params: MaterialParams, T_env: float, lo_frac=1e-3) -> float:
    """T' < T at which tau_1' changes sign (root of tau_1' in T', bracketed below T)."""

    def g(tp):
        return tau1_prime(params, ThermalPair(T_env, tp))

    lo, hi = lo_frac * T_env, T_env
    if g(lo) * g(hi) > 0:
        raise ValueError("tau_1' has no sign change on (0, T)")
    return brentq(g, lo, hi, xtol=1e-14 * T_env, rtol=1e-13)


# -- above a perfectly conducting plate ------------------------------------------------

def _plate_scales(params: MaterialParams, thermal: ThermalPair, a: float):
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a}")
    a_nat = length_to_natural(a)
    eps = 2.0 * params.eta * a_nat
    b = 1.0 / (2.0 * a_nat * thermal.T_env)
    bp = 1.0 / (2.0 * a_nat * thermal.T_body)
    return a_nat, eps, b, bp


def plate_torque_pc(
    params: MaterialParams, thermal: ThermalPair, a: float, rel_tol: float = 1e-9
) -> TorqueResult:
    """Torque on the sphere a metres above a perfect conductor.

    The total is integrated directly with the bracket 1 - (3/2)N(u)/u^3, so
    the a -> 0 cancellation never happens in floating point; the scattering
    part is integrated on its own and the vacuum part is the closed form.
    """
    a_nat, eps, b, bp = _plate_scales(params, thermal, a)
    pref = 4.0 * torque_prefactor(params)
    vac = vacuum_torque(params, thermal)
    if thermal.T_env == thermal.T_body or params.omega_c == 0:
        return TorqueResult(0.0, {"vacuum": 0.0, "scattering": 0.0})

    def f_total(u):
        return pref * u**3 / (u * u + eps * eps) ** 2 * torque_bracket(u) * (bose(bp * u) - bose(b * u))

    def f_scatt(u):
        return -1.5 * pref * u**3 / (u * u + eps * eps) ** 2 * n_over_u3(u) * (bose(bp * u) - bose(b * u))

    common = dict(rate=min(b, bp), oscillation_period=2 * math.pi, scales=(eps, 1 / b, 1 / bp))
    tot = integrate_semi_infinite(IntegrandSpec(f_total, **common), rel_tol=rel_tol, abs_tol=1e-300)
    sc = integrate_semi_infinite(IntegrandSpec(f_scatt, **common), rel_tol=rel_tol, abs_tol=1e-300)
    return TorqueResult(
        tot.value,
        {"vacuum": vac, "scattering": sc.value},
        abs_error_estimate=tot.abs_error_estimate,
        regime_notes="perfect conductor, point particle",
    )


def plate_torque_slab(
    params: MaterialParams,
    thermal: ThermalPair,
    a: float,
    epsilon_fn,
    rel_tol: float = 1e-7,
) -> TorqueResult:
    """Torque above a half-space with permittivity ``epsilon_fn(omega)``.

    The scattering part is
        (1/2pi) int d omega [n(beta omega) - n(beta' omega)] hat_alpha_xy(omega)
                 int_0^inf k dk/2pi Im[(kappa r_H + omega^2 r_E/kappa) e^{-2 kappa a}],
    with the k integral split at k = omega (propagating s = sqrt(omega^2 - k^2),
    evanescent q = sqrt(k^2 - omega^2)).
    """
    a_nat, eps, b, bp = _plate_scales(params, thermal, a)
    vac = vacuum_torque(params, thermal)
    if thermal.T_env == thermal.T_body or params.omega_c == 0:
        return TorqueResult(vac, {"vacuum": vac, "scattering": 0.0})
    inner_tol = max(rel_tol * 1e-2, 1e-13)
    beta, beta_p = 1.0 / thermal.T_env, 1.0 / thermal.T_body

    def inner(w):
        return slab_wavenumber_integral(w, a_nat, epsilon_fn(w), kind="torque", rel_tol=inner_tol)

    def f(x):
        w_arr = params.eta * np.asarray(x, dtype=float)
        out = np.empty_like(w_arr)
        for idx, w in np.ndenumerate(w_arr):
            out[idx] = inner(w)
        return (
            params.eta * (bose(beta * w_arr) - bose(beta_p * w_arr)) * hat_alpha_metal(params, w_arr) * out / (2 * math.pi)
        )

    z = params.eta * min(beta, beta_p)
    spec = IntegrandSpec(f, rate=z, scales=(1.0, 1.0 / (2 * a_nat * params.eta)))
    sc = integrate_semi_infinite(spec, rel_tol=rel_tol, abs_tol=1e-300, noise=10 * inner_tol)
    return TorqueResult(
        vac + sc.value,
        {"vacuum": vac, "scattering": sc.value},
        abs_error_estimate=sc.abs_error_estimate,
        regime_notes="dielectric half-space, point particle",
    )


def slab_wavenumber_integral(omega: float, a_nat: float, epsilon, kind: str = "torque", rel_tol: float = 1e-11) -> float:
    """Wavenumber integrals of the half-space Green's function at height a.

    ``kind="torque"``: int_0^inf k dk/2pi Im[(kappa r_H + omega^2 r_E/kappa) e^{-2 kappa a}]
    ``kind="force"``:  int_0^inf k^3 dk/2pi Im[r_H e^{-2 kappa a}]
    """
    two_a = 2.0 * a_nat

    def prop(s):
        k = np.sqrt(np.maximum(omega * omega - s * s, 0.0))
        kappa = -1j * s
        r = reflection_from_kappa(epsilon, omega, kappa)
        phase = np.exp(1j * two_a * s)
        if kind == "torque":
            val = (kappa * r.r_H + omega * omega * r.r_E / kappa) * phase
            return s * val.imag / (2 * math.pi)
        return s * k * k * (r.r_H * phase).imag / (2 * math.pi)

    def evan(q):
        k = np.sqrt(q * q + omega * omega)
        r = reflection_from_kappa(epsilon, omega, q)
        damp = np.exp(-two_a * q)
        if kind == "torque":
            val = (q * r.r_H + omega * omega * r.r_E / q) * damp
            return q * val.imag / (2 * math.pi)
        return q * k * k * (r.r_H * damp).imag / (2 * math.pi)

    period = math.pi / a_nat  # of cos(2 a s)
    p = integrate_interval(prop, 0.0, omega, rel_tol=rel_tol, abs_tol=1e-300, max_width=0.5 * period)
    if np.all(np.isinf(epsilon)):
        return p.value
    scale = [abs(omega * math.sqrt(abs(epsilon)))] if np.isfinite(epsilon) else []
    e = integrate_semi_infinite(
        IntegrandSpec(evan, rate=two_a, scales=tuple([omega] + scale)),
        rel_tol=min(max(rel_tol, 1e-12), 1e-2),
        abs_tol=1e-300,
    )
    return p.value + e.value


# -- Lorenz-Lorentz corrected sphere --------------------------------------------------------

def ll_torque_coefficient(params: MaterialParams, T_env: float) -> float:
    """(32/7) pi^4 V omega_c eta T^6 / omega_p^4, the coefficient of 1 - (T'/T)^6 (eV)."""
    return 32.0 / 7.0 * math.pi**4 * params.volume_natural * params.omega_c * params.eta * T_env**6 / params.omega_p**4


def ll_vacuum_torque(params: MaterialParams, thermal: ThermalPair) -> float:
    return ll_torque_coefficient(params, thermal.T_env) * (1.0 - (thermal.T_body / thermal.T_env) ** 6)


def ll_vacuum_torque_quadrature(params: MaterialParams, thermal: ThermalPair, rel_tol: float = 1e-10) -> QuadratureResult:
    """(1/3 pi^2) int d omega omega^3 2 Re alpha_xy [n(beta omega) - n(beta' omega)], omega = T y."""
    T = thermal.T_env
    r = T / thermal.T_body

    def f(y):
        w = T * y
        return T * w**3 * 2.0 * ll_re_alpha_xy_approx(params, w) * (bose(y) - bose(r * y)) / (3 * PI2)

    return integrate_semi_infinite(IntegrandSpec(f, rate=min(1.0, r)), rel_tol=rel_tol, abs_tol=1e-300)


def ll_tau1_prime(params: MaterialParams, thermal: ThermalPair) -> float:
    """(2 pi^2/5)(V eta/omega_p^2) T^4 [1 + 3 (T'/T)^4]; positive for all T, T'."""
    T, Tp = thermal.T_env, thermal.T_body
    return 2.0 * PI2 / 5.0 * params.volume_natural * params.eta / params.omega_p**2 * (T**4 + 3.0 * Tp**4)


def ll_tau1_prime_quadrature(params: MaterialParams, thermal: ThermalPair, rel_tol: float = 1e-10) -> QuadratureResult:
    T = thermal.T_env
    r = T / thermal.T_body

    def f(y):
        w = T * y
        n, n_body = bose(y), bose(r * y)
        brace = 3.0 * (n_body - n) + y * n * (n + 1.0)
        return T * w**2 * ll_im_alpha_trace_approx(params, w) * brace / (3 * PI2)

    return integrate_semi_infinite(IntegrandSpec(f, rate=min(1.0, r)), rel_tol=rel_tol, abs_tol=1e-300)


def ll_terminal_omega(params: MaterialParams, thermal: ThermalPair) -> float:
    """(80/7) pi^2 (omega_c/omega_p^2) T^2 (1 - t^6)/(1 + 3 t^4), t = T'/T, in eV."""
    t = thermal.T_body / thermal.T_env
    return 80.0 / 7.0 * PI2 * params.omega_c / params.omega_p**2 * thermal.T_env**2 * (1 - t**6) / (1 + 3 * t**4)


def ll_spin_dynamics(params: MaterialParams, thermal: ThermalPair, geometry: Geometry) -> SpinDynamics:
    return SpinDynamics.from_coefficients(
        ll_vacuum_torque(params, thermal), ll_tau1_prime(params, thermal), geometry.moment_of_inertia
    )
