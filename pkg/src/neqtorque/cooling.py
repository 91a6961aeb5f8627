"""Radiative cooling of a hot sphere: emitted power, Debye heat capacity, cooling times.

Heat capacities are in units of k_B; times come out in eV^-1 and are
converted to seconds at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


from .quadrature import IntegrandSpec, bose, integrate_interval, integrate_semi_infinite
from .specfun import ExpansionRegime, bernoulli_even
from .units import MaterialPreset, MaterialParams, ThermalPair, density_to_natural, inverse_energy_to_seconds

SQRT3 = math.sqrt(3.0)
PI4 = math.pi**4


# -- power ---------------------------------------------------------------------------

def radiated_power(params: MaterialParams, thermal: ThermalPair) -> float:
    """(8 pi^4/7)(V eta/omega_p^2)(T^6 - T'^6) in eV^2, LL polarizability of a metal.

    Positive when the environment is hotter: it is the power absorbed by the body.
    """
    return 8.0 * PI4 / 7.0 * params.volume_natural * params.eta / params.omega_p**2 * (
        thermal.T_env**6 - thermal.T_body**6
    )


def radiated_power_quadrature(params: MaterialParams, thermal: ThermalPair, rel_tol: float = 1e-11):
    """(1/pi^2) int d omega omega^4 Im alpha [n(beta omega) - n(beta' omega)],
    Im alpha = V omega_p^2 omega eta / omega_1^4, omega_1^2 = omega_p^2/3."""
    T, r = thermal.T_env, thermal.T_env / thermal.T_body
    w1_4 = (params.omega_p**2 / 3.0) ** 2
    V = params.volume_natural

    def f(y):
        w = T * y
        im_alpha = V * params.omega_p**2 * w * params.eta / w1_4
        return T * w**4 * im_alpha * (bose(y) - bose(r * y)) / math.pi**2

    return integrate_semi_infinite(IntegrandSpec(f, rate=min(1.0, r)), rel_tol=rel_tol, abs_tol=1e-300)


# -- Debye heat capacity -------------------------------------------------------------------

_N_BERN = 30


def _debye3_series(y: float) -> float:
    """int_0^y x^3/(e^x - 1) dx from the Bernoulli expansion (|y| < 2 pi)."""
    total = y**3 / 3.0 - y**4 / 8.0  # B_0 and B_1 terms
    fact = 1.0
    for k, b in enumerate(bernoulli_even(_N_BERN), 1):
        n = 2 * k
        fact *= (n - 1) * n
        term = b * y ** (n + 3) / (fact * (n + 3))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def _debye3_tail(y: float) -> float:
    """pi^4/15 minus the exponentially small remainder, for y >= 2."""
    rem = 0.0
    for k in range(1, 200):
        e = math.exp(-k * y)
        term = e * (y**3 / k + 3 * y**2 / k**2 + 6 * y / k**3 + 6 / k**4)
        rem += term
        if term < 1e-18 * PI4 / 15:
            break
    return PI4 / 15.0 - rem


def debye_integral(y: float) -> float:
    """int_0^y x^4 e^x/(e^x - 1)^2 dx = -y^4/(e^y - 1) + 4 int_0^y x^3/(e^x - 1) dx."""
    if not y > 0:
        raise ValueError("Theta/T must be positive")
    d3 = _debye3_series(y) if y < 2.0 else _debye3_tail(y)
    return -(y**4) * float(bose(y)) + 4.0 * d3


def debye_integral_quadrature(y: float, rel_tol: float = 1e-12):
    def f(x):
        n = bose(x)
        return x**4 * n * (n + 1.0)  # e^x/(e^x-1)^2 = n(n+1)

    return integrate_interval(f, 0.0, y, rel_tol=rel_tol, abs_tol=1e-300)


def debye_heat_capacity(T: float, theta: float, N_atoms: float, method: str = "series") -> float:
    """C_V / k_B = 9 N (T/Theta)^3 int_0^{Theta/T} x^4 e^x/(e^x-1)^2 dx."""
    if not T > 0:
        raise ValueError("temperature must be positive")
    y = theta / T
    if method == "series":
        integral = debye_integral(y)
    elif method == "quadrature":
        integral = debye_integral_quadrature(y).value
    else:
        raise ValueError(f"unknown method {method!r}")
    return 9.0 * N_atoms * integral / y**3


def debye_high_T(N_atoms: float) -> float:
    return 3.0 * N_atoms


def debye_low_T(T: float, theta: float, N_atoms: float) -> float:
    return 3.0 * N_atoms * 4.0 * PI4 / 5.0 * (T / theta) ** 3


# -- cooling integrals ------------------------------------------------------------------------

def _antideriv6(x: float) -> float:
    """Antiderivative of 1/(x^6 - 1) for x > 1."""
    return (
        math.log(x - 1) / 6
        - math.log(x + 1) / 6
        + math.log(x * x - x + 1) / 12
        - math.log(x * x + x + 1) / 12
        - SQRT3 * math.atan(SQRT3 * (2 * x - 1) / 3) / 6
        - SQRT3 * math.atan(SQRT3 * (2 * x + 1) / 3) / 6
    )


_F6_INF = -SQRT3 * math.pi / 6


def _antideriv3(y: float) -> float:
    """Antiderivative of y/(y^3 - 1) for y > 1."""
    return (
        math.log(y - 1) / 3
        - math.log(y * y + y + 1) / 6
        + SQRT3 * math.atan(SQRT3 * (2 * y + 1) / 3) / 3
    )


_F3_INF = SQRT3 * math.pi / 6


def _tail6(u: float) -> float:
    """int_u^inf dx/(x^6 - 1)."""
    if u > 2.0:
        return sum(u ** -(6 * k - 1) / (6 * k - 1) for k in range(1, 16))
    return _F6_INF - _antideriv6(u)


def _tail3(y: float) -> float:
    """int_y^inf x dx/(x^3 - 1)."""
    if y > 2.0:
        return sum(y ** (2 - 3 * k) / (3 * k - 2) for k in range(1, 30))
    return _F3_INF - _antideriv3(y)


def _check_ratios(u_end: float, u_start: float = math.inf):
    if not u_end > 1:
        raise ValueError(f"final temperature must exceed the environment's (ratio {u_end} <= 1)")
    if not u_start > u_end:
        raise ValueError("starting temperature must exceed the final one")


def cooling_integral(u_start: float, u_end: float, regime: ExpansionRegime) -> float:
    """Dimensionless cooling time between T'/T = u_start and u_end (> 1), always positive.

    High T: int du/(u^6 - 1).  Low T: int y dy/(y^3 - 1) with y = u^2.
    """
    _check_ratios(u_end, u_start)
    if regime is ExpansionRegime.HIGH_TEMPERATURE:
        tail = _tail6
        a, b = u_end, u_start
    elif regime is ExpansionRegime.LOW_TEMPERATURE:
        tail = _tail3
        a, b = u_end**2, u_start**2
    else:
        raise ValueError("cooling integrals exist only for the high- and low-temperature regimes")
    return tail(a) - (tail(b) if math.isfinite(b) else 0.0)


def cooling_integral_quadrature(u_start: float, u_end: float, regime: ExpansionRegime, rel_tol: float = 1e-12):
    _check_ratios(u_end, u_start)
    if regime is ExpansionRegime.HIGH_TEMPERATURE:
        return integrate_interval(lambda u: 1.0 / (u**6 - 1.0), u_end, u_start, rel_tol=rel_tol,
                                  breakpoints=_geometric(u_end, u_start))
    y0, y1 = u_start**2, u_end**2
    return integrate_interval(lambda y: y / (y**3 - 1.0), y1, y0, rel_tol=rel_tol,
                              breakpoints=_geometric(y1, y0))


def _geometric(lo, hi):
    """Breakpoints clustering towards the near-singular end at 1."""
    d = lo - 1.0
    pts = []
    x = lo + d
    while x < hi:
        pts.append(x)
        d *= 2.0
        x = lo + d
    return pts


def cool_from_hot(u_end: float, regime: ExpansionRegime = ExpansionRegime.HIGH_TEMPERATURE) -> float:
    """Time (units of the regime's scale) to cool from T' = infinity down to u_end T."""
    return cooling_integral(math.inf, u_end, regime)


# -- scales and results ---------------------------------------------------------------------------

def t0_high(preset: MaterialPreset, T: float) -> float:
    """(21/8 pi^4) n omega_p^2 / (eta T^5), in eV^-1."""
    n = density_to_natural(preset.atom_number_density)
    return 21.0 / (8.0 * PI4) * n * preset.omega_p**2 / preset.eta / T**5


def t0_low(preset: MaterialPreset, T: float) -> float:
    """(21/20) n (omega_p^2/eta)(T/Theta)^3 / T^5, in eV^-1."""
    n = density_to_natural(preset.atom_number_density)
    return 21.0 / 20.0 * n * preset.omega_p**2 / preset.eta * (T / preset.debye_theta) ** 3 / T**5


def scale_ratio(T_low: float, T_high: float, theta: float) -> float:
    """Closed form of t0_low(T_low)/t0_high(T_high)."""
    return 2.0 * PI4 / 5.0 * (T_low / theta) ** 3 * (T_high / T_low) ** 5


@dataclass(frozen=True)
class CoolingSpec:
    T_env: float
    T_start: float
    T_end: float
    debye_theta: float
    regime: ExpansionRegime = ExpansionRegime.HIGH_TEMPERATURE

    def __post_init__(self):
        if not self.T_start > self.T_end > self.T_env > 0:
            raise ValueError("need T'_0 > T'_1 > T > 0")
        if not self.debye_theta > 0:
            raise ValueError("Debye temperature must be positive")


@dataclass(frozen=True)
class CoolingResult:
    time_seconds: float
    scale_t0: float            # seconds
    dimensionless_integral: float


def _cooling(spec: CoolingSpec, scale_eV_inv: float) -> CoolingResult:
    integral = cooling_integral(spec.T_start / spec.T_env, spec.T_end / spec.T_env, spec.regime)
    t0 = inverse_energy_to_seconds(scale_eV_inv)
    return CoolingResult(t0 * integral, t0, integral)


def cooling_time_highT(spec: CoolingSpec, preset: MaterialPreset) -> CoolingResult:
    if spec.regime is not ExpansionRegime.HIGH_TEMPERATURE:
        spec = CoolingSpec(spec.T_env, spec.T_start, spec.T_end, spec.debye_theta, ExpansionRegime.HIGH_TEMPERATURE)
    return _cooling(spec, t0_high(preset, spec.T_env))


def cooling_time_lowT(spec: CoolingSpec, preset: MaterialPreset) -> CoolingResult:
    if spec.regime is not ExpansionRegime.LOW_TEMPERATURE:
        spec = CoolingSpec(spec.T_env, spec.T_start, spec.T_end, spec.debye_theta, ExpansionRegime.LOW_TEMPERATURE)
    n = density_to_natural(preset.atom_number_density)
    scale = 21.0 / 20.0 * n * preset.omega_p**2 / preset.eta * (spec.T_env / spec.debye_theta) ** 3 / spec.T_env**5
    return _cooling(spec, scale)


def heating_rate_ratio(params: MaterialParams, preset: MaterialPreset, T_env: float, T_body: float, regime: ExpansionRegime) -> float:
    """C_V(T')/|P(T, T')| in eV^-2: the local d(time)/dT' of the cooling integral."""
    N = density_to_natural(preset.atom_number_density) * params.volume_natural
    if regime is ExpansionRegime.HIGH_TEMPERATURE:
        C = debye_high_T(N)
    else:
        C = debye_low_T(T_body, preset.debye_theta, N)
    return C / abs(radiated_power(params, ThermalPair(T_env, T_body)))


