"""Headline order-of-magnitude numbers for the gold preset."""

from __future__ import annotations

from dataclasses import dataclass

from .cooling import t0_high, t0_low
from .force import friction_prefactor, pc_force_prefactor, pc_friction_linear, slab_force_prefactor
from .torque import (
    ll_spin_dynamics,
    ll_terminal_omega,
    ll_torque_coefficient,
    ll_tau1_prime,
    rotating_torque_linear,
    torque_prefactor,
)
from .units import (
    GOLD,
    MaterialPreset,
    OMEGA_C_ROUNDED,
    ThermalPair,
    angular_drag_to_SI,
    energy_to_angular_frequency,
    force_to_SI,
    inverse_energy_to_seconds,
    length_to_natural,
    temperature_to_energy,
    torque_to_SI,
)

RATIO_BAND = (0.1, 10.0)


@dataclass(frozen=True)
class HeadlineRow:
    label: str
    unit: str
    computed: float
    expected: float

    @property
    def ratio(self) -> float:
        return self.computed / self.expected

    @property
    def ok(self) -> bool:
        return RATIO_BAND[0] <= self.ratio <= RATIO_BAND[1]


def headline_rows(preset: MaterialPreset = GOLD) -> list[HeadlineRow]:
    wc = OMEGA_C_ROUNDED
    room = ThermalPair.from_kelvin(300.0, 600.0)
    T300 = temperature_to_energy(300.0)
    rows = []

    big = preset.material(100e-9, wc)
    rows.append(HeadlineRow("torque prefactor, 100 nm sphere", "N m", torque_to_SI(torque_prefactor(big)), 8e-25))

    spin = rotating_torque_linear(big, room, preset.geometry(100e-9))
    rows.append(HeadlineRow("terminal angular velocity, T'=600 K", "s^-1", spin.terminal_omega, 1e11))
    rows.append(HeadlineRow("spin-up time I/tau1'", "s", spin.relaxation_time, 1e6))
    rows.append(HeadlineRow("initial angular acceleration", "s^-2", spin.initial_accel, 1e5))

    rows.append(HeadlineRow(
        "slab force prefactor, nu=eta, a=1 um", "N",
        force_to_SI(slab_force_prefactor(big, 1e-6, preset.eta)), 5e-21,
    ))
    small = preset.material(10e-9, wc)
    rows.append(HeadlineRow(
        "plate force prefactor, a=100 nm, R=10 nm", "N",
        force_to_SI(pc_force_prefactor(small, 100e-9)), 1.2e-20,
    ))
    rows.append(HeadlineRow("velocity scale 2 omega_c a, a=100 nm", "c", 2 * wc * length_to_natural(100e-9), 1e-4))
    lin = pc_friction_linear(small, room, 100e-9, preset.geometry(10e-9))
    rows.append(HeadlineRow("linear damping time m/F1'", "s", lin.damping_time, 1e6))

    t0 = inverse_energy_to_seconds(t0_high(preset, T300))
    T1 = temperature_to_energy(1.0)
    t0_1K = inverse_energy_to_seconds(t0_low(preset, T1))
    rows.append(HeadlineRow("cooling scale t0, T=300 K", "s", t0, 1e4))
    rows.append(HeadlineRow("cooling scale ratio, 1 K vs 300 K", "1", t0_1K / t0, 1e7))
    rows.append(HeadlineRow("cooling scale at T=1 K", "s", t0_1K, 1e11))

    # Lorenz-Lorentz corrected sphere: coefficients of the temperature brackets
    cold = ThermalPair(T300, T300 * 1e-6)
    rows.append(HeadlineRow("LL torque coefficient, T=300 K", "N m", torque_to_SI(ll_torque_coefficient(big, T300)), 5e-36))
    rows.append(HeadlineRow(
        "LL terminal angular velocity prefactor", "s^-1",
        energy_to_angular_frequency(ll_terminal_omega(big, cold)), 1e8,
    ))
    geo = preset.geometry(100e-9)
    # tau1' at T' -> 0 is the bare coefficient (2 pi^2/5)(V eta/omega_p^2) T^4
    rows.append(HeadlineRow(
        "LL spin-up time", "s", geo.moment_of_inertia / angular_drag_to_SI(ll_tau1_prime(big, cold)), 1e13,
    ))
    ll = ll_spin_dynamics(big, cold, geo)
    rows.append(HeadlineRow("LL initial angular acceleration", "s^-2", ll.initial_accel, 1e-5))
    return rows


def render(rows: list[HeadlineRow]) -> str:
    width = max(len(r.label) for r in rows)
    lines = [f"{'quantity':<{width}}  {'unit':<5}  {'computed':>12}  {'expected':>9}  {'ratio':>8}  status"]
    for r in rows:
        lines.append(
            f"{r.label:<{width}}  {r.unit:<5}  {r.computed:>12.4g}  {r.expected:>9.3g}  {r.ratio:>8.3g}  "
            + ("ok" if r.ok else "MISMATCH")
        )
    return "\n".join(lines) + "\n"
