"""Figure sweeps: one row function per figure, evaluated on a SweepAxis.

Row functions are module level so that sweeps can fan out to worker
processes; each returns one tuple matching ``FigureSpec.columns``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable

from . import specfun
from .cooling import cool_from_hot, cooling_integral
from .force import f0_high_T, f0_integral, f1_integral, pc_force_prefactor, slab_f, slab_f_high_T
from .specfun import ExpansionRegime
from .sweep import SweepAxis, ordered_map, render_csv
from .torque import plate_torque_pc, terminal_omega_ratio, torque_prefactor
from .units import GOLD, ThermalPair, force_to_SI, length_to_natural, temperature_to_energy

# environment temperature for the T/eta sweeps: 0.714 eta, about 290 K for gold
T_OVER_ETA_ROOM = 0.714


class FigureId(enum.Enum):
    FIG1 = "Fig1_torque_vs_Tp"
    FIG2 = "Fig2_terminal_omega"
    FIG3 = "Fig3_torque_vs_a"
    FIG4 = "Fig4_slab_force"
    FIG5 = "Fig5_pc_force"
    FIG5B = "Fig5b_terminal_velocity"
    FIG6 = "Fig6_cooling"
    FIG7 = "Fig7_cool_from_hot"

    @classmethod
    def parse(cls, text: str) -> "FigureId":
        key = text.strip().lower()
        for fid in cls:
            short = fid.value.split("_", 1)[0].lower()
            if key in (fid.value.lower(), short, fid.name.lower()):
                return fid
        raise ValueError(f"unknown figure {text!r}; choose from {[f.value for f in cls]}")


@dataclass(frozen=True)
class FigureSpec:
    id: FigureId
    columns: tuple
    axis: SweepAxis
    row: Callable
    fixed: dict = field(default_factory=dict)

    def with_axis(self, lo=None, hi=None, points=None, spacing=None) -> "FigureSpec":
        ax = self.axis
        axis = SweepAxis(
            ax.variable,
            ax.lo if lo is None else lo,
            ax.hi if hi is None else hi,
            ax.points if points is None else points,
            ax.spacing if spacing is None else spacing,
        )
        return replace(self, axis=axis)


# -- row functions -------------------------------------------------------------------------

def _fig1_row(x, fixed, tol):
    z_env = 1.0 / fixed["T_over_eta"]
    env = specfun.I2(z_env)
    zp = 1.0 / x
    return (
        x,
        4.0 * (specfun.I2(zp) - env),
        4.0 * (specfun.I2_high_T(zp) - env),
        4.0 * (specfun.I2_low_T(zp) - env),
    )


def _fig2_row(x, fixed, tol):
    z, zp = 1.0 / fixed["T_over_eta"], 1.0 / x
    g = 2.0 / 3.0 * (3.0 * specfun.I1(zp) - specfun.I1(z) - 2.0 * specfun.I2(z))
    growing = g <= 0
    ratio = math.nan if growing else terminal_omega_ratio(x, fixed["T_over_eta"])
    return (x, ratio, g, growing)


def _fig3_row(x, fixed, tol):
    params = GOLD.material(fixed["radius"], fixed["omega_c"]).with_(eta=fixed["eta"])
    thermal = ThermalPair.from_kelvin(fixed["T_kelvin"], fixed["Tp_kelvin"])
    res = plate_torque_pc(params, thermal, x * 1e-6, rel_tol=tol)
    p = torque_prefactor(params)
    return (x, res.tau_z / p, res.components["vacuum"] / p, res.components["scattering"] / p)


def _fig4_row(x, fixed, tol):
    z = 1.0 / fixed["T_over_eta"]
    return (x, slab_f(z, 1.0 / x), slab_f_high_T(z, 1.0 / x))


def _pc_scales(x, fixed):
    a_nat = length_to_natural(fixed["separation"])
    T = temperature_to_energy(fixed["T_kelvin"])
    eps = 2.0 * fixed["eta"] * a_nat
    b = 1.0 / (2.0 * a_nat * T)
    return eps, b, b / x


def _fig5_row(x, fixed, tol):
    eps, b, bp = _pc_scales(x, fixed)
    f0 = 0.0 if x == 1.0 else f0_integral(eps, b, bp, tol).value
    params = GOLD.material(fixed["radius"], fixed["omega_c"]).with_(eta=fixed["eta"])
    F = force_to_SI(pc_force_prefactor(params, fixed["separation"]) * f0)
    return (x, f0, F, f0_high_T(bp))


def _fig5b_row(x, fixed, tol):
    eps, b, bp = _pc_scales(x, fixed)
    f0 = 0.0 if x == 1.0 else f0_integral(eps, b, bp, tol).value
    f1 = f1_integral(eps, b, bp, tol)
    v = f0 / f1.total if f1.total > 0 else math.nan
    return (x, bp, f0, f1.nonequilibrium, f1.doppler, f1.total, v)


def _cool(start, end, regime):
    return cooling_integral(start, end, regime) if start > end else math.nan


def _fig6_row(x, fixed, tol):
    hi, lo = ExpansionRegime.HIGH_TEMPERATURE, ExpansionRegime.LOW_TEMPERATURE
    return (x,) + tuple(_cool(x, e, hi) for e in fixed["ends_300K"]) + tuple(
        _cool(x, e, lo) for e in fixed["ends_1K"]
    )


def _fig7_row(x, fixed, tol):
    return (
        x,
        cool_from_hot(x, ExpansionRegime.HIGH_TEMPERATURE),
        cool_from_hot(x, ExpansionRegime.LOW_TEMPERATURE),
    )


def _end_label(e):
    return f"{e:g}".replace(".", "p")


_ENDS_300K = (1.1, 1.5)
_ENDS_1K = (1.05, 1.1, 1.5)

FIGURES = {
    FigureId.FIG1: FigureSpec(
        FigureId.FIG1,
        ("Tp_over_eta", "torque_exact", "torque_highT", "torque_lowT"),
        SweepAxis("Tp_over_eta", 0.01, 100.0, 81, "log"),
        _fig1_row,
        {"T_over_eta": T_OVER_ETA_ROOM},
    ),
    FigureId.FIG2: FigureSpec(
        FigureId.FIG2,
        ("Tp_over_eta", "omega_T_over_omega_c", "friction_bracket", "growing"),
        SweepAxis("Tp_over_eta", 0.05, 100.0, 81, "log"),
        _fig2_row,
        {"T_over_eta": T_OVER_ETA_ROOM},
    ),
    FigureId.FIG3: FigureSpec(
        FigureId.FIG3,
        ("a_um", "torque_total", "torque_vacuum", "torque_scattering"),
        SweepAxis("a_um", 0.1, 1000.0, 121, "log"),
        _fig3_row,
        {"T_kelvin": 300.0, "Tp_kelvin": 600.0, "eta": 0.035, "radius": 100e-9, "omega_c": 1e-4},
    ),
    FigureId.FIG4: FigureSpec(
        FigureId.FIG4,
        ("Tp_over_eta", "f_exact", "f_highT"),
        SweepAxis("Tp_over_eta", 0.05, 5.0, 100, "linear"),
        _fig4_row,
        {"T_over_eta": T_OVER_ETA_ROOM},
    ),
    FigureId.FIG5: FigureSpec(
        FigureId.FIG5,
        ("Tp_over_T", "f0", "F_x_N", "f0_highT"),
        SweepAxis("Tp_over_T", 0.25, 4.0, 76, "linear"),
        _fig5_row,
        {"T_kelvin": 300.0, "eta": 0.035, "separation": 100e-9, "radius": 10e-9, "omega_c": 1e-4},
    ),
    FigureId.FIG5B: FigureSpec(
        FigureId.FIG5B,
        ("Tp_over_T", "b_prime", "f0", "f1_nonequilibrium", "f1_doppler", "f1", "vT_over_2wca"),
        SweepAxis("Tp_over_T", 0.25, 4.0, 76, "linear"),
        _fig5b_row,
        {"T_kelvin": 300.0, "eta": 0.035, "separation": 100e-9},
    ),
    FigureId.FIG6: FigureSpec(
        FigureId.FIG6,
        ("Tp0_over_T",)
        + tuple(f"t_over_t0_T300K_end{_end_label(e)}" for e in _ENDS_300K)
        + tuple(f"t_over_t0tilde_T1K_end{_end_label(e)}" for e in _ENDS_1K),
        SweepAxis("Tp0_over_T", 1.1, 4.0, 59, "linear"),
        _fig6_row,
        {"ends_300K": _ENDS_300K, "ends_1K": _ENDS_1K},
    ),
    FigureId.FIG7: FigureSpec(
        FigureId.FIG7,
        ("T1_over_T", "t_over_t0_highT", "t_over_t0tilde_lowT"),
        SweepAxis("T1_over_T", 1.01, 3.0, 100, "linear"),
        _fig7_row,
        {},
    ),
}


def _evaluate(spec: FigureSpec, tol: float, x: float):
    return spec.row(float(x), spec.fixed, tol)


def figure_rows(spec: FigureSpec, tol: float = 1e-9, jobs: int = 1) -> list:
    return ordered_map(partial(_evaluate, spec, tol), spec.axis.grid(), jobs)


def reproduce(spec: FigureSpec, tol: float = 1e-9, jobs: int = 1) -> str:
    """CSV text for one figure."""
    return render_csv(spec.columns, figure_rows(spec, tol, jobs))
