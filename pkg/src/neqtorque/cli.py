"""``neqtorque`` command-line front end.

Every subcommand writes CSV (one row, or one row per sweep point) except
``report`` and ``constants``, which print text tables.  Exit codes: 0 on
success, 2 for invalid input, 3 when a numerical routine fails, 4 when the
headline report has a ratio outside [0.1, 10].
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from functools import partial

import numpy as np

from . import cooling, force, specfun, torque
from .figures import FIGURES, FigureId, reproduce
from .materials import SingularMatrixError, drude_epsilon
from .quadrature import QuadratureError
from .report import headline_rows, render
from .specfun import ExpansionRegime
from .sweep import RunConfig, config_from_mapping, load_config, ordered_map, render_csv, write_csv
from .units import (
    angular_drag_to_SI,
    constants_table,
    energy_to_angular_frequency,
    force_to_SI,
    inverse_energy_to_seconds,
    linear_drag_to_SI,
    temperature_to_energy,
    torque_to_SI,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_MISMATCH = 0, 2, 3, 4


# -- one row per configuration --------------------------------------------------------------

def _inputs(cfg: RunConfig) -> list:
    row = [("T_kelvin", cfg.T_kelvin), ("Tp_kelvin", cfg.Tp_kelvin)]
    if cfg.sweep is not None and cfg.sweep.variable not in ("T_kelvin", "Tp_kelvin"):
        row.insert(0, (cfg.sweep.variable, getattr(cfg, cfg.sweep.variable)))
    return row


def row_torque_vacuum(cfg: RunConfig) -> list:
    p, th = cfg.params(), cfg.thermal()
    tau = torque.vacuum_torque(p, th)
    bracket = tau / (4.0 * torque.torque_prefactor(p)) if p.omega_c else 0.0
    return _inputs(cfg) + [
        ("tau_z_Nm", torque_to_SI(tau)),
        ("prefactor_Nm", torque_to_SI(torque.torque_prefactor(p))),
        ("I2_bracket", bracket),
    ]


def row_torque_rotating(cfg: RunConfig) -> list:
    dyn = torque.rotating_torque_linear(cfg.params(), cfg.thermal(), cfg.geometry())
    return _inputs(cfg) + [
        ("tau0_Nm", dyn.tau_0_SI),
        ("tau1_prime_Nms", dyn.tau_1_prime_SI),
        ("terminal_omega_per_s", dyn.terminal_omega),
        ("relaxation_time_s", dyn.relaxation_time),
        ("initial_accel_per_s2", dyn.initial_accel),
        ("growing", dyn.growing),
    ]


def _plate_row(cfg: RunConfig, res) -> list:
    return _inputs(cfg) + [
        ("separation_m", cfg.separation),
        ("tau_total_Nm", torque_to_SI(res.tau_z)),
        ("tau_vacuum_Nm", torque_to_SI(res.components["vacuum"])),
        ("tau_scattering_Nm", torque_to_SI(res.components["scattering"])),
    ]


def row_torque_plate_pc(cfg: RunConfig) -> list:
    return _plate_row(cfg, torque.plate_torque_pc(cfg.params(), cfg.thermal(), cfg.separation, cfg.tol))


def _drude(cfg: RunConfig):
    return partial(drude_epsilon, cfg.preset.omega_p, cfg.slab_nu)


def row_torque_plate_slab(cfg: RunConfig) -> list:
    res = torque.plate_torque_slab(cfg.params(), cfg.thermal(), cfg.separation, _drude(cfg), max(cfg.tol, 1e-9))
    return _plate_row(cfg, res)


def row_torque_ll(cfg: RunConfig) -> list:
    p, th = cfg.params(), cfg.thermal()
    dyn = torque.ll_spin_dynamics(p, th, cfg.geometry())
    return _inputs(cfg) + [
        ("tau_z_Nm", torque_to_SI(torque.ll_vacuum_torque(p, th))),
        ("coefficient_Nm", torque_to_SI(torque.ll_torque_coefficient(p, th.T_env))),
        ("tau1_prime_Nms", angular_drag_to_SI(torque.ll_tau1_prime(p, th))),
        ("terminal_omega_per_s", energy_to_angular_frequency(torque.ll_terminal_omega(p, th))),
        ("relaxation_time_s", dyn.relaxation_time),
        ("initial_accel_per_s2", dyn.initial_accel),
    ]


def row_force_vacuum(cfg: RunConfig) -> list:
    return _inputs(cfg) + [("F_x_N", force.vacuum_force(cfg.params(), cfg.thermal()).F_x_SI)]


def _force_row(cfg: RunConfig, res) -> list:
    return _inputs(cfg) + [
        ("separation_m", cfg.separation),
        ("f", res.f_dimensionless),
        ("F_x_N", res.F_x_SI),
        ("prefactor_N", res.prefactor_SI),
    ]


def row_force_slab(cfg: RunConfig) -> list:
    return _force_row(cfg, force.slab_force(cfg.params(), cfg.thermal(), cfg.separation, cfg.slab_nu))


def row_force_pc(cfg: RunConfig) -> list:
    return _force_row(cfg, force.pc_force(cfg.params(), cfg.thermal(), cfg.separation, cfg.tol))


def row_force_terminal(cfg: RunConfig) -> list:
    dyn = force.pc_friction_linear(cfg.params(), cfg.thermal(), cfg.separation, cfg.geometry(), cfg.tol)
    return _inputs(cfg) + [
        ("separation_m", cfg.separation),
        ("f0", dyn.f0),
        ("f1_nonequilibrium", dyn.f1.nonequilibrium),
        ("f1_doppler", dyn.f1.doppler),
        ("f1", dyn.f1.total),
        ("F0_N", force_to_SI(dyn.F_0)),
        ("F1_prime_Ns_per_m", linear_drag_to_SI(dyn.F_1_prime)),
        ("vT_m_per_s", dyn.terminal_velocity_SI),
        ("vT_over_2wca", dyn.terminal_velocity_scaled),
        ("damping_time_s", dyn.damping_time),
    ]


def row_force_consistency(cfg: RunConfig) -> list:
    res = force.force_from_torque_consistency(
        cfg.params(), cfg.thermal(), cfg.separation, _drude(cfg), max(cfg.tol, 1e-10)
    )
    return _inputs(cfg) + [
        ("separation_m", cfg.separation),
        ("route_torque_N", force_to_SI(res.route_torque)),
        ("route_direct_N", force_to_SI(res.route_direct)),
        ("residual", res.residual),
    ]


ROWS = {
    ("torque", "vacuum"): row_torque_vacuum,
    ("torque", "rotating"): row_torque_rotating,
    ("torque", "plate-pc"): row_torque_plate_pc,
    ("torque", "plate-slab"): row_torque_plate_slab,
    ("torque", "ll"): row_torque_ll,
    ("force", "vacuum"): row_force_vacuum,
    ("force", "slab"): row_force_slab,
    ("force", "pc"): row_force_pc,
    ("force", "terminal"): row_force_terminal,
    ("force", "consistency"): row_force_consistency,
}


def _run_row(key, cfg):
    return ROWS[key](cfg)


def sweep_csv(key, cfg: RunConfig) -> str:
    cfgs = [cfg] if cfg.sweep is None else [cfg.at(v) for v in cfg.sweep.grid()]
    rows = ordered_map(partial(_run_row, key), cfgs, cfg.jobs)
    header = [name for name, _ in rows[0]]
    return render_csv(header, [[v for _, v in r] for r in rows])


# -- argument parsing -----------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run options")
    g.add_argument("--config", help="key=value file; flags given here override it")
    g.add_argument("--out", help="write CSV here instead of stdout")
    g.add_argument("--jobs", type=int, help="worker processes for sweeps (default 1)")
    g.add_argument("--tol", type=float, help="relative quadrature tolerance (default 1e-9)")
    m = p.add_argument_group("model")
    m.add_argument("--material", help="material preset (default gold)")
    m.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a preset field, e.g. --set eta=0.05 (repeatable)")
    m.add_argument("--T-kelvin", dest="T_kelvin", type=float, help="environment temperature T (K)")
    m.add_argument("--Tp-kelvin", dest="Tp_kelvin", type=float, help="body temperature T' (K)")
    m.add_argument("--Tp-over-eta", dest="Tp_over_eta", type=float, help="body temperature as T'/eta")
    m.add_argument("--radius", type=float, help="sphere radius (m)")
    m.add_argument("--separation", "-a", type=float, help="height above the plate (m)")
    m.add_argument("--omega-c", dest="omega_c", type=float, help="cyclotron energy (eV)")
    m.add_argument("--nu", type=float, help="slab Drude damping (eV, default eta)")
    s = p.add_argument_group("sweep")
    s.add_argument("--sweep", help="variable to sweep: T_kelvin, Tp_kelvin, radius, separation, omega_c, nu")
    s.add_argument("--min", type=float)
    s.add_argument("--max", type=float)
    s.add_argument("--points", type=int)
    s.add_argument("--log", action="store_true", help="log-spaced sweep")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="neqtorque",
        description="Torques, forces and cooling of a nonreciprocal nanoparticle out of thermal equilibrium.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("specfun", parents=[common], help="I1, I2 and J at given beta*eta")
    sp.add_argument("--beta-eta", dest="beta_eta", type=float, nargs="+", default=[0.01, 0.1, 1.0, 10.0, 100.0])
    sp.add_argument("--regime", choices=["auto", "exact", "high", "low"], default="exact",
                    help="branch for I1/I2 (auto picks the crossover branch)")

    tq = sub.add_parser("torque", parents=[common], help="torque on the sphere",
                        description="Columns: inputs, then SI torques (N m), drag (N m s) and spin dynamics.")
    tq.add_argument("kind", choices=["vacuum", "rotating", "plate", "ll"])
    plate = tq.add_mutually_exclusive_group()
    plate.add_argument("--pc", action="store_true", help="perfectly conducting plate (default)")
    plate.add_argument("--slab", action="store_true", help="Drude half-space with --nu damping")

    fc = sub.add_parser("force", parents=[common], help="lateral force on the sphere",
                        description="Columns: inputs, dimensionless f, SI force (N) and prefactor (N).")
    fc.add_argument("kind", choices=["vacuum", "slab", "pc", "terminal", "consistency"])

    co = sub.add_parser("cooling", parents=[common], help="radiative cooling times")
    co.add_argument("kind", choices=["time", "scales"])
    co.add_argument("--T", dest="cool_T", type=float, default=300.0, help="environment (K)")
    co.add_argument("--Tp0", type=float, help="starting body temperature (K); omit for T'0 -> infinity")
    co.add_argument("--Tp1", type=float, help="final body temperature (K)")
    co.add_argument("--regime", choices=["high", "low"], default="high")
    co.add_argument("--T-low", dest="T_low", type=float, default=1.0, help="low environment for 'scales' (K)")

    rp = sub.add_parser("reproduce", parents=[common], help="CSV sweep for one figure")
    rp.add_argument("figure", help=", ".join(f.value for f in FigureId))

    sub.add_parser("report", parents=[common], help="headline numbers vs their expected magnitudes")
    sub.add_parser("constants", parents=[common], help="physical constants and preset values")
    return parser


def config_from_args(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    values = {
        k: getattr(args, k)
        for k in ("material", "T_kelvin", "Tp_kelvin", "radius", "separation", "omega_c", "nu", "jobs", "tol",
                  "out", "min", "max", "points")
    }
    if args.sweep:
        values["sweep"] = args.sweep
        values["spacing"] = "log" if args.log else "linear"
    if args.Tp_over_eta is not None:
        eta = cfg.preset.eta
        values["Tp_kelvin"] = args.Tp_over_eta * eta / temperature_to_energy(1.0)
    for item in args.set:
        if "=" not in item:
            raise ValueError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        values[k.strip().replace("-", "_")] = v.strip()
    return config_from_mapping(values, cfg)


# -- subcommands -----------------------------------------------------------------------------------

def _specfun_csv(args) -> str:
    regime = {
        "exact": ExpansionRegime.EXACT,
        "high": ExpansionRegime.HIGH_TEMPERATURE,
        "low": ExpansionRegime.LOW_TEMPERATURE,
        "auto": None,
    }[args.regime]
    rows = []
    for z in args.beta_eta:
        i1 = specfun.evaluate("I1", z, regime)
        i2 = specfun.evaluate("I2", z, regime)
        rows.append((z, i1.value, i2.value, specfun.J_slab(z), i1.regime.value))
    return render_csv(("beta_eta", "I1", "I2", "J", "regime"), rows)


def _cooling_text(args, cfg: RunConfig) -> str:
    preset = cfg.preset
    if args.kind == "scales":
        T = temperature_to_energy(args.cool_T)
        Tl = temperature_to_energy(args.T_low)
        t0 = inverse_energy_to_seconds(cooling.t0_high(preset, T))
        tt = inverse_energy_to_seconds(cooling.t0_low(preset, Tl))
        return render_csv(
            ("T_kelvin", "T_low_kelvin", "t0_s", "t0_tilde_s", "ratio", "ratio_closed_form"),
            [(args.cool_T, args.T_low, t0, tt, tt / t0,
              cooling.scale_ratio(Tl, T, preset.debye_theta))],
        )
    if args.Tp1 is None:
        raise ValueError("cooling time needs --Tp1")
    regime = ExpansionRegime.HIGH_TEMPERATURE if args.regime == "high" else ExpansionRegime.LOW_TEMPERATURE
    T = temperature_to_energy(args.cool_T)
    if args.Tp0 is None:
        integral = cooling.cool_from_hot(args.Tp1 / args.cool_T, regime)
        scale = cooling.t0_high(preset, T) if args.regime == "high" else cooling.t0_low(preset, T)
        t0 = inverse_energy_to_seconds(scale)
        row = (args.cool_T, float("inf"), args.Tp1, args.regime, integral, t0, integral * t0)
    else:
        spec = cooling.CoolingSpec(T, temperature_to_energy(args.Tp0), temperature_to_energy(args.Tp1),
                                   preset.debye_theta, regime)
        fn = cooling.cooling_time_highT if args.regime == "high" else cooling.cooling_time_lowT
        res = fn(spec, preset)
        row = (args.cool_T, args.Tp0, args.Tp1, args.regime, res.dimensionless_integral, res.scale_t0, res.time_seconds)
    return render_csv(("T_kelvin", "Tp0_kelvin", "Tp1_kelvin", "regime", "integral", "scale_s", "time_s"), [row])


def _reproduce_text(args, cfg: RunConfig) -> str:
    spec = FIGURES[FigureId.parse(args.figure)]
    if args.min is not None or args.max is not None or args.points is not None or args.log:
        spec = spec.with_axis(args.min, args.max, args.points, "log" if args.log else None)
    return reproduce(spec, cfg.tol, cfg.jobs)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        # argparse prints usage and --help itself; keep it on the caller's streams
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        if args.command == "constants":
            stdout.write(constants_table())
            return EXIT_OK
        if args.command == "report":
            rows = headline_rows(cfg.preset)
            stdout.write(render(rows))
            return EXIT_OK if all(r.ok for r in rows) else EXIT_MISMATCH
        if args.command == "specfun":
            text = _specfun_csv(args)
        elif args.command == "cooling":
            text = _cooling_text(args, cfg)
        elif args.command == "reproduce":
            text = _reproduce_text(args, cfg)
        else:
            kind = args.kind
            if args.command == "torque" and kind == "plate":
                kind = "plate-slab" if args.slab else "plate-pc"
            text = sweep_csv((args.command, kind), cfg)
        write_csv(text, cfg.out, stdout)
        return EXIT_OK
    except (QuadratureError, SingularMatrixError, FloatingPointError, ArithmeticError) as exc:
        stderr.write(f"neqtorque: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (ValueError, KeyError, OSError) as exc:
        stderr.write(f"neqtorque: {exc}\n")
        return EXIT_INVALID


def main(argv=None) -> None:
    np.seterr(over="ignore", under="ignore")
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
