"""Run configuration, sweep grids and deterministic CSV output."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .units import PRESETS, MaterialPreset, ThermalPair, parse_key_values, preset_with_overrides

# run-level keys a config file may set; anything else is treated as a material override
_RUN_KEYS = {
    "material": str,
    "T_kelvin": float,
    "Tp_kelvin": float,
    "radius": float,
    "separation": float,
    "omega_c": float,
    "nu": float,
    "sweep": str,
    "min": float,
    "max": float,
    "points": int,
    "spacing": str,
    "out": str,
    "jobs": int,
    "tol": float,
}


@dataclass(frozen=True)
class SweepAxis:
    variable: str
    lo: float
    hi: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"a sweep needs at least 2 points, got {self.points}")
        if not self.lo < self.hi:
            raise ValueError(f"sweep bounds must be ordered, got {self.lo} >= {self.hi}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and not self.lo > 0:
            raise ValueError("log spacing needs a positive lower bound")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.logspace(math.log10(self.lo), math.log10(self.hi), self.points)
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI evaluation needs; temperatures in kelvin, lengths in metres."""

    material: str = "gold"
    overrides: dict = field(default_factory=dict)
    T_kelvin: float = 300.0
    Tp_kelvin: float = 600.0
    radius: float = 100e-9
    separation: float = 100e-9
    omega_c: float = 1e-4
    nu: float | None = None
    sweep: SweepAxis | None = None
    out: str | None = None
    jobs: int = 1
    tol: float = 1e-9

    def __post_init__(self):
        if self.material not in PRESETS:
            raise ValueError(f"unknown material preset {self.material!r}; known: {sorted(PRESETS)}")
        for name in ("T_kelvin", "Tp_kelvin", "radius", "separation"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")
        if self.nu is not None and not self.nu > 0:
            raise ValueError("slab damping nu must be positive")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        if not 1e-12 <= self.tol <= 1e-2:
            raise ValueError(f"tolerance must lie in [1e-12, 1e-2], got {self.tol}")
        # fail early on bad material keys
        self.preset

    @property
    def preset(self) -> MaterialPreset:
        return preset_with_overrides(self.material, self.overrides)

    def params(self):
        return self.preset.material(self.radius, self.omega_c)

    def thermal(self) -> ThermalPair:
        return ThermalPair.from_kelvin(self.T_kelvin, self.Tp_kelvin)

    def geometry(self):
        return self.preset.geometry(self.radius, self.separation)

    @property
    def slab_nu(self) -> float:
        return self.preset.eta if self.nu is None else self.nu

    def with_(self, **changes) -> "RunConfig":
        return replace(self, **changes)

    def at(self, value: float) -> "RunConfig":
        """This config with the sweep variable set to ``value``."""
        if self.sweep is None:
            return self
        return replace(self, **{self.sweep.variable: float(value)})


SWEEPABLE = ("T_kelvin", "Tp_kelvin", "radius", "separation", "omega_c", "nu")


def config_from_mapping(values: dict, base: RunConfig | None = None) -> RunConfig:
    """Build a RunConfig from flat string values (config file or CLI)."""
    base = base or RunConfig()
    run, material = {}, dict(base.overrides)
    for key, raw in values.items():
        if raw is None:
            continue
        if key in _RUN_KEYS:
            try:
                run[key] = _RUN_KEYS[key](raw)
            except ValueError as exc:
                raise ValueError(f"bad value for {key}: {raw!r}") from exc
        else:
            material[key] = raw
    sweep = base.sweep
    if "sweep" in run:
        var = run.pop("sweep")
        if var not in SWEEPABLE:
            raise ValueError(f"cannot sweep {var!r}; choose from {SWEEPABLE}")
        lo, hi = run.pop("min", None), run.pop("max", None)
        if lo is None or hi is None:
            raise ValueError("a sweep needs both min and max")
        sweep = SweepAxis(var, lo, hi, run.pop("points", 21), run.pop("spacing", "linear"))
    else:
        for k in ("min", "max", "points", "spacing"):
            run.pop(k, None)
    return replace(base, overrides=material, sweep=sweep, **run)


def load_config(path: str | Path, base: RunConfig | None = None) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc.strerror}") from exc
    return config_from_mapping(parse_key_values(text.splitlines()), base)


# -- evaluation and output ------------------------------------------------------------------

def ordered_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """map() with up to ``jobs`` worker processes; results keep input order."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.12g}"


def render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(text: str, out: str | None, stream) -> None:
    """Write to ``out`` (a path) or to ``stream`` when no path is given."""
    if out is None:
        stream.write(text)
        return
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
