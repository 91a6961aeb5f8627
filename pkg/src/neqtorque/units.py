"""Natural (Heaviside-Lorentz, hbar = c = 1) units and SI conversions.

Every energy, frequency and temperature inside the package is a plain float in
eV.  Lengths are carried as eV^-1, volumes as eV^-3, torques as eV and forces
as eV^2.  SI only appears at the boundaries, through the helpers below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from scipy import constants as _c


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA values used for every conversion."""

    boltzmann_eV_per_K: float = _c.k / _c.e
    hbar_eV_s: float = _c.hbar / _c.e
    hbar_c_eV_m: float = _c.hbar * _c.c / _c.e
    eV_to_joule: float = _c.e
    speed_of_light: float = _c.c
    electron_mass_eV: float = _c.m_e * _c.c**2 / _c.e
    electron_mass_kg: float = _c.m_e
    # B_c = m^2 / e, i.e. m_e^2 c^2 / (e hbar) in SI
    critical_field_tesla: float = _c.m_e**2 * _c.c**2 / (_c.e * _c.hbar)


CONSTANTS = PhysicalConstants()


# -- temperature ------------------------------------------------------------

def temperature_to_energy(T_kelvin: float) -> float:
    """Return k_B T in eV."""
    if not T_kelvin >= 0:
        raise ValueError(f"temperature must be non-negative, got {T_kelvin} K")
    return T_kelvin * CONSTANTS.boltzmann_eV_per_K


def energy_to_temperature(E: float) -> float:
    """Inverse of :func:`temperature_to_energy` (eV -> K)."""
    return E / CONSTANTS.boltzmann_eV_per_K


# -- frequency / time ---------------------------------------------------------

def energy_to_angular_frequency(E: float) -> float:
    """eV -> s^-1 (angular frequency, E / hbar)."""
    return E / CONSTANTS.hbar_eV_s


def angular_frequency_to_energy(omega: float) -> float:
    return omega * CONSTANTS.hbar_eV_s


def inverse_energy_to_seconds(t: float) -> float:
    """A time in eV^-1 -> seconds."""
    return t * CONSTANTS.hbar_eV_s


def seconds_to_inverse_energy(t: float) -> float:
    return t / CONSTANTS.hbar_eV_s


# -- length -------------------------------------------------------------------

def length_to_natural(meters: float) -> float:
    """m -> eV^-1."""
    return meters / CONSTANTS.hbar_c_eV_m


def natural_to_length(L: float) -> float:
    """eV^-1 -> m."""
    return L * CONSTANTS.hbar_c_eV_m


def energy_to_wavenumber(E: float) -> float:
    """eV -> m^-1."""
    return E / CONSTANTS.hbar_c_eV_m


def wavenumber_to_energy(k: float) -> float:
    """m^-1 -> eV."""
    return k * CONSTANTS.hbar_c_eV_m


def volume_to_natural(m3: float) -> float:
    """m^3 -> eV^-3."""
    return m3 / CONSTANTS.hbar_c_eV_m**3


def density_to_natural(per_m3: float) -> float:
    """m^-3 -> eV^3."""
    return per_m3 * CONSTANTS.hbar_c_eV_m**3


# -- mechanical quantities ----------------------------------------------------

def torque_to_SI(tau: float) -> float:
    """Torque in natural units is an energy: eV -> N m."""
    return tau * CONSTANTS.eV_to_joule


def force_to_SI(F: float) -> float:
    """Force in eV^2 -> N."""
    return F * CONSTANTS.eV_to_joule / CONSTANTS.hbar_c_eV_m


def angular_drag_to_SI(tau1: float) -> float:
    """d(torque)/d(Omega), dimensionless in natural units -> N m s."""
    return tau1 * CONSTANTS.eV_to_joule * CONSTANTS.hbar_eV_s


def linear_drag_to_SI(F1: float) -> float:
    """d(force)/d(velocity) in eV^2 (velocity in units of c) -> N s / m."""
    return force_to_SI(F1) / CONSTANTS.speed_of_light


def power_to_SI(P: float) -> float:
    """Power in eV^2 -> W."""
    return P * CONSTANTS.eV_to_joule / CONSTANTS.hbar_eV_s


def cyclotron_frequency(B_tesla: float) -> float:
    """Electron cyclotron frequency omega_c = m B / B_c, in eV."""
    if not math.isfinite(B_tesla):
        raise ValueError("magnetic field must be finite")
    return CONSTANTS.electron_mass_eV * B_tesla / CONSTANTS.critical_field_tesla


# -- model parameter records ----------------------------------------------------

@dataclass(frozen=True)
class MaterialParams:
    """Parameters of the magnetized-oscillator susceptibility.

    Energies are in eV, ``volume`` in m^3.  ``omega_c`` is signed: its sign
    encodes the field direction along the chosen axis.
    """

    omega_p: float
    eta: float
    omega_0: float = 0.0
    omega_c: float = 0.0
    volume: float = 1.0

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not self.omega_0 >= 0:
            raise ValueError(f"omega_0 must be non-negative, got {self.omega_0}")
        if not self.volume > 0:
            raise ValueError(f"volume must be positive, got {self.volume}")
        if not math.isfinite(self.omega_c):
            raise ValueError("omega_c must be finite")

    @property
    def volume_natural(self) -> float:
        """Volume in eV^-3."""
        return volume_to_natural(self.volume)

    def with_(self, **changes) -> "MaterialParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class ThermalPair:
    """Environment temperature ``T_env`` (T) and body temperature ``T_body`` (T'), eV."""

    T_env: float
    T_body: float

    def __post_init__(self):
        if not (self.T_env > 0 and self.T_body > 0):
            raise ValueError(
                f"temperatures must be strictly positive, got T={self.T_env}, T'={self.T_body}"
            )

    @classmethod
    def from_kelvin(cls, T_env: float, T_body: float) -> "ThermalPair":
        return cls(temperature_to_energy(T_env), temperature_to_energy(T_body))

    @property
    def beta(self) -> float:
        return 1.0 / self.T_env

    @property
    def beta_body(self) -> float:
        return 1.0 / self.T_body

    def swapped(self) -> "ThermalPair":
        return ThermalPair(self.T_body, self.T_env)


@dataclass(frozen=True)
class Geometry:
    """Sphere radius (m), mass density (kg/m^3), atom density (m^-3), height above a plate (m)."""

    radius: float
    mass_density: float
    atom_number_density: float
    separation_a: float | None = None

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not self.mass_density > 0:
            raise ValueError("mass density must be positive")
        if not self.atom_number_density > 0:
            raise ValueError("atom number density must be positive")
        if self.separation_a is not None and not self.separation_a > 0:
            raise ValueError(f"separation must be positive, got {self.separation_a}")

    @property
    def volume(self) -> float:
        return 4.0 / 3.0 * math.pi * self.radius**3

    @property
    def mass(self) -> float:
        return self.mass_density * self.volume

    @property
    def moment_of_inertia(self) -> float:
        """Uniform solid sphere, (2/5) M R^2, in kg m^2."""
        return 0.4 * self.mass * self.radius**2

    @property
    def atom_count(self) -> float:
        return self.atom_number_density * self.volume

    def with_(self, **changes) -> "Geometry":
        return replace(self, **changes)


# -- presets ------------------------------------------------------------------

@dataclass(frozen=True)
class MaterialPreset:
    name: str
    omega_p: float
    eta: float
    mass_density: float
    atom_number_density: float
    debye_theta_K: float
    omega_0: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def debye_theta(self) -> float:
        return temperature_to_energy(self.debye_theta_K)

    def material(self, radius: float, omega_c: float) -> MaterialParams:
        return MaterialParams(
            omega_p=self.omega_p,
            eta=self.eta,
            omega_0=self.omega_0,
            omega_c=omega_c,
            volume=4.0 / 3.0 * math.pi * radius**3,
        )

    def geometry(self, radius: float, separation_a: float | None = None) -> Geometry:
        return Geometry(radius, self.mass_density, self.atom_number_density, separation_a)


GOLD = MaterialPreset(
    name="gold",
    omega_p=9.0,
    eta=0.035,
    mass_density=19300.0,
    atom_number_density=5.9e28,
    debye_theta_K=170.0,
)

PRESETS = {"gold": GOLD}

# omega_c for 1 T rounded the way the headline estimates use it
OMEGA_C_ROUNDED = 1e-4

_PRESET_KEYS = {
    "omega_p": float,
    "eta": float,
    "omega_0": float,
    "mass_density": float,
    "atom_number_density": float,
    "debye_theta_K": float,
}


def parse_key_values(lines) -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        out[key.replace("-", "_")] = value
    return out


def preset_with_overrides(base: str | MaterialPreset, overrides: dict) -> MaterialPreset:
    """Apply string or numeric overrides to a preset, rejecting unknown keys."""
    preset = PRESETS[base] if isinstance(base, str) else base
    changes = {}
    for key, value in overrides.items():
        if key not in _PRESET_KEYS:
            raise ValueError(f"unknown material key {key!r}; allowed: {sorted(_PRESET_KEYS)}")
        changes[key] = _PRESET_KEYS[key](value)
    if not changes:
        return preset
    return replace(preset, name="custom", **changes)


def load_preset(path: str | Path, base: str = "gold") -> MaterialPreset:
    """Load a material preset from a key=value file layered over ``base``."""
    text = Path(path).read_text().splitlines()
    values = parse_key_values(text)
    base = values.pop("base", base)
    if base not in PRESETS:
        raise ValueError(f"unknown base preset {base!r}")
    return preset_with_overrides(base, values)


def constants_table() -> str:
    """Human readable constants table (one ``name = value  # unit`` per line)."""
    c = CONSTANTS
    rows = [
        ("boltzmann_eV_per_K", c.boltzmann_eV_per_K, "eV/K"),
        ("hbar_eV_s", c.hbar_eV_s, "eV s"),
        ("hbar_c_eV_m", c.hbar_c_eV_m, "eV m"),
        ("eV_to_joule", c.eV_to_joule, "J/eV"),
        ("speed_of_light", c.speed_of_light, "m/s"),
        ("electron_mass_eV", c.electron_mass_eV, "eV"),
        ("critical_field_tesla", c.critical_field_tesla, "T, B_c = m_e^2 c^2/(e hbar)"),
        ("gold.omega_p", GOLD.omega_p, "eV"),
        ("gold.eta", GOLD.eta, "eV"),
        ("gold.mass_density", GOLD.mass_density, "kg/m^3"),
        ("gold.atom_number_density", GOLD.atom_number_density, "m^-3"),
        ("gold.debye_theta_K", GOLD.debye_theta_K, "K"),
    ]
    lines = [
        "# Physical constants used by neqtorque (CODATA via scipy.constants).",
        "# Natural units: hbar = c = 1; energies, frequencies and temperatures in eV.",
    ]
    lines += [f"{name} = {value:.12g}  # {unit}" for name, value, unit in rows]
    return "\n".join(lines) + "\n"
