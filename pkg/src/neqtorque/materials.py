"""Susceptibility models, Drude/Fresnel optics and the Lorenz-Lorentz polarizability.

All frequencies are energies in eV.  Polarizabilities are susceptibility times
volume, so they carry whatever volume unit is passed in (eV^-3 inside the
engines).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .units import MaterialParams


class FieldAxis(enum.Enum):
    Z = "z"
    Y = "y"


# cyclic relabelling x->z, y->x, z->y carries a field along z onto one along y
_PERM_Z_TO_Y = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)


class ZeroFrequencyError(ValueError):
    pass


@dataclass(frozen=True)
class AntiHermitianSplit:
    """(chi - chi^dagger)/2i = symm_odd + i * antisymm_even."""

    symm_odd: np.ndarray
    antisymm_even: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.symm_odd + 1j * self.antisymm_even


@dataclass(frozen=True)
class SusceptibilityTensor:
    omega: float
    entries: np.ndarray

    def __getitem__(self, ij):
        return self.entries[ij]

    def anti_hermitian(self) -> np.ndarray:
        chi = self.entries
        return (chi - chi.conj().T) / 2j

    def split(self) -> AntiHermitianSplit:
        chi = self.entries
        im, re = chi.imag, chi.real
        return AntiHermitianSplit(
            symm_odd=0.5 * (im + im.T),
            antisymm_even=-0.5 * (re - re.T),
        )

    def hat(self, i: int, j: int) -> float:
        """Re(chi_ij - chi_ji), the nonreciprocal part that drives torques."""
        return float((self.entries[i, j] - self.entries[j, i]).real)


def _axis(field_axis) -> FieldAxis:
    return field_axis if isinstance(field_axis, FieldAxis) else FieldAxis(field_axis)


def chi_model(params: MaterialParams, omega: float, field_axis=FieldAxis.Z) -> SusceptibilityTensor:
    """Damped charged oscillator in a static magnetic field.

    For the field along z the xy block mixes through omega_c; the zz entry is
    the field-free oscillator response.
    """
    if omega == 0 and params.omega_0 == 0:
        raise ZeroFrequencyError("chi has a pole at omega = 0 when omega_0 = 0")
    wp2, wc = params.omega_p**2, params.omega_c
    d = params.omega_0**2 - omega**2 - 1j * omega * params.eta
    D = d * d - (omega * wc) ** 2
    chi = np.zeros((3, 3), dtype=complex)
    chi[0, 0] = chi[1, 1] = wp2 * d / D
    chi[0, 1] = -1j * wp2 * omega * wc / D
    chi[1, 0] = -chi[0, 1]
    chi[2, 2] = wp2 / d
    if _axis(field_axis) is FieldAxis.Y:
        chi = _PERM_Z_TO_Y @ chi @ _PERM_Z_TO_Y.T
    return SusceptibilityTensor(omega, chi)


def chi_offdiag_difference_approx(params: MaterialParams, omega):
    """chi_xy - chi_yx to first order in omega_c for a metal (omega_0 = 0)."""
    omega = np.asarray(omega, dtype=float)
    return -2j * params.omega_c * params.omega_p**2 / (omega * (omega + 1j * params.eta) ** 2)


def hat_chi_exact(params: MaterialParams, omega: float, field_axis=FieldAxis.Z) -> float:
    """Re(chi_xy - chi_yx) for B along z, Re(chi_xz - chi_zx) for B along y."""
    t = chi_model(params, omega, field_axis)
    return t.hat(0, 1) if _axis(field_axis) is FieldAxis.Z else t.hat(0, 2)


def hat_alpha_metal(params: MaterialParams, omega, volume=None, field_axis=FieldAxis.Z):
    """Nonreciprocal polarizability Re(alpha_ij - alpha_ji) in the small-omega_c metal model.

    Equals -4 V omega_c omega_p^2 eta / (omega^2 + eta^2)^2 for the xy pair with
    B along z; the xz pair with B along y has the opposite sign.
    """
    V = params.volume_natural if volume is None else volume
    omega = np.asarray(omega, dtype=float)
    val = -4.0 * V * params.omega_c * params.omega_p**2 * params.eta / (omega**2 + params.eta**2) ** 2
    return val if _axis(field_axis) is FieldAxis.Z else -val


def im_alpha_trace_metal(params: MaterialParams, omega, volume=None):
    """Im(alpha_xx + alpha_yy) of the metal model with omega_c neglected."""
    V = params.volume_natural if volume is None else volume
    omega = np.asarray(omega, dtype=float)
    return 2.0 * V * params.omega_p**2 * params.eta / (omega * (omega**2 + params.eta**2))


# -- plate optics ---------------------------------------------------------------

def drude_epsilon(omega_p: float, nu: float, omega):
    """epsilon = 1 - omega_p^2 / (omega^2 + i omega nu)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise ZeroFrequencyError("Drude permittivity is singular at omega = 0")
    return 1.0 - omega_p**2 / (omega**2 + 1j * omega * nu)


@dataclass(frozen=True)
class ReflectionCoefficients:
    r_H: complex
    r_E: complex
    kappa: complex
    kappa_prime: complex


def _branch(z2):
    """sqrt with Re >= 0, and Im <= 0 on the imaginary axis (outgoing waves, omega > 0)."""
    s = np.sqrt(np.asarray(z2, dtype=complex))
    return np.where((s.real == 0) & (s.imag > 0), -s, s)


def reflection(epsilon, omega, k) -> ReflectionCoefficients:
    """TM (r_H) and TE (r_E) amplitudes of a half-space, kappa^2 = k^2 - omega^2.

    ``epsilon = inf`` gives the perfect conductor, r_H = 1 and r_E = -1.
    """
    omega = np.asarray(omega, dtype=float)
    k = np.asarray(k, dtype=float)
    return reflection_from_kappa(epsilon, omega, _branch(k * k - omega * omega))


def reflection_from_kappa(epsilon, omega, kappa) -> ReflectionCoefficients:
    """As :func:`reflection` but with kappa supplied, which avoids forming k^2 - omega^2."""
    omega = np.asarray(omega, dtype=float)
    kappa = np.asarray(kappa, dtype=complex)
    eps = np.asarray(epsilon, dtype=complex)
    if np.all(np.isinf(eps)):
        one = np.ones(np.broadcast(kappa, eps).shape, dtype=complex)
        return ReflectionCoefficients(_squeeze(one), _squeeze(-one), _squeeze(kappa), _squeeze(np.full_like(one, np.inf)))
    kp = _branch(kappa * kappa + (1.0 - eps) * omega * omega)
    rH = (kappa - kp / eps) / (kappa + kp / eps)
    rE = (kappa - kp) / (kappa + kp)
    return ReflectionCoefficients(_squeeze(rH), _squeeze(rE), _squeeze(kappa), _squeeze(kp))


def _squeeze(a):
    a = np.asarray(a)
    return complex(a) if a.ndim == 0 else a


# -- Lorenz-Lorentz ---------------------------------------------------------------

class SingularMatrixError(ArithmeticError):
    pass


def inverse3(m: np.ndarray) -> np.ndarray:
    """Closed-form inverse of a 3x3 complex matrix via the adjugate."""
    m = np.asarray(m, dtype=complex)
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    cof = np.array([
        [e * i - f * h, -(d * i - f * g), d * h - e * g],
        [-(b * i - c * h), a * i - c * g, -(a * h - b * g)],
        [b * f - c * e, -(a * f - c * d), a * e - b * d],
    ])
    det = a * cof[0, 0] + b * cof[0, 1] + c * cof[0, 2]
    scale = np.abs(m).max() ** 3
    if scale == 0 or abs(det) <= 1e-14 * scale:
        raise SingularMatrixError(f"matrix is singular (det = {det})")
    return cof.T / det


def ll_polarizability(epsilon: np.ndarray, radius: float) -> np.ndarray:
    """alpha = (eps - 1)(eps + 2)^{-1} 4 pi a^3 for a 3x3 permittivity tensor."""
    eps = np.asarray(epsilon, dtype=complex)
    if eps.shape != (3, 3):
        raise ValueError("epsilon must be a 3x3 tensor")
    one = np.eye(3)
    return (eps - one) @ inverse3(eps + 2 * one) * (4 * np.pi * radius**3)


def ll_alpha_model(params: MaterialParams, omega: float, radius: float, field_axis=FieldAxis.Z) -> np.ndarray:
    """LL polarizability of a sphere whose permittivity is 1 + chi_model."""
    chi = chi_model(params, omega, field_axis).entries
    return ll_polarizability(np.eye(3) + chi, radius)


def ll_re_alpha_xy_approx(params: MaterialParams, omega, volume=None):
    """Re alpha_xy ~ 54 V omega^2 omega_c eta / omega_p^4 for omega_p >> omega."""
    V = params.volume_natural if volume is None else volume
    omega = np.asarray(omega, dtype=float)
    return 54.0 * V * omega**2 * params.omega_c * params.eta / params.omega_p**4


def ll_im_alpha_trace_approx(params: MaterialParams, omega, volume=None):
    """Im(alpha_xx + alpha_yy) ~ 18 V omega eta / omega_p^2 for omega_p >> omega."""
    V = params.volume_natural if volume is None else volume
    omega = np.asarray(omega, dtype=float)
    return 18.0 * V * omega * params.eta / params.omega_p**2
