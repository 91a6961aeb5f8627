"""Plate kernels in u = 2 omega a, with cancellation-free small-u branches.

Each kernel is a moment integral of cos(u y) over y in [0, 1], so its Taylor
series follows termwise from int_0^1 y^n cos(u y) dy.  The direct
trigonometric forms lose roughly u^-2 to u^-4 in relative precision, so the
series is used up to ``SERIES_BELOW`` where it still converges to full
precision with ``N_TERMS`` terms.
"""

from __future__ import annotations

from math import factorial

import numpy as np

SERIES_BELOW = 2.0
N_TERMS = 16

_k = np.arange(N_TERMS)
_cos_coef = np.array([(-1.0) ** k / factorial(2 * k) for k in range(N_TERMS)])


def _moment_coef(n):
    """Taylor coefficients (in u^2) of int_0^1 y^n cos(u y) dy."""
    return _cos_coef / (2 * _k + n + 1)


# int_0^1 (1 + y^2) cos(uy) dy / 2  =  N(u)/u^3
_C_TORQUE = 0.5 * (_moment_coef(0) + _moment_coef(2))
# int_0^1 y^2 cos(uy) dy
_C_B1 = _moment_coef(2)
# (3/2) int_0^1 y^2 (1 - y^2) cos(uy) dy
_C_B2 = 1.5 * (_moment_coef(2) - _moment_coef(4))
# N0(u)/u^5 = -sum 8 (m+1)(m+2) (-1)^m u^2m / (2m+5)!
_C_FORCE = np.array([-8.0 * (m + 1) * (m + 2) * (-1) ** m / factorial(2 * m + 5) for m in range(N_TERMS)])


def _series(coef, u):
    return np.polynomial.polynomial.polyval(u * u, coef)


def _piecewise(u, series_coef, direct):
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < SERIES_BELOW
    out = np.empty_like(u)
    if small.any():
        out[small] = series_coef(u[small]) if callable(series_coef) else _series(series_coef, u[small])
    big = ~small
    if big.any():
        out[big] = direct(u[big])
    return out if out.ndim else float(out)


def torque_numerator(u):
    """N(u) = u cos u + (u^2 - 1) sin u."""
    u = np.asarray(u, dtype=float)
    return u * np.cos(u) + (u * u - 1.0) * np.sin(u)


def n_over_u3(u):
    """N(u)/u^3, tends to 2/3 at u = 0."""
    return _piecewise(u, _C_TORQUE, lambda v: torque_numerator(v) / v**3)


def torque_bracket(u):
    """1 - (3/2) N(u)/u^3: ~ u^2/5 near 0, -> 1 at large u."""
    return _piecewise(
        u,
        lambda v: _series(np.concatenate([[0.0], -1.5 * _C_TORQUE[1:]]), v),
        lambda v: 1.0 - 1.5 * torque_numerator(v) / v**3,
    )


def force_numerator(u):
    """N0(u) = 6u cos u + 2(u^2 - 3) sin u."""
    u = np.asarray(u, dtype=float)
    return 6.0 * u * np.cos(u) + 2.0 * (u * u - 3.0) * np.sin(u)


def force_kernel(u):
    """N0(u)/u^5 = -2/15 + u^2/105 - ..."""
    return _piecewise(u, _C_FORCE, lambda v: force_numerator(v) / v**5)


def friction_bracket_1(u):
    """1 - [2u cos u + (u^2 - 2) sin u]/u^3 = 2/3 + u^2/10 - ..."""
    return _piecewise(
        u,
        lambda v: _series(np.concatenate([[1.0 - _C_B1[0]], -_C_B1[1:]]), v),
        lambda v: 1.0 - (2.0 * v * np.cos(v) + (v * v - 2.0) * np.sin(v)) / v**3,
    )


def friction_bracket_2(u):
    """1 - 3[-u(u^2 - 12) cos u + (5u^2 - 12) sin u]/u^5 = 4/5 + 3u^2/70 - ..."""
    return _piecewise(
        u,
        lambda v: _series(np.concatenate([[1.0 - _C_B2[0]], -_C_B2[1:]]), v),
        lambda v: 1.0
        - 3.0 * (-v * (v * v - 12.0) * np.cos(v) + (5.0 * v * v - 12.0) * np.sin(v)) / v**5,
    )
