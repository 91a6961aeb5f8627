"""Digamma/trigamma and the Bose-weighted integrals I1, I2 and J.

    I1(z) = int_0^inf dx  x/(x^2+1)       / (e^{zx} - 1)
    I2(z) = int_0^inf dx  x^3/(x^2+1)^2   / (e^{zx} - 1)
    J(z)  = int_0^inf dx  x/(x^2+1)^2     / (e^{zx} - 1)  = I1 - I2

with z = beta*eta.  All three reduce to psi and psi' at w = z/(2 pi).  Written
naively the closed forms cancel catastrophically for large z (I2 ~ z^-4 while
the individual terms are O(ln z)), so they are evaluated through the
asymptotic remainders

    R(w) = ln w - 1/(2w) - psi(w)
    S(w) = psi'(w) - 1/w - 1/(2w^2)

which gives I1 = R/2, I2 = (2R - wS)/4 and J = wS/4 exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

EULER_GAMMA = 0.57721566490153286061

# psi/psi' are shifted above this before the asymptotic series is used
_SHIFT_TO = 8.0
_N_BERNOULLI_PSI = 7
# the remainders need more terms; at w >= 8 the smallest series term (k ~ pi w)
# is far below double precision, so 20 terms are enough
_REMAINDER_SHIFT_TO = 8.0
_N_BERNOULLI_REMAINDER = 20


@lru_cache(maxsize=None)
def bernoulli_even(n_terms: int) -> tuple[float, ...]:
    """B_2, B_4, ..., B_{2 n_terms} as floats (exact rational recurrence)."""
    m_max = 2 * n_terms
    B = [Fraction(0)] * (m_max + 1)
    B[0] = Fraction(1)
    for m in range(1, m_max + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * B[k]
            binom = binom * (m + 1 - k) // (k + 1)
        B[m] = -acc / (m + 1)
    return tuple(float(B[2 * k]) for k in range(1, n_terms + 1))


def _check_positive(z, name="argument"):
    if not z > 0 or not math.isfinite(z):
        raise ValueError(f"{name} must be a positive finite number, got {z}")


def digamma(z: float) -> float:
    """psi(z) for real z > 0."""
    _check_positive(z)
    acc = 0.0
    while z < _SHIFT_TO:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0.0
    p = inv2
    for k, b in enumerate(bernoulli_even(_N_BERNOULLI_PSI), 1):
        series += b / (2 * k) * p
        p *= inv2
    return acc + math.log(z) - 0.5 / z - series


def trigamma(z: float) -> float:
    """psi'(z) for real z > 0."""
    _check_positive(z)
    acc = 0.0
    while z < _SHIFT_TO:
        acc += 1.0 / (z * z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0.0
    p = inv2 * inv
    for b in bernoulli_even(_N_BERNOULLI_PSI):
        series += b * p
        p *= inv2
    return acc + inv + 0.5 * inv2 + series


def _remainder_series(w: float) -> tuple[float, float, float]:
    """Asymptotic R(w), S(w) and the combination 2R - wS for large w."""
    inv2 = 1.0 / (w * w)
    R = S = comb = 0.0
    p = inv2
    for k, b in enumerate(bernoulli_even(_N_BERNOULLI_REMAINDER), 1):
        R += b / (2 * k) * p
        S += b * p / w
        if k >= 2:
            # 2R - wS term by term; the k = 1 terms cancel exactly
            comb += b * (1.0 - k) / k * p
        p *= inv2
    return R, S, comb


def psi_remainders(w: float) -> tuple[float, float, float]:
    """Return (R, S, 2R - wS) at w > 0, accurate in relative terms."""
    _check_positive(w)
    if w >= _REMAINDER_SHIFT_TO:
        return _remainder_series(w)
    n = math.ceil(_REMAINDER_SHIFT_TO - w)
    wn = w + n
    Rn, Sn, _ = _remainder_series(wn)
    harm = sum(1.0 / (w + j) for j in range(n))
    harm2 = sum(1.0 / (w + j) ** 2 for j in range(n))
    R = math.log(w / wn) - 0.5 / w + 0.5 / wn + harm + Rn
    S = harm2 + 1.0 / wn + 0.5 / wn**2 - 1.0 / w - 0.5 / w**2 + Sn
    return R, S, 2.0 * R - w * S


def I1(beta_eta: float) -> float:
    """Closed form of I1 = 1/2 [-pi/z + ln(z/2pi) - psi(z/2pi)]."""
    _check_positive(beta_eta, "beta*eta")
    R, _, _ = psi_remainders(beta_eta / (2 * math.pi))
    return 0.5 * R


def I2(beta_eta: float) -> float:
    """Closed form of I2 = 1/4 [-pi/z + 2 ln w + 1 - 2 psi(w) - w psi'(w)], w = z/2pi."""
    _check_positive(beta_eta, "beta*eta")
    _, _, comb = psi_remainders(beta_eta / (2 * math.pi))
    return 0.25 * comb


def J_slab(beta_eta: float) -> float:
    """Closed form of J = 1/4 [w psi'(w) - 1 - pi/z] = I1 - I2."""
    _check_positive(beta_eta, "beta*eta")
    w = beta_eta / (2 * math.pi)
    _, S, _ = psi_remainders(w)
    return 0.25 * w * S


def I1_naive(beta_eta: float) -> float:
    """The textbook form of I1, kept for comparison; loses digits for large z."""
    w = beta_eta / (2 * math.pi)
    return 0.5 * (-math.pi / beta_eta + math.log(w) - digamma(w))


def I2_naive(beta_eta: float) -> float:
    w = beta_eta / (2 * math.pi)
    return 0.25 * (
        -math.pi / beta_eta + 2 * math.log(w) + 1 - 2 * digamma(w) - w * trigamma(w)
    )


# -- expansions ---------------------------------------------------------------

class ExpansionRegime(enum.Enum):
    EXACT = "exact"
    HIGH_TEMPERATURE = "high_T"
    LOW_TEMPERATURE = "low_T"


# plotting crossovers in beta*eta
HIGH_T_BELOW = 0.1
LOW_T_ABOVE = 10.0


def I1_high_T(beta_eta: float) -> float:
    """beta*eta -> 0:  1/2 [pi/z + ln(z/2pi) + gamma_E]."""
    _check_positive(beta_eta, "beta*eta")
    return 0.5 * (math.pi / beta_eta + math.log(beta_eta / (2 * math.pi)) + EULER_GAMMA)


def I2_high_T(beta_eta: float) -> float:
    """beta*eta -> 0:  1/4 [pi/z + 2 ln(z/2pi) + 1 + 2 gamma_E]."""
    _check_positive(beta_eta, "beta*eta")
    return 0.25 * (
        math.pi / beta_eta + 2 * math.log(beta_eta / (2 * math.pi)) + 1 + 2 * EULER_GAMMA
    )


def I1_low_T(beta_eta: float) -> float:
    """beta*eta -> inf:  pi^2/(6 z^2) - pi^4/(15 z^4)."""
    _check_positive(beta_eta, "beta*eta")
    return math.pi**2 / (6 * beta_eta**2) - math.pi**4 / (15 * beta_eta**4)


def I2_low_T(beta_eta: float) -> float:
    """beta*eta -> inf:  pi^4/(15 z^4)."""
    _check_positive(beta_eta, "beta*eta")
    return math.pi**4 / (15 * beta_eta**4)


def J_high_T(beta_eta: float) -> float:
    """Leading term pi/(4z) of J for beta*eta -> 0."""
    _check_positive(beta_eta, "beta*eta")
    return math.pi / (4 * beta_eta)


def default_regime(beta_eta: float) -> ExpansionRegime:
    if beta_eta < HIGH_T_BELOW:
        return ExpansionRegime.HIGH_TEMPERATURE
    if beta_eta > LOW_T_ABOVE:
        return ExpansionRegime.LOW_TEMPERATURE
    return ExpansionRegime.EXACT


@dataclass(frozen=True)
class Evaluation:
    value: float
    regime: ExpansionRegime


_BRANCHES = {
    "I1": {
        ExpansionRegime.EXACT: I1,
        ExpansionRegime.HIGH_TEMPERATURE: I1_high_T,
        ExpansionRegime.LOW_TEMPERATURE: I1_low_T,
    },
    "I2": {
        ExpansionRegime.EXACT: I2,
        ExpansionRegime.HIGH_TEMPERATURE: I2_high_T,
        ExpansionRegime.LOW_TEMPERATURE: I2_low_T,
    },
}


def evaluate(name: str, beta_eta: float, regime: ExpansionRegime | None = None) -> Evaluation:
    """Evaluate ``I1`` or ``I2`` on an explicit branch, or the default crossover branch."""
    if name not in _BRANCHES:
        raise ValueError(f"unknown integral {name!r}")
    if regime is None:
        regime = default_regime(beta_eta)
    return Evaluation(_BRANCHES[name][regime](beta_eta), regime)
