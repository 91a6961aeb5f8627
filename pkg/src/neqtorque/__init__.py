"""Fluctuation-induced torques, forces and cooling of a small nonreciprocal
sphere held out of thermal equilibrium with its surroundings.

Energies, frequencies and temperatures are in eV with hbar = c = 1; the
``*_SI`` helpers convert results at the edges.
"""

from .cooling import CoolingResult, CoolingSpec, cool_from_hot, cooling_time_highT, cooling_time_lowT, debye_heat_capacity, radiated_power
from .force import (
    ForceResult,
    LinearDynamics,
    Mechanism,
    force_from_torque_consistency,
    pc_force,
    pc_friction_linear,
    slab_force,
    vacuum_force,
)
from .materials import FieldAxis, chi_model, drude_epsilon, hat_alpha_metal, ll_polarizability, reflection
from .quadrature import IntegrandSpec, QuadratureError, QuadratureResult, integrate_interval, integrate_semi_infinite
from .specfun import ExpansionRegime, I1, I2, J_slab, digamma, trigamma
from .torque import (
    SpinDynamics,
    TorqueResult,
    ll_spin_dynamics,
    ll_vacuum_torque,
    plate_torque_pc,
    plate_torque_slab,
    rotating_torque_linear,
    spin_trajectory,
    vacuum_torque,
)
from .units import GOLD, CONSTANTS, Geometry, MaterialParams, MaterialPreset, ThermalPair

__version__ = "0.1.0"
