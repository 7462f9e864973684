"""Rate-equation simulator for continuous demagnetisation cooling.

Dipolar relaxation converts kinetic energy into Zeeman energy of spin
excitations; optical pumping removes the excitations and returns the
gas to the energetically dark stretched state.  A feedback controller
servos the pump rate to hold a small excited-state fraction and
re-optimises the magnetic field each step, so the simulated cooling
runs trade atom number for phase-space density at maximum efficiency.
"""

from .collisions import (
    CHANNELS,
    CrossSectionModel,
    Heaviside,
    SymmetryFunction,
    beta_backward,
    beta_forward_closed_form,
    channel_delta_m,
    cooling_rate_estimate,
    final_state_ratio,
    golden_section_max,
    optimal_eta,
    rate_constant,
    sigma_channel,
    thermal_average,
    xi,
)
from .constants import CONST, PhysicalConstants
from .control import ControllerConfig, instantaneous_chi, optimize_eta, servo_gamma
from .core import (
    ControlState,
    GasState,
    HarmonicTrap,
    LossParams,
    PowerLawTrap,
    PumpParams,
    SpeciesModel,
    TrapPotential,
    alpha,
    chromium_52,
    eta_B,
    field_for_eta,
    mean_volume,
    peak_density,
    phase_space_density,
    pump_energy,
    pump_temperature,
    recoil_energy,
    recoil_temperature,
    total_energy,
    zeeman_splitting,
)
from .equilibrium import CurvePoint, equilibrium_curve, equilibrium_temperature, ladder_mean_level
from .integrator import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    TrajectoryRecord,
    compute_chi,
    integrate_fixed,
    simulate,
)
from .kinetics import (
    Derivatives,
    ModelParams,
    RateDiagnostics,
    derivative,
    dipolar_exchange,
    loss_energy_rate,
    loss_rates,
    pump_transfer_rate,
)

__version__ = "0.1.0"

__all__ = [
    "CHANNELS",
    "CONST",
    "ControlState",
    "ControllerConfig",
    "CrossSectionModel",
    "CurvePoint",
    "Derivatives",
    "GasState",
    "HarmonicTrap",
    "Heaviside",
    "IntegrationError",
    "IntegratorConfig",
    "LossParams",
    "ModelParams",
    "PhysicalConstants",
    "PowerLawTrap",
    "PumpParams",
    "RateDiagnostics",
    "SpeciesModel",
    "SymmetryFunction",
    "Trajectory",
    "TrajectoryRecord",
    "TrapPotential",
    "alpha",
    "beta_backward",
    "beta_forward_closed_form",
    "channel_delta_m",
    "chromium_52",
    "compute_chi",
    "cooling_rate_estimate",
    "derivative",
    "dipolar_exchange",
    "equilibrium_curve",
    "equilibrium_temperature",
    "eta_B",
    "field_for_eta",
    "final_state_ratio",
    "golden_section_max",
    "instantaneous_chi",
    "integrate_fixed",
    "ladder_mean_level",
    "loss_energy_rate",
    "loss_rates",
    "mean_volume",
    "optimal_eta",
    "optimize_eta",
    "peak_density",
    "phase_space_density",
    "pump_energy",
    "pump_temperature",
    "pump_transfer_rate",
    "rate_constant",
    "recoil_energy",
    "recoil_temperature",
    "servo_gamma",
    "sigma_channel",
    "simulate",
    "thermal_average",
    "total_energy",
    "xi",
    "zeeman_splitting",
]
