"""Feedback control: pump-rate servo and per-step field optimisation.

The servo holds the population ratio N2/N1 at a target r by solving
d(N2/N1)/dt = 0 for the scattering rate in closed form.  Writing the
pump-free derivatives D1 = Ndot_r + Ndot N1/N, D2 = -Ndot_r + Ndot N2/N
and the pump transfer P = ((1-kappa) N2 - p N1) Gamma,

    d(N2/N1)/dt = ((D2 - P) N1 - N2 (D1 + P)) / N1^2 = 0
    =>  Gamma* = (D2 N1 - N2 D1) / (((1-kappa) N2 - p N1) (N1 + N2))

clamped to [gamma_min, gamma_max].  If the ratio deviates from the
target by more than 10 percent, the servo instead drives it back with
whichever clamped Gamma maximises the restoration rate.

The field optimiser picks eta_B maximising the instantaneous cooling
efficiency chi = (d ln rho/dt) / (-d ln N/dt) (phase-space density
gained per atom lost), evaluated with the servoed Gamma at each
candidate eta; when atom loss is negligible (|d ln N/dt| < 1e-12/s)
the objective degrades to d ln rho/dt itself.  A coarse scan brackets
the maximum before golden-section refinement, so a mildly multimodal
objective still resolves the global optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .collisions import golden_section_max
from .core import ControlState, GasState, field_for_eta
from .kinetics import ModelParams, _dipolar_raw, _loss_raw, derivative

__all__ = ["ControllerConfig", "servo_gamma", "optimize_eta", "instantaneous_chi"]

_OBJECTIVES = ("chi_instantaneous", "cooling_rate")


@dataclass(frozen=True)
class ControllerConfig:
    eta_min: float = 0.2
    eta_max: float = 10.0
    optimizer_tol: float = 1e-3
    objective: str = "chi_instantaneous"

    def __post_init__(self) -> None:
        if not 0 < self.eta_min < self.eta_max:
            raise ValueError(f"need 0 < eta_min < eta_max, got [{self.eta_min}, {self.eta_max}]")
        if not 0 < self.optimizer_tol < 1:
            raise ValueError(f"optimizer_tol must lie in (0, 1), got {self.optimizer_tol}")
        if self.objective not in _OBJECTIVES:
            raise ValueError(f"objective must be one of {_OBJECTIVES}, got {self.objective!r}")


def servo_gamma(state: GasState, B: float, params: ModelParams) -> float:
    """Scattering rate that holds N2/N1 at the pump target ratio (1/s)."""
    pump = params.pump
    n1, n2 = state.N1, state.N2
    if n1 <= 0.0:
        return pump.gamma_max
    ndot_bg, ndot_3b = _loss_raw(state.N, state.T, params)
    ndot = ndot_bg + ndot_3b
    ndot_r, _ = _dipolar_raw(n1, n2, state.T, B, params)
    d1 = ndot_r + ndot * n1 / state.N
    d2 = -ndot_r + ndot * n2 / state.N

    ratio = n2 / n1
    r = pump.target_ratio
    pump_gain = (1.0 - params.species.kappa) * n2 - pump.p * n1

    if abs(ratio - r) > 0.1 * r:
        # out of band: drive the ratio back as fast as the clamp allows.
        # d(ratio)/dt falls with Gamma when pump_gain > 0.
        want_up = r > ratio
        ratio_falls_with_gamma = pump_gain > 0.0
        if want_up == ratio_falls_with_gamma:
            return pump.gamma_min
        return pump.gamma_max

    numerator = d2 * n1 - n2 * d1
    denominator = pump_gain * (n1 + n2)
    if denominator == 0.0 or not math.isfinite(numerator / denominator):
        return pump.gamma_min
    gamma = numerator / denominator
    return min(pump.gamma_max, max(pump.gamma_min, gamma))


def instantaneous_chi(state: GasState, control: ControlState, params: ModelParams) -> float:
    """chi = (d ln rho/dt)/(-d ln N/dt); d ln rho/dt itself when loss is negligible."""
    d = derivative(state, control, params)
    dlnN = (d.dN1 + d.dN2) / state.N
    # rho = (N/Vbar) lambda_dB^3 with Vbar ~ T^alpha, so
    # d ln rho = d ln N - (alpha + 3/2) d ln T
    dln_rho = dlnN - (params.trap.alpha + 1.5) * d.dT / state.T
    if abs(dlnN) < 1e-12:
        return dln_rho
    return dln_rho / (-dlnN)


def optimize_eta(state: GasState, params: ModelParams, config: ControllerConfig) -> float:
    """eta_B maximising the configured objective, with Gamma servoed at each eta."""

    def objective(eta: float) -> float:
        B = field_for_eta(eta, state.T)
        gamma = servo_gamma(state, B, params)
        control = ControlState(B=B, Gamma_sc=gamma)
        if config.objective == "cooling_rate":
            return -derivative(state, control, params).dT
        return instantaneous_chi(state, control, params)

    lo, hi = config.eta_min, config.eta_max
    n_scan = 25
    span = hi - lo
    best_i, best_v = 0, -math.inf
    grid = [lo + span * i / (n_scan - 1) for i in range(n_scan)]
    for i, eta in enumerate(grid):
        v = objective(eta)
        if v > best_v:
            best_i, best_v = i, v
    a = grid[max(0, best_i - 1)]
    b = grid[min(n_scan - 1, best_i + 1)]
    return golden_section_max(objective, a, b, config.optimizer_tol)
