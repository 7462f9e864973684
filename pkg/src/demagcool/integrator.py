"""Adaptive integration of the cooling rate equations.

The state vector is (N1, N2, T).  Steps use the Cash-Karp embedded
Runge-Kutta 5(4) pair; the fourth-order solution only supplies the
error estimate, the fifth-order one is propagated.  Error control is a
scaled max norm with per-component scales abs_tol_i + rel_tol |y_i|,
where the absolute floors are one atom for populations and one
nanokelvin for temperature.  A step is accepted when the norm is <= 1.

Controls are zero-order-hold: the field and pump rate are frozen over
each attempted step and refreshed by the controller only after
acceptance.  Rate evaluations that leave the physical domain at a
trial stage (non-positive temperature or atom number) reject the step
rather than aborting the run; populations that undershoot zero by less
than the absolute tolerance on acceptance are clamped to zero and
counted.

Termination reasons, checked after each accepted step:

    t_max               integration horizon reached
    T_floor             T at or below the configured floor
    N_floor             total atom number at or below the floor
    rho_stall           phase-space density non-increasing for a
                        sustained window (controller runs only)

A step that cannot satisfy the error bound at dt_min raises
IntegrationError; the partial trajectory up to the failure rides on
the exception so callers can still flush it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .collisions import rate_constant
from .control import ControllerConfig, instantaneous_chi, optimize_eta, servo_gamma
from .core import (
    ControlState,
    GasState,
    eta_B,
    field_for_eta,
    mean_volume,
    peak_density,
    phase_space_density,
)
from .kinetics import ModelParams, _assemble

__all__ = [
    "IntegratorConfig",
    "TrajectoryRecord",
    "Trajectory",
    "IntegrationError",
    "simulate",
    "integrate_fixed",
    "compute_chi",
]

# Cash-Karp tableau.  b5 propagates, b5 - b4 gives the error estimate.
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0),
    (-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0),
    (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0),
)
_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_B4 = (2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0, 277.0 / 14336.0, 1.0 / 4.0)
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0)

_SAFETY = 0.9
_SHRINK_MIN = 0.2
_GROW_MAX = 5.0


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-8
    abs_tol_atoms: float = 1.0
    abs_tol_temperature: float = 1e-9
    dt_init: float = 1e-3
    dt_min: float = 1e-6
    dt_max: float = 0.1
    t_max: float = 40.0
    T_floor: float = 1e-9
    N_floor: float = 100.0
    stall_window: float = 1.0

    def __post_init__(self) -> None:
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.abs_tol_atoms <= 0 or self.abs_tol_temperature <= 0:
            raise ValueError("absolute tolerances must be positive")
        if not 0 < self.dt_min <= self.dt_max:
            raise ValueError(f"need 0 < dt_min <= dt_max, got [{self.dt_min}, {self.dt_max}]")
        if not self.dt_min <= self.dt_init <= self.dt_max:
            raise ValueError(f"dt_init {self.dt_init} outside [{self.dt_min}, {self.dt_max}]")
        if self.t_max <= 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.T_floor <= 0:
            raise ValueError(f"T_floor must be positive, got {self.T_floor}")
        if self.N_floor < 0:
            raise ValueError(f"N_floor must be non-negative, got {self.N_floor}")
        if self.stall_window <= 0:
            raise ValueError(f"stall_window must be positive, got {self.stall_window}")


@dataclass(frozen=True)
class TrajectoryRecord:
    t: float
    T: float
    B: float
    eta: float
    N1: float
    N2: float
    vbar: float
    n0: float
    rho: float
    Gamma_sc: float
    beta_fwd: float
    chi_inst: float


@dataclass
class Trajectory:
    records: list[TrajectoryRecord]
    termination: str
    n_accepted: int = 0
    n_rejected: int = 0
    clamp_events: int = 0
    accepted_error_norms: list[float] = field(default_factory=list)

    @property
    def final(self) -> TrajectoryRecord:
        return self.records[-1]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])


class IntegrationError(RuntimeError):
    """Step control failed; .trajectory holds the run up to the failure."""

    def __init__(self, message: str, trajectory: Trajectory):
        super().__init__(message)
        self.trajectory = trajectory


def _rhs(y: tuple[float, float, float], control: ControlState, params: ModelParams):
    d = _assemble(y[0], y[1], y[2], control.B, control.Gamma_sc, params)
    return (d.dN1, d.dN2, d.dT)


def _attempt_step(y, dt, control, params, scale_abs, rel_tol):
    """One Cash-Karp attempt.  Returns (y5, err_norm) or raises ValueError."""
    ks = [_rhs(y, control, params)]
    for stage in range(1, 6):
        a = _A[stage]
        yi = tuple(
            y[c] + dt * sum(a[j] * ks[j][c] for j in range(stage)) for c in range(3)
        )
        ks.append(_rhs(yi, control, params))
    y5 = tuple(y[c] + dt * sum(_B5[j] * ks[j][c] for j in range(6)) for c in range(3))
    err = 0.0
    for c in range(3):
        e = dt * sum((_B5[j] - _B4[j]) * ks[j][c] for j in range(6))
        scale = scale_abs[c] + rel_tol * abs(y[c])
        err = max(err, abs(e) / scale)
    return y5, err


def _make_record(t, y, control, params, chi):
    n1, n2, temp = y
    n = n1 + n2
    vbar = mean_volume(params.trap, temp, params.species.mass)
    n0 = peak_density(n, vbar)
    rho = phase_space_density(n0, temp, params.species)
    beta_fwd = rate_constant(
        temp, control.B, params.species, params.cross_section, "ssf_fwd"
    ) + 2.0 * rate_constant(temp, control.B, params.species, params.cross_section, "dsf_fwd")
    return TrajectoryRecord(
        t=t,
        T=temp,
        B=control.B,
        eta=eta_B(control.B, temp),
        N1=n1,
        N2=n2,
        vbar=vbar,
        n0=n0,
        rho=rho,
        Gamma_sc=control.Gamma_sc,
        beta_fwd=beta_fwd,
        chi_inst=chi,
    )


def _run(
    initial: GasState,
    params: ModelParams,
    config: IntegratorConfig,
    update_controls: Callable[[GasState], ControlState],
    chi_of: Callable[[GasState, ControlState], float],
    use_stall: bool,
) -> Trajectory:
    scale_abs = (config.abs_tol_atoms, config.abs_tol_atoms, config.abs_tol_temperature)
    y = (initial.N1, initial.N2, initial.T)
    t = 0.0
    state = initial
    control = update_controls(state)
    traj = Trajectory(records=[], termination="t_max")
    traj.records.append(_make_record(t, y, control, params, chi_of(state, control)))

    dt = config.dt_init
    rho_prev = traj.records[0].rho
    stall_start: float | None = None
    t_end = config.t_max * (1.0 - 1e-12)

    while t < t_end:
        dt_eff = min(dt, config.t_max - t)
        try:
            result = _attempt_step(y, dt_eff, control, params, scale_abs, config.rel_tol)
        except ValueError:
            result = None

        if result is not None:
            y5, err = result
            ok = err <= 1.0
            if ok:
                # populations may undershoot zero by round-off near depletion
                clamped = list(y5)
                for c in (0, 1):
                    if clamped[c] < 0.0:
                        if clamped[c] > -config.abs_tol_atoms:
                            clamped[c] = 0.0
                            traj.clamp_events += 1
                        else:
                            ok = False
                if clamped[2] <= 0.0 or clamped[0] + clamped[1] <= 0.0:
                    ok = False
                if ok:
                    y = tuple(clamped)
                    t += dt_eff
                    traj.n_accepted += 1
                    traj.accepted_error_norms.append(err)
                    state = GasState(N1=y[0], N2=y[1], T=y[2])
                    control = update_controls(state)
                    traj.records.append(
                        _make_record(t, y, control, params, chi_of(state, control))
                    )

                    if y[2] <= config.T_floor:
                        traj.termination = "T_floor"
                        return traj
                    if y[0] + y[1] <= config.N_floor:
                        traj.termination = "N_floor"
                        return traj
                    rho = traj.records[-1].rho
                    if use_stall:
                        if rho <= rho_prev:
                            if stall_start is None:
                                stall_start = t - dt_eff
                            if t - stall_start >= config.stall_window:
                                traj.termination = "rho_stall"
                                return traj
                        else:
                            stall_start = None
                    rho_prev = rho

                    grow = _SAFETY * err ** -0.2 if err > 0.0 else _GROW_MAX
                    dt = min(config.dt_max, dt_eff * min(_GROW_MAX, max(_SHRINK_MIN, grow)))
                    continue

        # rejected: either a stage left the domain or the error bound failed
        traj.n_rejected += 1
        if dt_eff <= config.dt_min * (1.0 + 1e-12):
            raise IntegrationError(
                f"step control failed at t={t:.6g} s: error bound unmet at dt_min="
                f"{config.dt_min:g} s",
                traj,
            )
        if result is None:
            dt = max(config.dt_min, 0.5 * dt_eff)
        else:
            shrink = max(_SHRINK_MIN, _SAFETY * result[1] ** -0.2)
            dt = max(config.dt_min, dt_eff * min(1.0, shrink))

    traj.termination = "t_max"
    return traj


def simulate(
    initial: GasState,
    params: ModelParams,
    controller: ControllerConfig | None = None,
    config: IntegratorConfig | None = None,
) -> Trajectory:
    """Closed-loop cooling run: field and pump rate re-optimised each step."""
    controller = controller if controller is not None else ControllerConfig()
    config = config if config is not None else IntegratorConfig()

    def update(state: GasState) -> ControlState:
        eta = optimize_eta(state, params, controller)
        B = field_for_eta(eta, state.T)
        return ControlState(B=B, Gamma_sc=servo_gamma(state, B, params))

    def chi_of(state: GasState, control: ControlState) -> float:
        return instantaneous_chi(state, control, params)

    return _run(initial, params, config, update, chi_of, use_stall=True)


def integrate_fixed(
    initial: GasState,
    control: ControlState,
    params: ModelParams,
    config: IntegratorConfig | None = None,
) -> Trajectory:
    """Open-loop run with frozen controls; terminates on t_max or a floor."""
    config = config if config is not None else IntegratorConfig()

    def chi_of(state: GasState, ctl: ControlState) -> float:
        return instantaneous_chi(state, ctl, params)

    return _run(initial, params, config, lambda s: control, chi_of, use_stall=False)


def compute_chi(trajectory: Trajectory) -> np.ndarray:
    """Efficiency d ln rho / (-d ln N) by centred differences over the records.

    Entries where the atom number change is below round-off (or at the
    endpoints) are NaN: the efficiency is undefined without atom loss.
    """
    ln_rho = np.log(trajectory.column("rho"))
    ln_n = np.log(trajectory.column("N1") + trajectory.column("N2"))
    chi = np.full(ln_rho.shape, np.nan)
    if len(ln_rho) < 3:
        return chi
    d_rho = ln_rho[2:] - ln_rho[:-2]
    d_n = ln_n[2:] - ln_n[:-2]
    valid = d_n < -1e-12
    chi[1:-1] = np.where(valid, d_rho / np.where(valid, -d_n, 1.0), np.nan)
    return chi
