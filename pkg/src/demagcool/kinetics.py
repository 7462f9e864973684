"""Coupled population and temperature rate equations.

State vector: (N1, N2, T).  The total energy budget is
E = (3/2 + alpha) N k_B T, and the temperature derivative follows from

    Edot = Edot_dip + Edot_loss + Edot_pol
    Tdot = (Edot - (3/2 + alpha) k_B T Ndot) / ((3/2 + alpha) k_B N)

Dipolar exchange channels (rates per second for the whole cloud,
rate = k N_a N_b / V with the channel rate constants of
``collisions.rate_constant``):

    (1,1) -> (1,2)   ssf forward,  one atom 1->2, absorbs dE_Z
    (1,1) -> (2,2)   dsf forward,  two atoms 1->2, absorbs 2 dE_Z
    (1,2) -> (2,2)   ssf forward prefactor, promotes the state-1 partner
    (1,2) -> (1,1)   ssf backward prefactor, demotes the state-2 partner
    (2,2) -> (1,2)   ssf backward, releases dE_Z
    (2,2) -> (1,1)   dsf backward, releases 2 dE_Z

Ndot_r is the net dipolar rate of change of N1 (negative while the
cloud demagnetises); every transferred atom carries one Zeeman quantum,
so Edot_dip = dE_Z Ndot_r.  In the polarised limit N2 = 0 this reduces
to Ndot_r = -beta N^2 / V with the closed-form beta.

Losses (background + three-body) are apportioned to the two states in
proportion to their populations; lost atoms carry 3 k_B T (background)
or 2 k_B T (three-body) each, valid for the harmonic trap only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .collisions import CrossSectionModel, Heaviside, rate_constant
from .constants import CONST
from .core import (
    ControlState,
    GasState,
    HarmonicTrap,
    LossParams,
    PumpParams,
    SpeciesModel,
    TrapPotential,
    mean_volume,
    recoil_energy,
    zeeman_splitting,
)

__all__ = [
    "ModelParams",
    "RateDiagnostics",
    "Derivatives",
    "loss_rates",
    "loss_energy_rate",
    "dipolar_exchange",
    "pump_transfer_rate",
    "derivative",
]


@dataclass(frozen=True)
class ModelParams:
    """Static physics inputs of a run."""

    species: SpeciesModel
    trap: TrapPotential
    loss: LossParams = LossParams()
    pump: PumpParams = PumpParams()
    cross_section: CrossSectionModel = Heaviside()


@dataclass(frozen=True)
class RateDiagnostics:
    """Channel-resolved rates backing the assembled derivatives.

    Ndot_bg, Ndot_3b: loss rates (atoms/s, <= 0)
    Ndot_r:          dipolar rate of change of N1 (atoms/s)
    Edot_dip, Edot_loss, Edot_pol: energy flows (W)
    """

    Ndot_bg: float
    Ndot_3b: float
    Ndot_r: float
    Edot_dip: float
    Edot_loss: float
    Edot_pol: float


@dataclass(frozen=True)
class Derivatives:
    dN1: float
    dN2: float
    dT: float
    diagnostics: RateDiagnostics


def _loss_raw(n_total: float, T: float, params: ModelParams) -> tuple[float, float]:
    vbar = mean_volume(params.trap, T, params.species.mass)
    ndot_bg = -n_total / params.loss.tau_bg if math.isfinite(params.loss.tau_bg) else 0.0
    ndot_3b = -params.loss.L_3b * n_total**3 / vbar**2
    return ndot_bg, ndot_3b


def _dipolar_raw(n1: float, n2: float, T: float, B: float, params: ModelParams) -> tuple[float, float]:
    sp, model = params.species, params.cross_section
    vbar = mean_volume(params.trap, T, sp.mass)
    k_f1 = rate_constant(T, B, sp, model, "ssf_fwd")
    k_f2 = rate_constant(T, B, sp, model, "dsf_fwd")
    k_b1 = rate_constant(T, B, sp, model, "ssf_bwd")
    k_b2 = rate_constant(T, B, sp, model, "dsf_bwd")
    r_f1 = k_f1 * n1 * n1 / vbar      # (1,1) -> (1,2)
    r_f2 = k_f2 * n1 * n1 / vbar      # (1,1) -> (2,2)
    r_xu = k_f1 * n1 * n2 / vbar      # (1,2) -> (2,2)
    r_xd = k_b1 * n1 * n2 / vbar      # (1,2) -> (1,1)
    r_b1 = k_b1 * n2 * n2 / vbar      # (2,2) -> (1,2)
    r_b2 = k_b2 * n2 * n2 / vbar      # (2,2) -> (1,1)
    ndot_r = -(r_f1 + 2.0 * r_f2 + r_xu) + (r_xd + r_b1 + 2.0 * r_b2)
    edot_dip = zeeman_splitting(B) * ndot_r
    return ndot_r, edot_dip


def _assemble(
    n1: float,
    n2: float,
    T: float,
    B: float,
    gamma_sc: float,
    params: ModelParams,
) -> Derivatives:
    """Raw right-hand side; accepts transient slightly-negative populations
    from integrator stages, but requires T > 0 and N1 + N2 > 0."""
    n = n1 + n2
    if not (T > 0.0 and math.isfinite(T)):
        raise ValueError(f"temperature out of range in rate evaluation: {T}")
    if not (n > 0.0 and math.isfinite(n)):
        raise ValueError(f"atom number out of range in rate evaluation: {n}")

    ndot_bg, ndot_3b = _loss_raw(n, T, params)
    ndot = ndot_bg + ndot_3b
    ndot_r, edot_dip = _dipolar_raw(n1, n2, T, B, params)
    edot_loss = loss_energy_rate_from(T, ndot_bg, ndot_3b, params.trap)
    p = params.pump.p
    kappa = params.species.kappa
    dn1_pump = ((1.0 - kappa) * n2 - p * n1) * gamma_sc
    edot_pol = (p * n1 + n2) * recoil_energy(params.species) * gamma_sc

    dn1 = ndot_r + ndot * n1 / n + dn1_pump
    dn2 = -ndot_r + ndot * n2 / n - dn1_pump

    heat_cap = (1.5 + params.trap.alpha) * CONST.k_B
    edot = edot_dip + edot_loss + edot_pol
    dT = (edot - heat_cap * T * ndot) / (heat_cap * n)

    return Derivatives(
        dN1=dn1,
        dN2=dn2,
        dT=dT,
        diagnostics=RateDiagnostics(
            Ndot_bg=ndot_bg,
            Ndot_3b=ndot_3b,
            Ndot_r=ndot_r,
            Edot_dip=edot_dip,
            Edot_loss=edot_loss,
            Edot_pol=edot_pol,
        ),
    )


def loss_rates(state: GasState, params: ModelParams) -> tuple[float, float]:
    """Background and three-body loss rates (atoms/s, both <= 0).

    Ndot_bg = -N / tau_bg,  Ndot_3b = -L_3b N^3 / V^2.
    """
    return _loss_raw(state.N, state.T, params)


def loss_energy_rate_from(T: float, ndot_bg: float, ndot_3b: float, trap: TrapPotential) -> float:
    if not isinstance(trap, HarmonicTrap):
        raise ValueError("loss energy apportioning is only defined for the harmonic trap")
    kT = CONST.k_B * T
    return 3.0 * kT * ndot_bg + 2.0 * kT * ndot_3b


def loss_energy_rate(state: GasState, ndot_bg: float, ndot_3b: float, trap: TrapPotential) -> float:
    """Edot_loss = 3 k_B T Ndot_bg + 2 k_B T Ndot_3b (harmonic trap only).

    Background losses remove atoms of mean energy 3 k_B T anywhere in
    the cloud; three-body losses happen preferentially in the dense
    centre and remove 2 k_B T per atom.
    """
    return loss_energy_rate_from(state.T, ndot_bg, ndot_3b, trap)


def dipolar_exchange(state: GasState, B: float, params: ModelParams) -> tuple[float, float]:
    """Net dipolar exchange: (Ndot_r, Edot_dip).

    Ndot_r is dN1/dt from dipolar relaxation alone; Edot_dip is the
    corresponding kinetic-energy flow, dE_Z * Ndot_r (negative while
    flips absorb Zeeman quanta, i.e. net cooling).
    """
    return _dipolar_raw(state.N1, state.N2, state.T, B, params)


def pump_transfer_rate(state: GasState, Gamma_sc: float, pump: PumpParams, kappa: float) -> float:
    """Net optical pumping transfer into state 1 (atoms/s).

    dN1_pump = ((1 - kappa) N2 - p N1) Gamma_sc: a fraction (1 - kappa)
    of scattering events from state 2 ends in the dark state, while the
    polarisation impurity p drives dark-state atoms back into state 2.
    """
    return ((1.0 - kappa) * state.N2 - pump.p * state.N1) * Gamma_sc


def derivative(state: GasState, control: ControlState, params: ModelParams) -> Derivatives:
    """Right-hand side of the coupled rate equations."""
    return _assemble(state.N1, state.N2, state.T, control.B, control.Gamma_sc, params)
