"""Species, trap, and gas-state primitives for the two-state spin model.

The gas is described by two Zeeman sublevels of a spin-S atom in an
optical trap: state 1 is the energetically lowest sublevel |m_S = -S>
(dark for sigma- pumping light), state 2 is |m_S = -S+1>.  All
quantities are SI internally.

Volume convention
-----------------
``mean_volume`` is the effective two-body volume V defined through
int n^2 d^3r = N^2 / V, so that a density-weighted rate reads
Ndot = -beta N^2 / V.  For a harmonic trap

    V = (sqrt(4 pi k_B T) / (wbar sqrt(m)))^3

which is 2^(3/2) times the Gaussian peak-density volume.  Accordingly
``peak_density`` N/V is the density-weighted mean density, not the
true peak of the distribution, and the phase space density built from
it follows the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import ATOMIC_MASS_KG, CONST

__all__ = [
    "SpeciesModel",
    "HarmonicTrap",
    "PowerLawTrap",
    "TrapPotential",
    "GasState",
    "ControlState",
    "LossParams",
    "PumpParams",
    "chromium_52",
    "alpha",
    "mean_volume",
    "zeeman_splitting",
    "eta_B",
    "field_for_eta",
    "peak_density",
    "phase_space_density",
    "recoil_energy",
    "recoil_temperature",
    "pump_energy",
    "pump_temperature",
    "total_energy",
]


@dataclass(frozen=True)
class SpeciesModel:
    """Atomic species entering the rate model.

    mass            atomic mass (kg)
    spin_S          electronic spin S (positive multiple of 1/2)
    pump_wavelength optical pumping wavelength (m)
    kappa           branching probability of a pump cycle back into
                    state 2; sqrt(kappa) is the Clebsch-Gordan
                    coefficient of the sigma- transition from state 2
    """

    mass: float
    spin_S: float
    pump_wavelength: float
    kappa: float

    def __post_init__(self) -> None:
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")
        if self.spin_S <= 0 or (2 * self.spin_S) % 1 != 0:
            raise ValueError(
                f"spin_S must be a positive multiple of 1/2, got {self.spin_S}"
            )
        if not (self.pump_wavelength > 0 and math.isfinite(self.pump_wavelength)):
            raise ValueError(f"pump_wavelength must be positive, got {self.pump_wavelength}")
        if not 0.0 <= self.kappa < 1.0:
            raise ValueError(f"kappa must lie in [0, 1), got {self.kappa}")


def chromium_52(pump_wavelength: float = 427.60e-9, kappa: float = 0.25) -> SpeciesModel:
    """52Cr with S = 3.

    The default pump line is the J=3 -> J'=3 transition at 427.60 nm.
    kappa = 0.25 is the squared Clebsch-Gordan coefficient
    <3,-2; 1,-1 | 3,-3>^2 = 1/4 for sigma- excitation out of
    |m_S = -2>, which equals the branching of the decay
    |J'=3, m'=-3> back to |m_S = -2>.
    """
    return SpeciesModel(
        mass=51.9405 * ATOMIC_MASS_KG,
        spin_S=3.0,
        pump_wavelength=pump_wavelength,
        kappa=kappa,
    )


@dataclass(frozen=True)
class HarmonicTrap:
    """Harmonic trap characterised by the geometric mean angular frequency (rad/s)."""

    mean_angular_frequency: float

    def __post_init__(self) -> None:
        if not (self.mean_angular_frequency > 0 and math.isfinite(self.mean_angular_frequency)):
            raise ValueError(
                f"mean_angular_frequency must be positive, got {self.mean_angular_frequency}"
            )

    @property
    def alpha(self) -> float:
        return 1.5


@dataclass(frozen=True)
class PowerLawTrap:
    """Power-law trap U = sum_j c_j |x_j|^{n_j}.

    Only the exponents enter the thermodynamics (alpha = sum 1/n_j and
    the volume scaling V ~ T^alpha); the mean volume therefore needs a
    reference point (t_ref, vbar_ref).  Coefficients are kept for
    completeness of the potential description and are not used
    numerically.
    """

    exponents: tuple[float, float, float]
    vbar_ref: float
    t_ref: float
    coefficients: tuple[float, float, float] | None = None

    def __post_init__(self) -> None:
        if len(self.exponents) != 3 or any(n < 1 for n in self.exponents):
            raise ValueError(f"exponents must be three values >= 1, got {self.exponents}")
        if not (self.vbar_ref > 0 and self.t_ref > 0):
            raise ValueError("power-law trap needs positive vbar_ref and t_ref")
        if self.coefficients is not None and any(c <= 0 for c in self.coefficients):
            raise ValueError(f"coefficients must be positive, got {self.coefficients}")

    @property
    def alpha(self) -> float:
        return sum(1.0 / n for n in self.exponents)


TrapPotential = HarmonicTrap | PowerLawTrap


def alpha(trap: TrapPotential) -> float:
    """Trap exponent alpha = sum_j 1/n_j; 3/2 for a harmonic trap.

    The total energy per atom is (3/2 + alpha) k_B T and the mean
    volume scales as T^alpha.
    """
    return trap.alpha


def mean_volume(trap: TrapPotential, T: float, mass: float) -> float:
    """Effective two-body volume V(T) in m^3 (see module docstring).

    Harmonic: V = (sqrt(4 pi k_B T) / (wbar sqrt(m)))^3.  Power law:
    V = vbar_ref (T / t_ref)^alpha, mass does not enter.
    """
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    if isinstance(trap, HarmonicTrap):
        if mass <= 0:
            raise ValueError(f"mass must be positive, got {mass}")
        wbar = trap.mean_angular_frequency
        return (math.sqrt(4 * math.pi * CONST.k_B * T) / (wbar * math.sqrt(mass))) ** 3
    return trap.vbar_ref * (T / trap.t_ref) ** trap.alpha


@dataclass(frozen=True)
class GasState:
    """Populations of states 1 and 2 (atoms) and kinetic temperature (K)."""

    N1: float
    N2: float
    T: float

    def __post_init__(self) -> None:
        if self.N1 < 0 or self.N2 < 0:
            raise ValueError(f"populations must be non-negative, got N1={self.N1}, N2={self.N2}")
        if self.N1 + self.N2 <= 0:
            raise ValueError("total atom number must be positive")
        if not (self.T > 0 and math.isfinite(self.T)):
            raise ValueError(f"temperature must be positive and finite, got {self.T}")

    @property
    def N(self) -> float:
        return self.N1 + self.N2


@dataclass(frozen=True)
class ControlState:
    """Magnetic field (T) and optical pumping scattering rate (1/s)."""

    B: float
    Gamma_sc: float

    def __post_init__(self) -> None:
        if self.B < 0:
            raise ValueError(f"magnetic field must be non-negative, got {self.B}")
        if self.Gamma_sc < 0:
            raise ValueError(f"Gamma_sc must be non-negative, got {self.Gamma_sc}")


@dataclass(frozen=True)
class LossParams:
    """Background lifetime tau_bg (s, may be inf) and three-body constant L_3b (m^6/s)."""

    tau_bg: float = 200.0
    L_3b: float = 1e-41

    def __post_init__(self) -> None:
        if not self.tau_bg > 0:
            raise ValueError(f"tau_bg must be positive, got {self.tau_bg}")
        if self.L_3b < 0 or not math.isfinite(self.L_3b):
            raise ValueError(f"L_3b must be non-negative and finite, got {self.L_3b}")


@dataclass(frozen=True)
class PumpParams:
    """Optical pumping model.

    p             polarisation impurity: fraction of pump events that
                  drive a dark-state atom into state 2
    target_ratio  servo target for N2/N1
    gamma_min/max allowed scattering-rate window (1/s)
    """

    p: float = 1e-3
    target_ratio: float = 0.02
    gamma_min: float = 30.0
    gamma_max: float = 2000.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p < 1.0:
            raise ValueError(f"polarisation impurity p must lie in [0, 1), got {self.p}")
        if not 0.0 < self.target_ratio < 1.0:
            raise ValueError(f"target_ratio must lie in (0, 1), got {self.target_ratio}")
        if self.gamma_min < 0 or self.gamma_max < self.gamma_min:
            raise ValueError(
                f"need 0 <= gamma_min <= gamma_max, got [{self.gamma_min}, {self.gamma_max}]"
            )


def zeeman_splitting(B: float) -> float:
    """Zeeman energy gap between adjacent sublevels, dE_Z = 2 mu_B B (J)."""
    if B < 0:
        raise ValueError(f"magnetic field must be non-negative, got {B}")
    return 2.0 * CONST.mu_B * B


def eta_B(B: float, T: float) -> float:
    """Dimensionless splitting eta_B = dE_Z / (k_B T)."""
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    return zeeman_splitting(B) / (CONST.k_B * T)


def field_for_eta(eta: float, T: float) -> float:
    """Magnetic field realising a given eta_B at temperature T."""
    if eta < 0:
        raise ValueError(f"eta must be non-negative, got {eta}")
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    return eta * CONST.k_B * T / (2.0 * CONST.mu_B)


def peak_density(N: float, vbar: float) -> float:
    """Density-weighted mean density n0 = N / V (m^-3)."""
    if N < 0 or vbar <= 0:
        raise ValueError(f"need N >= 0 and vbar > 0, got N={N}, vbar={vbar}")
    return N / vbar


def phase_space_density(n0: float, T: float, species: SpeciesModel) -> float:
    """rho = n0 (2 pi hbar^2 / (m k_B T))^(3/2)."""
    if n0 < 0 or T <= 0:
        raise ValueError(f"need n0 >= 0 and T > 0, got n0={n0}, T={T}")
    lam_sq = 2.0 * math.pi * CONST.hbar**2 / (species.mass * CONST.k_B * T)
    return n0 * lam_sq**1.5


def recoil_energy(species: SpeciesModel) -> float:
    """Single-photon recoil energy (2 pi / lambda)^2 hbar^2 / (2 m) (J)."""
    k = 2.0 * math.pi / species.pump_wavelength
    return (CONST.hbar * k) ** 2 / (2.0 * species.mass)


def recoil_temperature(species: SpeciesModel) -> float:
    return recoil_energy(species) / CONST.k_B


def pump_energy(species: SpeciesModel) -> float:
    """Mean optical pumping energy per pumped atom.

    A pumped atom falls back into state 2 with probability kappa and is
    re-excited, so the deposited energy is the geometric series
    sum_j kappa^j E_rec = E_rec / (1 - kappa).
    """
    return recoil_energy(species) / (1.0 - species.kappa)


def pump_temperature(species: SpeciesModel) -> float:
    return pump_energy(species) / CONST.k_B


def total_energy(state: GasState, trap: TrapPotential) -> float:
    """Total (kinetic + potential) energy E = (3/2 + alpha) N k_B T (J)."""
    return (1.5 + trap.alpha) * state.N * CONST.k_B * state.T
