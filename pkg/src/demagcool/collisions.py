"""Dipolar relaxation cross sections and thermally averaged rate constants.

Born-approximation cross sections for dipolar spin flips in a spin-S
gas near the fully stretched state:

    sigma_1 = xi S^3 (1 + h(x)) k_f / k_i     single spin flip
    sigma_2 = xi S^2 (1 + h(x)) k_f / k_i     double spin flip
    xi = (mu_0 (2 mu_B)^2 m)^2 / (30 pi hbar^4)

with x = k_f / k_i the ratio of final to initial relative momentum,
fixed by energy conservation in the relative motion (reduced mass m/2):

    x = sqrt(1 - dM dE_Z / E_rel),   E_rel = m v_rel^2 / 4

dM is the number of Zeeman quanta absorbed (+1, +2 endothermic, -1, -2
exothermic).

Two cross-section variants are supported.  The default ``Heaviside``
model replaces the slowly varying factor (1 + h(x)) x by a step,

    (1 + h(x)) x  ->  1/2 Theta(E_rel - dM dE_Z),

whose Maxwell-Boltzmann average has the closed form
(1 + a) e^{-a} per channel with a = dM eta_B; this is what makes the
analytic cooling-rate expression exact.  Exothermic (backward)
channels are the microreversibility image of the forward model,
k_i^2 sigma_fwd(k_i) = k_f^2 sigma_bwd(k_f), which gives

    heaviside:          sigma_bwd = 1/2 xi S_fac x^2
    symmetry function:  sigma_bwd = xi S_fac (1 + h(1/x)) x

with x = sqrt(1 + |dM| dE_Z / E_rel) >= 1.  This construction makes
detailed balance exact at Boltzmann populations N2/N1 = e^{-eta_B}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import CONST
from .core import HarmonicTrap, SpeciesModel, TrapPotential, eta_B, mean_volume, zeeman_splitting

__all__ = [
    "Heaviside",
    "SymmetryFunction",
    "CrossSectionModel",
    "CHANNELS",
    "channel_delta_m",
    "xi",
    "final_state_ratio",
    "sigma_channel",
    "thermal_average",
    "rate_constant",
    "beta_forward_closed_form",
    "beta_backward",
    "cooling_rate_estimate",
    "optimal_eta",
    "golden_section_max",
]

CHANNELS = ("ssf_fwd", "dsf_fwd", "ssf_bwd", "dsf_bwd")

_DELTA_M = {"ssf_fwd": 1, "dsf_fwd": 2, "ssf_bwd": -1, "dsf_bwd": -2}
# spin prefactor power: S^3 for single flips, S^2 for double flips
_SPIN_POWER = {"ssf_fwd": 3, "dsf_fwd": 2, "ssf_bwd": 3, "dsf_bwd": 2}


def channel_delta_m(channel: str) -> int:
    """Zeeman quanta absorbed by the channel (negative when released)."""
    try:
        return _DELTA_M[channel]
    except KeyError:
        raise ValueError(f"unknown channel {channel!r}, expected one of {CHANNELS}") from None


@dataclass(frozen=True)
class Heaviside:
    """Step model (1 + h) x -> 1/2 Theta(E_rel - dM dE_Z)."""


@dataclass(frozen=True)
class SymmetryFunction:
    """Full (1 + h(x)) x model with a user-supplied symmetry function h.

    h must be finite on (0, 1]; for exothermic channels it is evaluated
    at the inverse ratio 1/x which falls back into (0, 1].

    Instances loaded from the same table file compare equal (the config
    round-trip relies on this); hand-built instances compare by the h
    callable itself.
    """

    h: Callable[[float], float]
    table_path: str | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetryFunction):
            return NotImplemented
        if self.table_path is not None or other.table_path is not None:
            return self.table_path == other.table_path
        return self.h == other.h

    def __hash__(self) -> int:
        return hash(self.table_path)

    @classmethod
    def from_table(cls, path: str) -> "SymmetryFunction":
        """Load h(x) from a two-column text file (x, h(x)), linear interpolation."""
        data = np.loadtxt(path, ndmin=2)
        if data.ndim != 2 or data.shape[1] != 2 or data.shape[0] < 2:
            raise ValueError(f"{path}: expected two numeric columns with >= 2 rows")
        x, h = data[:, 0], data[:, 1]
        if not np.all(np.isfinite(data)):
            raise ValueError(f"{path}: table contains non-finite entries")
        if np.any(x < 0) or np.any(x > 1):
            raise ValueError(f"{path}: x values outside [0, 1]")
        if np.any(np.diff(x) <= 0):
            raise ValueError(f"{path}: x column must be strictly increasing")
        xt, ht = x.copy(), h.copy()

        def interp(v: float) -> float:
            return float(np.interp(v, xt, ht))

        return cls(h=interp, table_path=str(path))


CrossSectionModel = Heaviside | SymmetryFunction


def xi(species: SpeciesModel) -> float:
    """Dipolar cross-section scale (mu_0 (2 mu_B)^2 m)^2 / (30 pi hbar^4), in m^2."""
    num = (CONST.mu_0 * (2.0 * CONST.mu_B) ** 2 * species.mass) ** 2
    return num / (30.0 * math.pi * CONST.hbar**4)


def final_state_ratio(E_rel: float, delta_m: int, delta_EZ: float) -> float:
    """k_f / k_i from energy conservation; 0 below an endothermic threshold.

    For delta_m < 0 (exothermic) the ratio is sqrt(1 + |dM| dE_Z/E_rel) >= 1.
    delta_m = 0 (elastic) returns 1.
    """
    if E_rel <= 0:
        raise ValueError(f"relative energy must be positive, got {E_rel}")
    if delta_EZ < 0:
        raise ValueError(f"Zeeman splitting must be non-negative, got {delta_EZ}")
    if delta_m == 0:
        return 1.0
    radicand = 1.0 - delta_m * delta_EZ / E_rel
    if radicand <= 0.0:
        return 0.0
    return math.sqrt(radicand)


def sigma_channel(
    v_rel: float,
    B: float,
    species: SpeciesModel,
    model: CrossSectionModel,
    channel: str,
) -> float:
    """Cross section of one relaxation channel at relative speed v_rel (m^2)."""
    if v_rel <= 0:
        raise ValueError(f"relative speed must be positive, got {v_rel}")
    dm = channel_delta_m(channel)
    s_fac = species.spin_S ** _SPIN_POWER[channel]
    scale = xi(species) * s_fac
    E_rel = 0.25 * species.mass * v_rel * v_rel
    dEZ = zeeman_splitting(B)
    x = final_state_ratio(E_rel, dm, dEZ)
    if x == 0.0:
        return 0.0
    if isinstance(model, Heaviside):
        if dm > 0:
            return 0.5 * scale
        return 0.5 * scale * x * x
    if dm > 0:
        return scale * (1.0 + model.h(x)) * x
    return scale * (1.0 + model.h(1.0 / x)) * x


def _mb_speed_pdf(v: float, T: float, mu: float) -> float:
    """Maxwell-Boltzmann distribution of the relative speed (reduced mass mu)."""
    a = mu / (2.0 * CONST.k_B * T)
    return 4.0 * math.pi * v * v * (a / math.pi) ** 1.5 * math.exp(-a * v * v)


def thermal_average(
    T: float,
    B: float,
    species: SpeciesModel,
    model: CrossSectionModel,
    channel: str,
) -> float:
    """<sigma v> by adaptive quadrature over the relative-speed distribution (m^3/s).

    Integrates sigma(v) v f(v) dv for v in (0, v_cut] with
    v_cut = 12 sqrt(2 k_B T / mu), mu = m/2, relative tolerance 1e-9.
    Endothermic channels start the integral at the threshold speed.
    """
    from scipy.integrate import quad

    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    mu = 0.5 * species.mass
    v_cut = 12.0 * math.sqrt(2.0 * CONST.k_B * T / mu)
    dm = channel_delta_m(channel)
    lo = 0.0
    if dm > 0:
        # E_rel >= dM dE_Z  ->  v_th = sqrt(8 dM mu_B B / m)
        lo = math.sqrt(8.0 * dm * CONST.mu_B * B / species.mass)
        if lo >= v_cut:
            return 0.0

    def integrand(v: float) -> float:
        if v <= 0.0:
            return 0.0
        return sigma_channel(v, B, species, model, channel) * v * _mb_speed_pdf(v, T, mu)

    val, _ = quad(integrand, lo, v_cut, epsabs=0.0, epsrel=1e-9, limit=200)
    return val


def _mean_relative_speed(T: float, mass: float) -> float:
    # mean of the MB relative-speed distribution with reduced mass m/2
    return math.sqrt(16.0 * CONST.k_B * T / (math.pi * mass))


def rate_constant(
    T: float,
    B: float,
    species: SpeciesModel,
    model: CrossSectionModel,
    channel: str,
) -> float:
    """<sigma v> of one channel; closed form for the Heaviside model, quadrature otherwise."""
    if not isinstance(model, Heaviside):
        return thermal_average(T, B, species, model, channel)
    dm = channel_delta_m(channel)
    a = abs(dm) * eta_B(B, T)
    s_fac = species.spin_S ** _SPIN_POWER[channel]
    k0 = 0.5 * xi(species) * s_fac * _mean_relative_speed(T, species.mass)
    if dm > 0:
        return k0 * (1.0 + a) * math.exp(-a)
    return k0 * (1.0 + a)


def beta_forward_closed_form(T: float, B: float, species: SpeciesModel) -> float:
    """Forward loss-rate constant of a polarised cloud, beta = <(sigma_1 + 2 sigma_2) v>.

    Closed form of the Heaviside model:

        beta = 2 xi sqrt(k_B T / (pi m)) [S^3 (1+eta) e^-eta + 2 S^2 (1+2 eta) e^-2eta]
    """
    eta = eta_B(B, T)
    S = species.spin_S
    pref = 2.0 * xi(species) * math.sqrt(CONST.k_B * T / (math.pi * species.mass))
    return pref * (
        S**3 * (1.0 + eta) * math.exp(-eta)
        + 2.0 * S**2 * (1.0 + 2.0 * eta) * math.exp(-2.0 * eta)
    )


def beta_backward(
    T: float,
    B: float,
    species: SpeciesModel,
    channel: str = "ssf_bwd",
    model: CrossSectionModel = Heaviside(),
) -> float:
    """Exothermic rate constant <sigma v> by quadrature (m^3/s).

    The backward cross section is the microreversibility image of the
    forward model (module docstring), so at Boltzmann populations the
    channel pairs balance exactly: k_bwd = e^{|dM| eta_B} k_fwd.
    """
    if channel_delta_m(channel) >= 0:
        raise ValueError(f"{channel!r} is not an exothermic channel")
    return thermal_average(T, B, species, model, channel)


def cooling_rate_estimate(
    T: float,
    N: float,
    trap: TrapPotential,
    eta: float,
    species: SpeciesModel,
) -> float:
    """Analytic demagnetisation cooling rate of a polarised cloud (K/s).

    Tdot = -2/(3/2+alpha) sqrt(k_B/(pi m)) xi S^2
           {(1+eta) S + (2+4 eta) e^-eta} eta e^-eta (N/V) T^(3/2)

    Identically equal to -dE_Z beta N / ((3/2+alpha) k_B V) with the
    closed-form beta.
    """
    if T <= 0 or N < 0 or eta < 0:
        raise ValueError(f"need T > 0, N >= 0, eta >= 0; got T={T}, N={N}, eta={eta}")
    S = species.spin_S
    vbar = mean_volume(trap, T, species.mass)
    curly = (1.0 + eta) * S + (2.0 + 4.0 * eta) * math.exp(-eta)
    return (
        -(2.0 / (1.5 + trap.alpha))
        * math.sqrt(CONST.k_B / (math.pi * species.mass))
        * xi(species)
        * S**2
        * curly
        * eta
        * math.exp(-eta)
        * (N / vbar)
        * T**1.5
    )


def golden_section_max(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-6,
) -> float:
    """Golden-section search for the maximiser of a unimodal f on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimal_eta(spin_S: float, tol: float = 1e-6) -> float:
    """eta_B maximising the cooling rate at fixed T, N, trap.

    Maximises f(eta) = {(1+eta) S + (2+4 eta) e^-eta} eta e^-eta on
    [0, 20].  For S = 3 the maximum sits near 1.31; for S -> infinity
    it tends to the golden ratio (1 + sqrt 5)/2.
    """
    if spin_S <= 0 or (2 * spin_S) % 1 != 0:
        raise ValueError(f"spin_S must be a positive multiple of 1/2, got {spin_S}")

    def f(eta: float) -> float:
        return ((1.0 + eta) * spin_S + (2.0 + 4.0 * eta) * math.exp(-eta)) * eta * math.exp(-eta)

    return golden_section_max(f, 0.0, 20.0, tol)
