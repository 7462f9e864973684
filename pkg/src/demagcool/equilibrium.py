"""Equilibrium temperature of a single demagnetisation step.

With the pump off, kinetic and spin reservoirs equilibrate at fixed B.
Energy conservation per atom reads

    (3/2 + alpha) k_B T0 = (3/2 + alpha) k_B T_eq + dE_Z <i>(T_eq)

where <i> is the mean occupied Zeeman level of the (2S+1)-ladder,

    <i> = sum_{i=0}^{2S} i e^{-i x} / sum_{i=0}^{2S} e^{-i x},
    x = dE_Z / (k_B T_eq).

The right-hand side is strictly increasing in T_eq, so the root is
unique; it is bracketed by [1e-6 T0, T0] and found by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CONST
from .core import zeeman_splitting

__all__ = ["ladder_mean_level", "equilibrium_temperature", "equilibrium_curve", "CurvePoint"]


def ladder_mean_level(T: float, B: float, spin_S: float) -> float:
    """Mean occupied level <i> of the truncated Boltzmann ladder.

    Evaluated through the closed form of the truncated geometric sums,

        <i> = 1/(e^x - 1) - (n+1)/(e^{(n+1) x} - 1),   n = 2S,

    which is stable for x -> 0 (limit n/2) and overflow-safe for large
    x or large S.  Below (n+1) x < 1e-3 the difference of the two terms
    cancels catastrophically, so the expansion

        <i> = n/2 - x n (n+2)/12 + x^3 ((n+1)^4 - 1)/720 + O(x^5 n^6)

    is used instead; at the switch point both branches agree to ~1e-13.
    """
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    if spin_S <= 0 or (2 * spin_S) % 1 != 0:
        raise ValueError(f"spin_S must be a positive multiple of 1/2, got {spin_S}")
    n = int(round(2 * spin_S))
    x = zeeman_splitting(B) / (CONST.k_B * T)
    if x == 0.0:
        return n / 2.0
    y = (n + 1) * x
    if y < 1e-3:
        return n / 2.0 - x * n * (n + 2) / 12.0 + x**3 * ((n + 1.0) ** 4 - 1.0) / 720.0
    first = 1.0 / math.expm1(x) if x < 700.0 else 0.0
    second = (n + 1) / math.expm1(y) if y < 700.0 else 0.0
    return first - second


def _residual(T_eq: float, T0: float, B: float, spin_S: float, alpha: float) -> float:
    """Energy balance residual, positive when T_eq is below the root."""
    heat_cap = (1.5 + alpha) * CONST.k_B
    return heat_cap * (T0 - T_eq) - zeeman_splitting(B) * ladder_mean_level(T_eq, B, spin_S)


def equilibrium_temperature(T0: float, B: float, spin_S: float, alpha: float) -> float:
    """Solve the energy balance for T_eq by bisection on [1e-6 T0, T0].

    Converges the bracket to 1e-12 relative width; the returned root
    satisfies |residual| <= 1e-10 of the total energy scale
    (3/2 + alpha) k_B T0.
    """
    if T0 <= 0:
        raise ValueError(f"initial temperature must be positive, got {T0}")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    lo, hi = 1e-6 * T0, T0
    r_lo = _residual(lo, T0, B, spin_S, alpha)
    r_hi = _residual(hi, T0, B, spin_S, alpha)
    if r_hi >= 0.0:
        # no energy absorbed by the spin bath at T0 (e.g. B -> infinity)
        return T0
    if r_lo <= 0.0:
        raise ValueError("equilibrium root not bracketed; inputs out of model range")
    while hi - lo > 1e-12 * T0:
        mid = 0.5 * (lo + hi)
        if _residual(mid, T0, B, spin_S, alpha) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class CurvePoint:
    B: float                 # magnetic field (T)
    eta_B0: float            # dE_Z / (k_B T0)
    T_eq: float              # equilibrium temperature (K)
    ratio: float             # T_eq / T0
    residual: float          # energy-balance residual relative to (3/2+alpha) k_B T0


def equilibrium_curve(
    T0: float,
    spin_S: float,
    alpha: float,
    B_grid: list[float],
) -> list[CurvePoint]:
    """T_eq / T0 versus magnetic field over a grid of B values."""
    points = []
    for B in B_grid:
        T_eq = equilibrium_temperature(T0, B, spin_S, alpha)
        res = _residual(T_eq, T0, B, spin_S, alpha) / ((1.5 + alpha) * CONST.k_B * T0)
        points.append(
            CurvePoint(
                B=B,
                eta_B0=zeeman_splitting(B) / (CONST.k_B * T0),
                T_eq=T_eq,
                ratio=T_eq / T0,
                residual=res,
            )
        )
    return points
