"""Single-step equilibrium temperature from kinetic/spin energy balance.

Oracle: brute-force Boltzmann sums over the 2S+1 ladder plus scipy
brentq on the raw energy balance, evaluated independently; roots were
frozen at rel_tol 1e-12.
"""

from __future__ import annotations

import math

import pytest

from demagcool import (
    CONST,
    equilibrium_curve,
    equilibrium_temperature,
    ladder_mean_level,
    zeeman_splitting,
)

T0 = 200e-6


def field_for_x0(x0: float, T0: float = T0) -> float:
    # x0 = dE_Z / (k_B T0)
    return x0 * CONST.k_B * T0 / (2.0 * CONST.mu_B)


def brute_mean_level(x: float, n: int) -> float:
    ws = [math.exp(-i * x) for i in range(n + 1)]
    return sum(i * w for i, w in enumerate(ws)) / sum(ws)


@pytest.mark.parametrize("spin_S", [0.5, 3.0, 6.0])
@pytest.mark.parametrize("x", [1e-4, 0.3, 1.0, 5.0, 50.0])
def test_ladder_mean_level_matches_brute_force(spin_S, x):
    T = 37e-6
    B = x * CONST.k_B * T / (2.0 * CONST.mu_B)
    closed = ladder_mean_level(T, B, spin_S)
    brute = brute_mean_level(x, int(round(2 * spin_S)))
    assert math.isclose(closed, brute, rel_tol=1e-12, abs_tol=1e-300)


def test_ladder_mean_level_limits():
    # x -> 0 gives the flat-ladder mean S; huge x empties the ladder
    assert ladder_mean_level(1e-3, 0.0, 3.0) == 3.0
    assert ladder_mean_level(1e-9, 1.0, 3.0) == 0.0
    # large S with moderate x must not overflow
    assert ladder_mean_level(1e-6, field_for_x0(1e-3, 1e-6), 1e6) > 0.0


def test_equilibrium_frozen_root():
    # S = 3, x0 = 1, alpha = 3/2
    B = field_for_x0(1.0)
    T_eq = equilibrium_temperature(T0, B, 3.0, 1.5)
    assert math.isclose(T_eq, 0.00017031007897416758, rel_tol=1e-10)


def test_equilibrium_residual_is_tiny():
    B = field_for_x0(1.0)
    T_eq = equilibrium_temperature(T0, B, 3.0, 1.5)
    scale = (1.5 + 1.5) * CONST.k_B * T0
    res = (1.5 + 1.5) * CONST.k_B * (T0 - T_eq) - zeeman_splitting(B) * ladder_mean_level(
        T_eq, B, 3.0
    )
    assert abs(res) <= 1e-10 * scale


def test_equilibrium_monotone_in_spin():
    # more ladder levels absorb more energy (never less)
    B = field_for_x0(1.0)
    ratios = [equilibrium_temperature(T0, B, S, 1.5) / T0 for S in (0.5, 3.0, 6.0)]
    assert ratios[0] > ratios[1] >= ratios[2]
    assert math.isclose(ratios[0], 0.9162178162281535, rel_tol=1e-10)
    assert math.isclose(ratios[2], 0.851067052532641, rel_tol=1e-10)


def test_equilibrium_scale_invariance():
    # at fixed x0 = dE_Z/(k_B T0) the ratio is T0-independent
    x0 = 0.7
    r1 = equilibrium_temperature(10e-6, field_for_x0(x0, 10e-6), 3.0, 1.5) / 10e-6
    r2 = equilibrium_temperature(1e-3, field_for_x0(x0, 1e-3), 3.0, 1.5) / 1e-3
    assert math.isclose(r1, r2, rel_tol=1e-11)


def test_equilibrium_infinite_field_returns_t0():
    assert equilibrium_temperature(T0, 1e6, 3.0, 1.5) == T0


def test_equilibrium_zero_field_returns_t0():
    assert equilibrium_temperature(T0, 0.0, 3.0, 1.5) == T0


def test_large_spin_small_splitting_ratio():
    # untruncated-ladder regime: (5/2) k_B dT = dE_Z <i> with <i> ~ 1/x
    B = field_for_x0(1e-3)
    ratio = equilibrium_temperature(T0, B, 1e6, 1.5) / T0
    assert math.isclose(ratio, 0.7501249722268529, rel_tol=1e-9)
    assert abs(ratio - 0.75) < 0.01


def test_moderate_spin_small_splitting_ratio():
    # S = 100 saturates at <i> <= 100, far from the 1/x branch
    B = field_for_x0(1e-3)
    ratio = equilibrium_temperature(T0, B, 100.0, 1.5) / T0
    assert math.isclose(ratio, 0.9678253636244014, rel_tol=1e-9)


def test_equilibrium_curve_shape():
    import numpy as np

    grid = [0.0] + list(np.geomspace(1e-7, 1.0, 80))
    points = equilibrium_curve(T0, 3.0, 1.5, grid)
    assert points[0].ratio == 1.0
    assert points[0].eta_B0 == 0.0
    ratios = [p.ratio for p in points]
    # dips to a minimum and recovers toward 1 at strong fields
    i_min = ratios.index(min(ratios))
    assert 0 < i_min < len(ratios) - 1
    assert min(ratios) < 0.82
    assert ratios[-1] > 0.999
    assert all(abs(p.residual) <= 1e-10 for p in points)
    assert all(math.isclose(p.ratio, p.T_eq / T0, rel_tol=1e-15) for p in points)


def test_equilibrium_validation():
    with pytest.raises(ValueError):
        equilibrium_temperature(-1.0, 1e-4, 3.0, 1.5)
    with pytest.raises(ValueError):
        equilibrium_temperature(T0, 1e-4, 3.0, 0.0)
    with pytest.raises(ValueError):
        ladder_mean_level(T0, 1e-4, 0.7)
