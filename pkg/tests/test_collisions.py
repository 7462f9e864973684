"""Cross sections, thermally averaged rates, and the analytic optimum.

The quadrature path (scipy adaptive quad over the Maxwell-Boltzmann
relative-speed distribution) is the oracle for every closed form here.
Frozen numbers come from independent evaluation (scipy minimize_scalar
for the optimum, direct formula evaluation for xi).
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from demagcool import (
    CHANNELS,
    CONST,
    HarmonicTrap,
    Heaviside,
    SymmetryFunction,
    beta_backward,
    beta_forward_closed_form,
    channel_delta_m,
    chromium_52,
    cooling_rate_estimate,
    eta_B,
    field_for_eta,
    final_state_ratio,
    golden_section_max,
    mean_volume,
    optimal_eta,
    rate_constant,
    sigma_channel,
    thermal_average,
    xi,
    zeeman_splitting,
)

CR = chromium_52()
HEAVISIDE = Heaviside()


def test_xi_frozen_value():
    assert math.isclose(xi(CR), 1.1927368591848353e-19, rel_tol=1e-14)


def test_channel_delta_m():
    assert [channel_delta_m(c) for c in CHANNELS] == [1, 2, -1, -2]
    with pytest.raises(ValueError, match="unknown channel"):
        channel_delta_m("elastic")


def test_final_state_ratio_threshold_and_limits():
    dEZ = zeeman_splitting(1e-4)
    assert final_state_ratio(2.0 * dEZ, 2, dEZ) == 0.0  # exactly at threshold
    assert final_state_ratio(0.5 * dEZ, 1, dEZ) == 0.0  # below threshold
    assert final_state_ratio(2.0 * dEZ, 0, dEZ) == 1.0
    assert math.isclose(final_state_ratio(dEZ, -1, dEZ), math.sqrt(2.0), rel_tol=1e-15)
    x = final_state_ratio(4.0 * dEZ, 1, dEZ)
    assert math.isclose(x, math.sqrt(0.75), rel_tol=1e-15)


def test_sigma_endothermic_step():
    B = 1e-4
    dEZ = zeeman_splitting(B)
    v_th1 = math.sqrt(4.0 * dEZ / CR.mass)  # E_rel = dEZ
    s_below = sigma_channel(0.99 * v_th1, B, CR, HEAVISIDE, "ssf_fwd")
    s_above = sigma_channel(1.01 * v_th1, B, CR, HEAVISIDE, "ssf_fwd")
    assert s_below == 0.0
    assert math.isclose(s_above, 0.5 * xi(CR) * CR.spin_S**3, rel_tol=1e-15)


def test_sigma_double_to_single_ratio_is_one_over_s():
    # sigma_2/sigma_1 = S^2/S^3 above both thresholds
    B = 1e-5
    v = 1.0
    s1 = sigma_channel(v, B, CR, HEAVISIDE, "ssf_fwd")
    s2 = sigma_channel(v, B, CR, HEAVISIDE, "dsf_fwd")
    assert math.isclose(s2 / s1, 1.0 / CR.spin_S, rel_tol=1e-15)


def test_sigma_backward_grows_below_forward_threshold():
    # exothermic channels stay open at any speed and gain the x^2 boost
    B = 1e-4
    v = 0.01
    s = sigma_channel(v, B, CR, HEAVISIDE, "ssf_bwd")
    E_rel = 0.25 * CR.mass * v * v
    x2 = 1.0 + zeeman_splitting(B) / E_rel
    assert math.isclose(s, 0.5 * xi(CR) * CR.spin_S**3 * x2, rel_tol=1e-13)


@pytest.mark.parametrize("channel", CHANNELS)
@pytest.mark.parametrize("T,B", [(1e-6, 1e-6), (40e-6, 3e-4), (200e-6, 2e-3), (1e-3, 1e-2)])
def test_closed_form_rate_matches_quadrature(channel, T, B):
    closed = rate_constant(T, B, CR, HEAVISIDE, channel)
    quad = thermal_average(T, B, CR, HEAVISIDE, channel)
    assert math.isclose(closed, quad, rel_tol=1e-7)


def test_rate_constant_zero_field_closed_form():
    # a = 0: all channels reduce to k0 = 1/2 xi S_fac <v_rel>
    T = 100e-6
    vbar_rel = math.sqrt(16.0 * CONST.k_B * T / (math.pi * CR.mass))
    k1 = rate_constant(T, 0.0, CR, HEAVISIDE, "ssf_fwd")
    k2 = rate_constant(T, 0.0, CR, HEAVISIDE, "dsf_fwd")
    assert math.isclose(k1, 0.5 * xi(CR) * CR.spin_S**3 * vbar_rel, rel_tol=1e-14)
    assert math.isclose(k2, 0.5 * xi(CR) * CR.spin_S**2 * vbar_rel, rel_tol=1e-14)
    assert k1 == rate_constant(T, 0.0, CR, HEAVISIDE, "ssf_bwd")
    assert k2 == rate_constant(T, 0.0, CR, HEAVISIDE, "dsf_bwd")


@pytest.mark.parametrize("pair", [("ssf_fwd", "ssf_bwd"), ("dsf_fwd", "dsf_bwd")])
@pytest.mark.parametrize("eta", [0.5, 1.31402, 3.0])
def test_microreversibility_balance_factor(pair, eta):
    # k_bwd = e^{|dM| eta} k_fwd, so Boltzmann populations balance exactly
    fwd, bwd = pair
    T = 50e-6
    B = field_for_eta(eta, T)
    a = abs(channel_delta_m(fwd)) * eta
    k_f = rate_constant(T, B, CR, HEAVISIDE, fwd)
    k_b = rate_constant(T, B, CR, HEAVISIDE, bwd)
    assert math.isclose(k_b, math.exp(a) * k_f, rel_tol=1e-13)


def test_beta_backward_requires_exothermic_channel():
    with pytest.raises(ValueError, match="exothermic"):
        beta_backward(1e-6, 1e-6, CR, channel="ssf_fwd")
    quad = beta_backward(50e-6, 1e-4, CR, channel="dsf_bwd")
    closed = rate_constant(50e-6, 1e-4, CR, HEAVISIDE, "dsf_bwd")
    assert math.isclose(quad, closed, rel_tol=1e-7)


def test_beta_forward_is_single_plus_twice_double():
    T, B = 120e-6, 5e-4
    expected = rate_constant(T, B, CR, HEAVISIDE, "ssf_fwd") + 2.0 * rate_constant(
        T, B, CR, HEAVISIDE, "dsf_fwd"
    )
    assert math.isclose(beta_forward_closed_form(T, B, CR), expected, rel_tol=1e-14)


def test_beta_grid_against_quadrature():
    # coarse version of the full acceptance grid
    for T in np.geomspace(1e-6, 1e-3, 5):
        for eta in (0.0, 0.7, 2.5, 10.0):
            B = field_for_eta(eta, T)
            closed = beta_forward_closed_form(T, B, CR)
            quad = thermal_average(T, B, CR, HEAVISIDE, "ssf_fwd") + 2.0 * thermal_average(
                T, B, CR, HEAVISIDE, "dsf_fwd"
            )
            assert math.isclose(closed, quad, rel_tol=1e-6)


def test_cooling_rate_identity_with_beta():
    # Tdot = -dE_Z beta N / ((3/2 + alpha) k_B Vbar)
    trap = HarmonicTrap(2.0 * math.pi * 500.0)
    T, N, eta = 200e-6, 5e6, 1.31402
    B = field_for_eta(eta, T)
    vbar = mean_volume(trap, T, CR.mass)
    expected = (
        -zeeman_splitting(B)
        * beta_forward_closed_form(T, B, CR)
        * N
        / ((1.5 + trap.alpha) * CONST.k_B * vbar)
    )
    got = cooling_rate_estimate(T, N, trap, eta, CR)
    assert math.isclose(got, expected, rel_tol=1e-13)


def test_cooling_rate_is_negative_and_vanishes_at_zero_field():
    trap = HarmonicTrap(2.0 * math.pi * 500.0)
    assert cooling_rate_estimate(200e-6, 5e6, trap, 1.3, CR) < 0.0
    assert cooling_rate_estimate(200e-6, 5e6, trap, 0.0, CR) == 0.0


def test_optimal_eta_frozen_values():
    # independent oracle: scipy bounded minimize_scalar on -f, xatol 1e-12
    assert math.isclose(optimal_eta(3.0), 1.3140165120150267, abs_tol=5e-6)
    assert math.isclose(optimal_eta(0.5), 0.9439971949194229, abs_tol=5e-6)
    assert math.isclose(optimal_eta(1e6), 1.6180328604546568, abs_tol=5e-6)
    # the large-S limit tends to the golden ratio
    assert abs(optimal_eta(1e6) - (1.0 + math.sqrt(5.0)) / 2.0) < 1e-3


def test_optimal_eta_maximises_cooling_rate():
    trap = HarmonicTrap(2.0 * math.pi * 500.0)
    best = optimal_eta(3.0)
    r_best = cooling_rate_estimate(150e-6, 1e6, trap, best, CR)
    for eta in np.linspace(0.05, 8.0, 160):
        assert cooling_rate_estimate(150e-6, 1e6, trap, float(eta), CR) >= r_best - 1e-30


def test_optimal_eta_rejects_bad_spin():
    with pytest.raises(ValueError):
        optimal_eta(0.0)
    with pytest.raises(ValueError):
        optimal_eta(1.2)


def test_golden_section_on_parabola():
    got = golden_section_max(lambda x: -((x - 2.0) ** 2), 0.0, 5.0, tol=1e-10)
    assert math.isclose(got, 2.0, abs_tol=1e-9)


def test_symmetry_function_zero_h_doubles_heaviside_at_zero_field():
    # at B = 0, x = 1 and (1 + 0) x = 1 versus the step's 1/2
    flat = SymmetryFunction(h=lambda x: 0.0)
    T = 80e-6
    for channel in CHANNELS:
        full = thermal_average(T, 0.0, CR, flat, channel)
        step = rate_constant(T, 0.0, CR, HEAVISIDE, channel)
        assert math.isclose(full, 2.0 * step, rel_tol=1e-7)


def test_symmetry_function_from_table(tmp_path):
    table = tmp_path / "h.txt"
    table.write_text("0.0 0.0\n0.5 0.1\n1.0 0.2\n")
    model = SymmetryFunction.from_table(str(table))
    assert model.h(0.25) == pytest.approx(0.05)
    assert model.h(1.0) == pytest.approx(0.2)
    # same path -> equal (config round-trips rely on this)
    assert model == SymmetryFunction.from_table(str(table))
    assert model != SymmetryFunction(h=lambda x: 0.0)


def test_symmetry_function_table_validation(tmp_path):
    cases = {
        "short.txt": "0.5 1.0\n",
        "range.txt": "0.0 0.0\n1.5 0.1\n",
        "order.txt": "0.5 0.0\n0.5 0.1\n",
        "nan.txt": "0.0 nan\n1.0 0.1\n",
    }
    for name, content in cases.items():
        path = tmp_path / name
        path.write_text(content)
        with pytest.raises(ValueError):
            SymmetryFunction.from_table(str(path))


def test_thermal_average_endothermic_suppression():
    # deep in the forbidden regime the endothermic rate collapses
    T = 1e-6
    B = field_for_eta(30.0, T)
    k = thermal_average(T, B, CR, HEAVISIDE, "ssf_fwd")
    k0 = thermal_average(T, 0.0, CR, HEAVISIDE, "ssf_fwd")
    assert k < 1e-10 * k0
