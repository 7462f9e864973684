"""Acceptance gate: one test per numbered criterion, at the stated tolerance.

Run with -v for one pass/fail line per criterion.  Three clauses are
asserted exactly as specified even though the present model does not
reach them (criterion 3 at S=100, the 5% trajectory-rate clause of
criterion 6, and the 1.0-decade edge of criterion 7); they fail
honestly and each has a companion test pinning the behaviour the model
does attain.
"""

from __future__ import annotations

import math
import random
import time

import numpy as np
import pytest

from test_config import random_config_text

from demagcool import (
    ControlState,
    GasState,
    HarmonicTrap,
    Heaviside,
    IntegratorConfig,
    LossParams,
    ModelParams,
    PumpParams,
    beta_forward_closed_form,
    chromium_52,
    compute_chi,
    cooling_rate_estimate,
    derivative,
    dipolar_exchange,
    equilibrium_curve,
    equilibrium_temperature,
    field_for_eta,
    integrate_fixed,
    mean_volume,
    optimal_eta,
    recoil_temperature,
    simulate,
    thermal_average,
)
from demagcool.cli import main
from demagcool.config import parse_config, render_config
from demagcool.integrator import TrajectoryRecord
from demagcool.output import read_trajectory_csv, write_trajectory_csv

CR = chromium_52()
TRAP = HarmonicTrap(2.0 * math.pi * 500.0)
T0 = 200e-6
N0 = 5e6
GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0

LOSS_OFF = LossParams(tau_bg=math.inf, L_3b=0.0)
PUMP_OFF = PumpParams(p=0.0, target_ratio=0.02, gamma_min=0.0, gamma_max=0.0)


def run_params(p: float = 1e-3, r: float = 0.02) -> ModelParams:
    return ModelParams(
        species=CR,
        trap=TRAP,
        loss=LossParams(tau_bg=200.0, L_3b=1e-41),
        pump=PumpParams(p=p, target_ratio=r, gamma_min=30.0, gamma_max=2000.0),
    )


def timed_run(p: float = 1e-3, r: float = 0.02):
    start = time.perf_counter()
    traj = simulate(GasState(N1=N0, N2=0.0, T=T0), run_params(p, r))
    return traj, time.perf_counter() - start


@pytest.fixture(scope="module")
def baseline():
    return timed_run()


@pytest.fixture(scope="module")
def variant_impure_pump():
    return timed_run(p=1e-2)


@pytest.fixture(scope="module")
def variant_low_ratio():
    return timed_run(r=0.005)


def test_criterion_01_optimal_eta(capsys):
    start = time.perf_counter()
    assert main(["optimal-eta", "--spin", "3"]) == 0
    value_cr = float(capsys.readouterr().out.strip())
    assert main(["optimal-eta", "--spin", "1e6"]) == 0
    value_inf = float(capsys.readouterr().out.strip())
    elapsed = time.perf_counter() - start
    assert abs(value_cr - 1.31) <= 0.02, f"eta_opt(S=3) = {value_cr}"
    assert abs(value_inf - GOLDEN_RATIO) <= 1e-3, f"eta_opt(S=1e6) = {value_inf}"
    assert elapsed < 1.0, f"took {elapsed:.3f} s"


def test_criterion_02_rate_constant_oracle():
    start = time.perf_counter()
    model = Heaviside()
    worst = 0.0
    for T in np.geomspace(1e-6, 1e-3, 20):
        for eta in np.linspace(0.0, 10.0, 20):
            B = field_for_eta(eta, T)
            closed = beta_forward_closed_form(T, B, CR)
            quad = thermal_average(T, B, CR, model, "ssf_fwd") + 2.0 * thermal_average(
                T, B, CR, model, "dsf_fwd"
            )
            worst = max(worst, abs(closed - quad) / closed)
    elapsed = time.perf_counter() - start
    assert worst <= 1e-6, f"worst relative deviation {worst:.3e}"
    assert elapsed < 10.0, f"took {elapsed:.3f} s"


def test_criterion_03_equilibrium_solver():
    # residual of the energy balance on a spin x field grid
    fields = [0.0] + [field_for_eta(x, T0) for x in np.geomspace(1e-4, 100.0, 25)]
    for spin in (0.5, 1.0, 2.0, 3.0, 6.0):
        for point in equilibrium_curve(T0, spin, 1.5, fields):
            assert abs(point.residual) <= 1e-10, f"S={spin}, B={point.B}: {point.residual}"
    # infinite-field limit: no flips possible, temperature unchanged
    frozen = equilibrium_temperature(T0, 1.0, 100.0, 1.5)
    assert abs(frozen - T0) / T0 <= 1e-9
    # deep-quench clause as stated: S=100 at eta(T0) = 1e-3
    ratio = equilibrium_temperature(T0, field_for_eta(1e-3, T0), 100.0, 1.5) / T0
    assert abs(ratio - 0.75) <= 0.01, f"T_eq/T0 = {ratio:.6f}, expected 0.75 +- 0.01"


def test_criterion_03_companion_unbounded_spin_reaches_limit():
    # (3/2 + alpha)/(5/2 + alpha) = 3/4 requires the sublevel ladder to
    # act as an unbounded reservoir; S=100 still saturates at eta = 1e-3,
    # S = 1e6 does not
    ratio = equilibrium_temperature(T0, field_for_eta(1e-3, T0), 1e6, 1.5) / T0
    assert abs(ratio - 0.75) <= 0.01, f"T_eq/T0 = {ratio:.6f}"


def test_criterion_04_conservation():
    params = ModelParams(species=CR, trap=TRAP, loss=LOSS_OFF, pump=PUMP_OFF)
    control = ControlState(field_for_eta(50.0, T0), 0.0)
    config = IntegratorConfig(t_max=10.0)
    traj = integrate_fixed(GasState(N1=N0, N2=0.0, T=T0), control, params, config)
    assert traj.termination == "t_max"
    drift = abs(traj.final.T - T0) / T0
    assert drift <= 1e-6, f"|dT|/T = {drift:.3e} over 10 s"


def test_criterion_05_detailed_balance():
    params = ModelParams(species=CR, trap=TRAP, loss=LOSS_OFF, pump=PUMP_OFF)
    for eta in (0.5, 1.31, 3.0):
        T = 60e-6
        B = field_for_eta(eta, T)
        n1 = 1e6
        state = GasState(N1=n1, N2=n1 * math.exp(-eta), T=T)
        net, _ = dipolar_exchange(state, B, params)
        one_way = beta_forward_closed_form(T, B, CR) * n1 * n1 / mean_volume(TRAP, T, CR.mass)
        assert abs(net) <= 1e-3 * one_way, f"eta={eta}: net/one-way = {abs(net) / one_way:.3e}"


def test_criterion_06_baseline_trajectory(baseline):
    traj, elapsed = baseline
    t = traj.column("t")
    T = traj.column("T")
    B = traj.column("B")
    N = traj.column("N1") + traj.column("N2")
    rho = traj.column("rho")

    # (b) temperature and field fall monotonically through the first 7 s
    early = t <= 7.0
    assert np.all(np.diff(T[early]) < 0.0), "T not monotone over the first 7 s"
    assert np.all(np.diff(B[early]) < 0.0), "B not monotone over the first 7 s"

    # (c) >= 4.5 decades of phase-space density gained before the peak,
    # with no more than 10% of the atoms spent getting there
    peak = int(np.argmax(rho))
    gain = rho / rho[0]
    crossing = int(np.argmax(gain >= 10**4.5))
    assert gain[crossing] >= 10**4.5, f"total gain {math.log10(gain[peak]):.2f} decades"
    assert crossing <= peak
    loss_at_crossing = 1.0 - N[crossing] / N[0]
    assert loss_at_crossing <= 0.10, f"lost {loss_at_crossing:.2%} before 4.5 decades"

    # (d) final field lands in the 3..30 mG window
    assert 3e-7 <= B[-1] <= 30e-7, f"final B = {B[-1] / 1e-7:.2f} mG"

    # (e) final temperature within a factor 3 of the recoil limit
    t_rec = recoil_temperature(CR)
    assert t_rec / 3.0 <= T[-1] <= 3.0 * t_rec, f"T_final/T_rec = {T[-1] / t_rec:.3f}"

    # (f) peak cooling efficiency
    chi_max = float(np.nanmax(compute_chi(traj)))
    assert 90.0 <= chi_max <= 1000.0, f"max chi = {chi_max:.1f}"

    assert elapsed <= 120.0, f"took {elapsed:.1f} s"

    # (a) mean dT/dt over the first second matches the analytic rate to 5%
    first = t <= 1.0
    design = np.vstack([t[first], np.ones(int(first.sum()))]).T
    slope = float(np.linalg.lstsq(design, T[first], rcond=None)[0][0])
    analytic = cooling_rate_estimate(T0, N0, TRAP, optimal_eta(CR.spin_S), CR)
    deviation = abs(slope - analytic) / abs(analytic)
    assert deviation <= 0.05, (
        f"first-second dT/dt {slope:.4e} vs analytic {analytic:.4e} ({deviation:.2%})"
    )


def test_criterion_06_companion_instantaneous_rate_matches():
    # at t=0 the pump and loss terms are negligible and the analytic rate
    # holds; the 5% clause fails only over the 1 s average, where T and
    # the backward flows have already moved
    params = run_params()
    control = ControlState(field_for_eta(optimal_eta(CR.spin_S), T0), params.pump.gamma_min)
    d0 = derivative(GasState(N1=N0, N2=0.0, T=T0), control, params)
    analytic = cooling_rate_estimate(T0, N0, TRAP, optimal_eta(CR.spin_S), CR)
    assert abs(d0.dT - analytic) / abs(analytic) <= 0.05


def test_criterion_07_variants(baseline, variant_impure_pump, variant_low_ratio):
    base, _ = baseline
    impure, _ = variant_impure_pump
    low_ratio, _ = variant_low_ratio

    # r = 0.005: better polarisation cools faster early on
    t_b = base.column("t")
    t_v = low_ratio.column("t")
    for probe in (1.0, 2.0, 3.0):
        n0_b = float(np.interp(probe, t_b, base.column("n0")))
        n0_v = float(np.interp(probe, t_v, low_ratio.column("n0")))
        assert n0_v > n0_b, f"density at {probe} s: {n0_v:.3e} <= {n0_b:.3e}"
    # ... at the price of a higher final temperature
    final_T = low_ratio.final.T
    assert 1e-6 <= final_T <= 3e-6, f"final T = {final_T * 1e6:.2f} uK"

    # p = 1e-2: pump heating caps the reachable phase-space density
    decades = math.log10(max(r.rho for r in base.records) / max(r.rho for r in impure.records))
    assert 1.0 <= decades <= 2.0, f"peak PSD reduced by {decades:.3f} decades"


def test_criterion_07_companion_impure_pump_psd_penalty(baseline, variant_impure_pump):
    # the reduction the model attains is just under one decade
    base, _ = baseline
    impure, _ = variant_impure_pump
    decades = math.log10(max(r.rho for r in base.records) / max(r.rho for r in impure.records))
    assert 0.9 <= decades <= 2.0, f"peak PSD reduced by {decades:.3f} decades"
    assert impure.final.rho < base.final.rho


def test_criterion_08_integrator_order():
    def decay_params(tau: float) -> ModelParams:
        return ModelParams(
            species=CR, trap=TRAP, loss=LossParams(tau_bg=tau, L_3b=0.0), pump=PUMP_OFF
        )

    control = ControlState(field_for_eta(50.0, T0), 0.0)

    def fixed_step_error(h: float) -> float:
        config = IntegratorConfig(
            rel_tol=0.5, dt_init=h, dt_min=h, dt_max=h, t_max=1.0, N_floor=0.0
        )
        traj = integrate_fixed(GasState(N1=1e6, N2=0.0, T=T0), control, decay_params(1.0), config)
        exact = 1e6 * math.exp(-traj.final.t)
        return abs(traj.final.N1 + traj.final.N2 - exact) / exact

    order = math.log2(fixed_step_error(0.1) / fixed_step_error(0.05))
    assert order >= 4.0, f"measured order {order:.2f}"

    # adaptive run against the exact exponential at t = tau
    tau = 2.0
    config = IntegratorConfig(rel_tol=1e-10, t_max=tau, N_floor=0.0)
    traj = integrate_fixed(GasState(N1=1e6, N2=0.0, T=T0), control, decay_params(tau), config)
    exact = 1e6 * math.exp(-1.0)
    deviation = abs(traj.final.N1 + traj.final.N2 - exact) / exact
    assert deviation <= 1e-8, f"relative deviation {deviation:.3e} at t = tau"


def test_criterion_09_io_round_trips(tmp_path):
    table = tmp_path / "h.txt"
    table.write_text("0.0 0.0\n0.5 0.05\n1.0 0.2\n")
    rng = random.Random(424242)
    for _ in range(100):
        cfg = parse_config(random_config_text(rng, str(table)))
        assert parse_config(render_config(cfg)) == cfg

    records = [
        TrajectoryRecord(*(rng.uniform(-1.0, 1.0) * 10.0 ** rng.uniform(-30, 10) for _ in range(12)))
        for _ in range(300)
    ]
    path = str(tmp_path / "round.csv")
    write_trajectory_csv(records, path)
    assert read_trajectory_csv(path) == records
