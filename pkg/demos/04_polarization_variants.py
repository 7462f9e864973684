"""What imperfect pumping costs.

Two knobs spoil the ideal run in different ways.  A dirtier pump beam
(p = 1e-2 instead of 1e-3) scatters photons off the dark state, and
the extra recoils cap the reachable phase-space density.  A tighter
population target (N2/N1 = 0.005 instead of 0.02) keeps the sample
better polarised and cools faster at first, but needs more photons per
removed quantum, so it stalls at a higher temperature.
"""

import math

import numpy as np

from demagcool import (
    GasState,
    HarmonicTrap,
    LossParams,
    ModelParams,
    PumpParams,
    chromium_52,
    simulate,
)

species = chromium_52()
trap = HarmonicTrap(2.0 * math.pi * 500.0)
loss = LossParams(tau_bg=200.0, L_3b=1e-41)
initial = GasState(N1=5e6, N2=0.0, T=200e-6)


def run(p, r):
    pump = PumpParams(p=p, target_ratio=r, gamma_min=30.0, gamma_max=2000.0)
    return simulate(initial, ModelParams(species=species, trap=trap, loss=loss, pump=pump))


runs = {
    "baseline (p=1e-3, r=0.02)": run(1e-3, 0.02),
    "impure pump (p=1e-2)": run(1e-2, 0.02),
    "tight ratio (r=0.005)": run(1e-3, 0.005),
}

print(f"{'run':<28} {'t_end':>6} {'T_f (uK)':>9} {'N_f':>10} {'peak rho':>9}")
for name, traj in runs.items():
    f = traj.final
    peak = max(rec.rho for rec in traj.records)
    print(f"{name:<28} {f.t:6.2f} {f.T * 1e6:9.3f} {f.N1 + f.N2:10.3e} {peak:9.3f}")

base = runs["baseline (p=1e-3, r=0.02)"]
impure = runs["impure pump (p=1e-2)"]
tight = runs["tight ratio (r=0.005)"]

gap = math.log10(
    max(r.rho for r in base.records) / max(r.rho for r in impure.records)
)
print(f"\nimpure pump: peak phase-space density {gap:.2f} decades below baseline")

print("tight ratio: density runs ahead early ...")
tb, nb = base.column("t"), base.column("n0")
tt, nt = tight.column("t"), tight.column("n0")
for probe in (1.0, 2.0, 3.0):
    ratio = np.interp(probe, tt, nt) / np.interp(probe, tb, nb)
    print(f"  n0(tight)/n0(baseline) at {probe:.0f} s: {ratio:.3f}")
print(f"... but ends {tight.final.T / base.final.T:.1f}x hotter "
      f"({tight.final.T * 1e6:.2f} uK vs {base.final.T * 1e6:.2f} uK)")
