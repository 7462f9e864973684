"""Sudden demagnetisation of a polarised cloud.

A fully polarised spin-3 gas is prepared at 200 uK, then the field is
dropped to B and the spins equilibrate with the motion.  Solving the
energy balance for each B traces out how much of the kinetic energy
the Zeeman ladder can swallow: nothing at B = 0 (the ladder is flat)
and nothing at large B (flips are frozen out), with a single optimum
in between.
"""

import math

import numpy as np

from demagcool import equilibrium_curve, eta_B, field_for_eta

T0 = 200e-6
SPIN = 3.0
ALPHA = 1.5  # harmonic trap

fields = [0.0] + [field_for_eta(x, T0) for x in np.geomspace(1e-4, 50.0, 40)]
curve = equilibrium_curve(T0, SPIN, ALPHA, fields)

print(f"single quench, S = {SPIN}, T0 = {T0 * 1e6:.0f} uK")
print(f"{'B (mG)':>10} {'eta_B(T0)':>10} {'T_eq (uK)':>10} {'T_eq/T0':>8}")
for point in curve[::5]:
    print(
        f"{point.B / 1e-7:10.3f} {point.eta_B0:10.4f} "
        f"{point.T_eq * 1e6:10.2f} {point.ratio:8.4f}"
    )

best = min(curve, key=lambda p: p.ratio)
print(f"\nstrongest single-shot cooling: T_eq/T0 = {best.ratio:.4f}")
print(f"  at B = {best.B / 1e-7:.2f} mG, eta_B(T0) = {best.eta_B0:.3f}")
print(f"  residual of the energy balance: {best.residual:.2e}")

# the bound for an unbounded ladder is (3/2 + alpha)/(5/2 + alpha)
bound = (1.5 + ALPHA) / (2.5 + ALPHA)
huge_spin = equilibrium_curve(T0, 1e6, ALPHA, [field_for_eta(1e-3, T0)])[0]
print(f"\nS -> infinity, eta -> 0 limit: {bound:.4f}")
print(f"  reached by S = 1e6 at eta_B = 1e-3: T_eq/T0 = {huge_spin.ratio:.4f}")
print("repeating the quench is what the closed-loop simulation automates")
