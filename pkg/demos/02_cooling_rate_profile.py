"""Where to hold the field while cooling continuously.

With the pump running, the field (expressed as the cutoff parameter
eta_B = 2 mu_B B / k_B T) trades flip probability against energy
removed per flip.  The analytic cooling rate of a polarised cloud has
a single maximum; this script profiles it and shows how the optimum
depends on spin.
"""

import math

from demagcool import HarmonicTrap, chromium_52, cooling_rate_estimate, optimal_eta

species = chromium_52()
trap = HarmonicTrap(2.0 * math.pi * 500.0)
T = 200e-6
N = 5e6

print(f"chromium, N = {N:.0e}, T = {T * 1e6:.0f} uK, trap 2 pi x 500 Hz")
print(f"{'eta_B':>6} {'dT/dt (uK/s)':>14}")
for i in range(13):
    eta = 0.25 * i
    rate = cooling_rate_estimate(T, N, trap, eta, species)
    bar = "#" * int(round(-rate / 1e-6 * 1.2))
    print(f"{eta:6.2f} {rate * 1e6:14.4f}  {bar}")

eta_best = optimal_eta(species.spin_S)
best = cooling_rate_estimate(T, N, trap, eta_best, species)
print(f"\noptimum at eta_B = {eta_best:.5f}: dT/dt = {best * 1e6:.4f} uK/s")
print(f"cooling the 200 uK cloud at this pace takes ~{T / -best:.0f} s to first order")

# the optimum barely moves with S, approaching the golden ratio from below
print(f"\n{'S':>8} {'eta_opt':>10}")
for spin in (0.5, 1.0, 3.0, 6.0, 100.0, 1e6):
    print(f"{spin:8g} {optimal_eta(spin):10.6f}")
print(f"{'limit':>8} {(1 + math.sqrt(5)) / 2:10.6f}  (golden ratio)")
