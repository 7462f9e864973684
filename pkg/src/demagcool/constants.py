"""Physical constants (SI, CODATA 2018).

These are fixed at build time and are deliberately not configurable:
every derived quantity in the rate model (Zeeman splitting, dipolar
cross sections, recoil energies) must agree with the closed-form
expressions evaluated against the same constants.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0545718176461565e-34  # reduced Planck constant (J s)
    k_B: float = 1.380649e-23             # Boltzmann constant (J/K)
    mu_B: float = 9.2740100783e-24        # Bohr magneton (J/T)
    mu_0: float = 1.25663706212e-6        # vacuum permeability (T m / A)


CONST = PhysicalConstants()

# atomic mass unit (kg)
ATOMIC_MASS_KG = 1.66053906660e-27
