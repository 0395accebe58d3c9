"""
Flat plates with a static coefficient
-------------------------------------

A constant Casimir coefficient reproduces the textbook parallel-plate
numbers: energy per area C/d^3, pressure 3C/d^4, and a stress tensor whose
trace vanishes identically because nothing runs with scale.
"""

import math

import numpy as np

from castrace import CoefficientModel, energy_per_area, normal_pressure, vacuum_stress

c0 = -math.pi**2 / 720.0
model = CoefficientModel(c0=c0)

print(f"coefficient c0 = -pi^2/720 = {c0:.12g}\n")
print(f"{'d':>8}  {'e(d)':>15}  {'P_perp(d)':>15}  {'trace':>7}")
for d in np.geomspace(0.25, 4.0, 9):
    stress = vacuum_stress(model, d)
    print(
        f"{d:8.4f}  {energy_per_area(model, d):15.6e}  "
        f"{normal_pressure(model, d):15.6e}  {stress.trace:7.1f}"
    )

print("\nAt unit separation:")
print(f"  e(1)      = {energy_per_area(model, 1.0):.12e}   (-pi^2/720 = {c0:.12e})")
print(f"  P_perp(1) = {normal_pressure(model, 1.0):.12e}   (-pi^2/240 = {-math.pi**2/240:.12e})")

stress = vacuum_stress(model, 1.0)
print("\nStress tensor diag(-rho, P_par, P_par, P_perp):")
print(f"  rho_vac    = {stress.rho_vac:+.6e}")
print(f"  P_parallel = {stress.p_parallel:+.6e}")
print(f"  P_perp     = {stress.p_perp:+.6e}")
print(f"  trace      = {stress.trace:+.1f}  (exactly zero for any static C)")
