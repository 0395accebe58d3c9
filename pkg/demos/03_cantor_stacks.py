"""
Scalar Casimir energies of Cantor plate stacks
----------------------------------------------

The scattering engine composes delta-plate transfer matrices into an
interaction determinant and integrates its log over imaginary wavenumbers.
This script walks a triadic Cantor family level by level, sanity-checks the
engine against the closed two-body formula and the Dirichlet ceiling, and
shows that a stack and its mirror image attract.
"""

import math

import numpy as np

from castrace import (
    PlateStack,
    cantor_stack,
    mirror_pair,
    pair_energy_per_area,
    stack_energy_per_area,
)

lam = 5.0
print(f"Triadic Cantor stacks on [0, 1], equal couplings lambda = {lam}\n")
print(f"{'level':>5}  {'plates':>6}  {'min gap':>10}  {'E/A':>14}")
for level in range(4):
    stack = cantor_stack(level, 1.0, lam)
    e = stack_energy_per_area(stack)
    print(f"{level:5d}  {len(stack):6d}  {stack.min_gap:10.6f}  {e:14.6e}")

print("\nOuter pair alone vs level-1 stack (inner plates deepen the binding):")
print(f"  pair {{0, 1}}:        {pair_energy_per_area(lam, lam, 1.0):.6e}")
print(f"  level-1 Cantor:     {stack_energy_per_area(cantor_stack(1, 1.0, lam)):.6e}")

print("\nDirichlet benchmark: hard plates at unit distance")
hard = 1e6
print(f"  engine:     {pair_energy_per_area(hard, hard, 1.0):.9e}")
print(f"  -pi^2/1440: {-math.pi**2 / 1440:.9e}")

print("\nDirichlet ceiling: |E| grows monotonically with the coupling")
for lam_i in (0.5, 2.0, 8.0, 32.0, 1e6):
    e = pair_energy_per_area(lam_i, lam_i, 1.0)
    print(f"  lambda = {lam_i:>9.1f}:  E = {e:.6e}")

print("\nScale invariance: E(s z, lambda/s) * s^3 is constant")
stack = cantor_stack(2, 1.0, 3.0)
e_ref = stack_energy_per_area(stack)
for s in (0.5, 2.0, 10.0):
    e = stack_energy_per_area(stack.scaled(s))
    print(f"  s = {s:5.1f}:  E s^3 = {e * s**3:.12e}   (reference {e_ref:.12e})")

print("\nMirror pairs attract: energy rises as the bodies separate")
rng = np.random.default_rng(1)
body = PlateStack(tuple(sorted(rng.uniform(0.0, 1.0, 3))), tuple(rng.uniform(0.5, 5.0, 3)))
for gap in (0.4, 0.8, 1.6):
    joined = mirror_pair(body, gap)
    print(f"  gap = {gap:4.1f}:  E = {stack_energy_per_area(joined):.8e}")
