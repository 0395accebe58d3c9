"""
Scaling windows for finite-level prefractal devices
---------------------------------------------------

A level-n device with outer scale L and reduction b resolves features down
to ell_n = L b^-n.  A probe separation d couples to the self-similarity only
inside ell_n <= d <= L/margin, which pins the minimum fabrication depth
n >= ln(L/d)/ln(b).
"""

import numpy as np

from castrace import PrefractalSpec, in_window, min_feature, min_level

L, b, d = 1.0, 3.0, 0.01
n_min = min_level(L, b=b, d=d)
print(f"outer scale L = {L}, reduction b = {b}, separation d = {d}")
print(f"required depth: min_level = {n_min}\n")

print(f"{'n':>3}  {'ell_n':>12}  {'ell_n <= d':>10}  {'d <= L/10':>10}  {'in window':>9}")
for n in range(n_min + 3):
    spec = PrefractalSpec(outer_scale=L, reduction=b, level=n)
    ell = min_feature(spec)
    print(
        f"{n:3d}  {ell:12.6e}  {str(ell <= d):>10}  {str(d <= L / 10):>10}  "
        f"{str(in_window(spec, d)):>9}"
    )

print("\nDepth needed as the probe separation shrinks:")
for sep in (0.3, 0.1, 0.03, 0.01, 0.001):
    print(f"  d = {sep:6.3f}:  min_level = {min_level(L, sep, b)}")

print("\nA tighter margin narrows the usable window (level 5 device):")
spec = PrefractalSpec(outer_scale=L, reduction=b, level=5)
for margin in (2.0, 10.0, 50.0):
    seps = np.geomspace(min_feature(spec), L, 200)
    inside = [s for s in seps if in_window(spec, s, margin)]
    if inside:
        print(f"  margin {margin:5.1f}:  window [{inside[0]:.4e}, {inside[-1]:.4e}]")
    else:
        print(f"  margin {margin:5.1f}:  window empty")
