#!/usr/bin/env python3
"""helix_spectrum.py

Band structure of the infinite helix: radiant windows separated by
measure-one stretches of perfectly trapped states.

With Omega = 2 pi/(k0 b) = 3 the Bessel-order windows tile the kappa axis
as [0,1], [2,4], [5,7], ... and everything in between is trapped.
"""

import numpy as np

from helirad.spectra import (
    EmitterPhysics,
    HelixSpec,
    kappa_grid,
    sweep,
    trapped_intervals,
)

spec = HelixSpec(Omega=3.0, r=3.0)
physics = EmitterPhysics(gamma=0.514, lambda0=280.0, n0=1.58)

grid = kappa_grid(0.0, 5.0, 0.01)
table = sweep(grid, spec, physics)

# where the decay is exactly zero, nothing ever leaks out
zeros = [p.kappa for p in table.points if p.gamma_norm == 0.0]
print(f"trapped grid points: {len(zeros)} of {len(grid)}")
print(f"first trapped stretch: kappa = {zeros[0]:.2f} .. ", end="")
run_end = zeros[0]
for k in zeros:
    if k - run_end > 0.011:
        break
    run_end = k
print(f"{run_end:.2f}")

print()
print("predicted intervals:", trapped_intervals(3.0, 5.0).intervals)

# the brightest state sits at the light-line edge kappa = 1
peak = max(table.points, key=lambda p: p.gamma_norm)
print()
print(f"peak Gamma_norm = {peak.gamma_norm:.6f} at kappa = {peak.kappa:.2f}")
print(f"peak Gamma/gamma = {peak.gamma_over_gamma:.1f}  (n0 lambda0 = {physics.n0 * physics.lambda0:.1f})")

counts = {}
for p in table.points:
    counts[p.classification.value] = counts.get(p.classification.value, 0) + 1
print()
print("state census over the grid:", counts)

# Lamb shift sample rows around the first window edge
print()
print(f"{'kappa':>6} {'Gamma_norm':>11} {'E_norm':>12}")
for k in np.arange(0.90, 1.11, 0.05):
    p = table.points[int(round((k - grid[0]) / 0.01))]
    print(f"{p.kappa:>6.2f} {p.gamma_norm:>11.6f} {p.lamb_norm:>12.6f}")
