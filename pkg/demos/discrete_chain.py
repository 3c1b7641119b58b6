#!/usr/bin/env python3
"""discrete_chain.py

The infinite chain of discrete dipoles, parallel and perpendicular to the
axis. Unlike the continuous line, the decay rate scales like 1/(k0 d) and
grows without bound as the spacing shrinks, and the perpendicular Lamb
shift diverges at the light line.
"""

import math

from helirad.discrete import DiscreteLineParams, Orientation, discrete_line_decay, discrete_line_lamb

for frac in (0.5, 0.1, 0.02):
    params = DiscreteLineParams(k0d=2.0 * math.pi * frac, orientation=Orientation.PARALLEL)
    peak = max(discrete_line_decay(params, 0.01 * i) for i in range(101))
    print(f"d/lambda0 = {frac:<5} max Gamma_par/gamma = {peak:.2f}")

print()
d = 2.0 * math.pi * 0.05
par = DiscreteLineParams(k0d=d, orientation=Orientation.PARALLEL)
perp = DiscreteLineParams(k0d=d, orientation=Orientation.PERPENDICULAR)

print(f"{'kappa':>6} {'E_par':>12} {'E_perp':>12} {'G_par':>8} {'G_perp':>8}")
for kappa in (0.0, 0.5, 0.9, 1.0, 1.1, 1.5):
    ep = discrete_line_lamb(par, kappa)
    eq = discrete_line_lamb(perp, kappa)
    gp = discrete_line_decay(par, kappa)
    gq = discrete_line_decay(perp, kappa)
    print(f"{kappa:>6.2f} {ep:>12.4f} {eq:>12.4f} {gp:>8.3f} {gq:>8.3f}")

print()
print("E_perp hits -inf exactly at kappa = 1; E_par stays finite there.")
