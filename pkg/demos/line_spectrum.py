#!/usr/bin/env python3
"""line_spectrum.py

Decay rate and Lamb shift of the infinite continuous line of emitters.

Every plane-wave state inside the light line (|kappa| <= 1) decays at the
same normalized rate, every state outside is perfectly trapped, and the
Lamb shift diverges to -inf exactly at the light line.
"""

from helirad.spectra import EmitterPhysics, line_table, kappa_grid

physics = EmitterPhysics(gamma=0.514, lambda0=280.0, n0=1.0 / 280.0)

table = line_table(kappa_grid(-2.0, 2.0, 0.25), physics)

print(f"{'kappa':>6} {'Gamma_norm':>11} {'E_norm':>12}  class")
for p in table.points:
    print(f"{p.kappa:>6.2f} {p.gamma_norm:>11.6f} {p.lamb_norm:>12.6f}  {p.classification.value}")

# the center of the radiant band carries the known shift value
center = next(p for p in table.points if p.kappa == 0.0)
print()
print(f"E_norm(0) = {center.lamb_norm:.10f}  (twice the Euler constant, negated)")
