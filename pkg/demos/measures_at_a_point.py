#!/usr/bin/env python3
"""Walk through the seven complementarity measures at a few seed points.

The two-crystal interferometer has exactly two physical knobs: the coherent
seed amplitudes alpha_1 and alpha_2 injected into the idler modes.  Everything
else — how well the idler fields identify the signal photon's source, how much
fringe contrast survives — follows in closed form.

Run:  python demos/measures_at_a_point.py
"""

from duality_lab import SeedPair, complementarity_measures, detector_fidelity

points = [
    SeedPair(0.0, 0.0),   # bare down-conversion: orthogonal detectors
    SeedPair(1.0, 1.0),   # balanced seeding, half-overlapping detectors
    SeedPair(2.0, 1.0),   # unbalanced: every measure strictly between 0 and 1
    SeedPair(8.0, 8.0),   # bright equal seeds: detector loses its which-path power
]

header = f"{'alpha1':>7} {'alpha2':>7} | {'D':>7} {'P':>7} {'E':>7} {'V':>7} {'C':>7} {'|F|':>7} {'mu_s':>7}"
print(header)
print("-" * len(header))
for seeds in points:
    m = complementarity_measures(seeds)
    print(
        f"{seeds.alpha1.real:7.2f} {seeds.alpha2.real:7.2f} | "
        f"{m.D:7.4f} {m.P:7.4f} {m.E:7.4f} {m.V:7.4f} {m.C:7.4f} "
        f"{m.F_abs:7.4f} {m.mu_s:7.4f}"
    )

print()
print("The measures are not independent.  At the unbalanced point (2, 1):")
m = complementarity_measures(SeedPair(2, 1))
print(f"  D^2               = {m.D**2:.12f}  (= 33/49)")
print(f"  P^2 + E^2         = {m.P**2 + m.E**2:.12f}")
print(f"  P^2 + E^2 + C^2   = {m.P**2 + m.E**2 + m.C**2:.12f}  (particle + entanglement + wave = 1)")
print(f"  P^2 + C^2         = {m.P**2 + m.C**2:.12f}  (= mu_s^2 = 25/49)")
print(f"  V * |F|           = {m.V * m.F_abs:.12f}  (= C: contrast is fidelity-weighted visibility)")

print()
print("The detector overlap itself is complex; the measures only use |F|:")
for seeds in (SeedPair(2, 1), SeedPair(2j, 1), SeedPair(-2, 1)):
    f = detector_fidelity(seeds)
    print(f"  alpha1={seeds.alpha1!s:>7}, alpha2={seeds.alpha2!s:>5}:  F = {f:.6f}, |F| = {abs(f):.6f}")
