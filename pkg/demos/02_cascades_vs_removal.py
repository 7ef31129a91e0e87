"""Threshold cascades dwarf physical node removal.

Attack the top-degree nodes of an ER and a PA network two ways: delete
them (injury = survivors cut off from the largest component) or use them
to ignite a threshold cascade with random thresholds phi(v) = r/deg(v).
The cascade reaches orders of magnitude more nodes than the deletion
injures, and PA's hubs make it far more fragile than ER.
"""

import math

import numpy as np

import cascadelab as cl

N, D, TRIALS = 10_000, 10, 50
SEED = 7

for model in ("er", "pa"):
    g = cl.generate(model, N, D, master_seed=SEED)
    print(f"--- {model}  ({g.m} edges)")
    for k in (1, 5, 10, 25, 47):  # up to ceil(5 ln n)
        attack = cl.top_degree_nodes(g, k)
        injured = cl.injury_set(g, attack).shape[0] / N
        worst = 0.0
        for t in range(TRIALS):
            theta = cl.random_thresholds(g, cl.derive_trial_seed(SEED, "demo2", model, N, t))
            worst = max(worst, cl.infection_set(g, attack, theta).fraction)
        print(f"  k={k:3d}  injured {injured:8.5f}   max infected {worst:.3f}")

print()
print("uniform thresholds: higher phi contains the cascade")
g = cl.gen_pa(N, D, master_seed=SEED)
attack = cl.top_degree_nodes(g, math.ceil(math.log(N)))
for phi in (0.05, 0.1, 0.2, 0.3, 0.5):
    out = cl.infection_set(g, attack, cl.uniform_thresholds(g, phi))
    print(f"  phi={phi:.2f}  infected fraction {out.fraction:.4f} "
          f"in {out.rounds} rounds")
grid = [i / 100 for i in range(1, 51)]
phi_star = cl.security_threshold(g, attack, grid, epsilon=0.1)
print(f"smallest phi on the grid containing the attack at 10%: {phi_star}")
