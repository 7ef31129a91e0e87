"""The community priority tree, community strength, and seed routing.

Dropping the seed-to-seed link edges and contracting each color class
leaves a tree whose edges all point from later-born communities to
earlier ones; its height stays logarithmic.  The same seed backbone
supports a three-stage navigation routine whose paths are near-shortest.
"""

import math

import numpy as np

import cascadelab as cl
from cascadelab.structure import pair_distances, sample_lcc_pairs

N, D, A, SEED = 30_000, 10, 1.5, 5

g = cl.gen_security(N, D, A, master_seed=SEED)
tree = cl.infection_priority_tree(g)
print(f"{g!r}")
print(f"priority tree: {len(tree.vertex_colors)} vertices, "
      f"is_tree={tree.is_tree}, height={tree.height} (ln n = {math.log(N):.1f})")

# strong vs vulnerable communities under random thresholds
theta = cl.random_thresholds(g, SEED)
k = cl.count_vulnerable(g, theta)
n_coms = len(cl.communities(g))
print(f"vulnerable communities: {k} of {n_coms} ({k / n_coms:.1%}) "
      f"under one random-threshold draw")
for phi in (0.1, 0.3, 0.5):
    k = cl.count_vulnerable(g, cl.uniform_thresholds(g, phi))
    print(f"  uniform phi={phi:.1f}: {k} vulnerable")

# navigation: climb to the seed, cross the seed subgraph, descend
pair_u, pair_v = sample_lcc_pairs(g, 300, seed=SEED)
exact = pair_distances(g, pair_u, pair_v)
budget = 10 * math.ceil(math.log(N))
hops, visited, won = [], [], 0
for u, v in zip(pair_u, pair_v):
    res = cl.navigate(g, int(u), int(v), budget)
    if res.succeeded:
        won += 1
        hops.append(res.hops)
        visited.append(res.visited)
print(f"\nnavigation over {len(pair_u)} pairs: success {won / len(pair_u):.1%}")
print(f"mean hops {np.mean(hops):.2f} vs mean BFS distance "
      f"{exact[np.isfinite(exact)].mean():.2f} "
      f"(stretch {np.mean(hops) / exact[np.isfinite(exact)].mean():.2f})")
print(f"mean nodes expanded per query: {np.mean(visited):.1f}")

example = cl.navigate(g, int(pair_u[0]), int(pair_v[0]), budget)
print(f"example route {pair_u[0]} -> {pair_v[0]}: {list(example.path)}")
