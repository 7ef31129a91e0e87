"""Why the security model contains cascades: the structural measurements.

Small communities with small conductance, degree priority (a node's own
color dominates its neighborhood), power-law degrees globally and inside
communities, and short distances.
"""

import math

import numpy as np

import cascadelab as cl
from cascadelab.structure import community_conductances, degree_priority_summary

N, D, A, SEED = 50_000, 10, 1.5, 11

g = cl.gen_security(N, D, A, master_seed=SEED)
ln_n = math.log(N)
coms = cl.communities(g)
sizes = np.array([c.size for c in coms])
print(f"{g!r}")
print(f"{len(coms)} communities, max size {sizes.max()} "
      f"(vs (ln n)^(a+1) = {ln_n ** (A + 1):.0f})")

# conductance: most communities sit well below 1
cc = community_conductances(g)
phis = np.array([r.conductance for r in cc.values()])
beta = (A - 1) / (4 * (A + 1))
scaled = np.array([r.conductance * r.size ** beta for r in cc.values()])
print(f"community conductance: median {np.median(phis):.3f}, "
      f"90th pct of phi*|W|^beta = {np.quantile(scaled, 0.9):.3f}")

# degree priority: the own-color class dominates almost every neighborhood
s = degree_priority_summary(g)
own = s.own_color_first(g)
print(f"own color is the largest neighbor class for {own.mean():.1%} of nodes")
print(f"median second degree {np.median(s.second_degree):.0f}, "
      f"median profile length {np.median(s.length):.0f}")
seed_first = s.first_degree[g.is_seed]
print(f"seed first degrees: median {np.median(seed_first):.0f} "
      f"(vs log^((a+1)/4) n = {ln_n ** ((A + 1) / 4):.1f})")

# power laws: global degrees and the degrees inside one big community
fit = cl.powerlaw_exponent(g.degrees, D)
print(f"global degree power law: alpha {fit.exponent:.2f}, "
      f"ccdf r^2 {fit.ccdf_r2:.3f}")
big = max(coms, key=lambda c: c.size)
inner = g.degrees[big.members]
fit_in = cl.powerlaw_exponent(inner, max(2, int(np.median(inner) // 2)))
print(f"largest community ({big.size} nodes) degree fit: "
      f"alpha {fit_in.exponent:.2f}, r^2 {fit_in.ccdf_r2:.3f}")

# small world
st = cl.distance_stats(g, 500, seed=SEED)
print(f"avg distance {st.avg_distance:.2f} (ln n = {ln_n:.1f}), "
      f"diameter >= {st.est_diameter}")
dia = cl.community_diameters(g)
finite = [v for v in dia.values() if math.isfinite(v)]
print(f"community diameters: max {max(finite):.0f} "
      f"(ln ln n = {math.log(ln_n):.2f})")
