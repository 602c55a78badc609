"""
Comparing ansatz layouts on 3-regular graphs
============================================

Each ansatz is optimized from small-constant starts with five restarts and the
best restart is kept. The approximation ratio is the expected cut over the
true maximum.
"""

import numpy as np

from ihva import OptimizerConfig, brute_force_maxcut, build, minimize, random_regular

kinds = [("ihva-tree", 2), ("ihva-tree", 1), ("ihva-stagger", 1), ("ma-qaoa", 1)]
n, graphs = 8, 6

###############################################################################
# Optimize every ansatz on the same graphs

ratios = {k: [] for k in kinds}
for seed in range(graphs):
    g = random_regular(n, 3, seed=[n, seed])
    c_max = brute_force_maxcut(g).cut_value
    for kind, p in kinds:
        r = minimize(build(kind, g, p), g, OptimizerConfig(seed=seed), c_max=c_max)
        ratios[kind, p].append(r.approx_ratio)

###############################################################################
# Medians
# -------
# Two rounds of the tree layout usually reach the maximum; one round of
# ma-QAOA trails the one-round tree layout, with the stagger layout in between.

for (kind, p), vals in ratios.items():
    print(f"{kind:13s} p={p}  median alpha {np.median(vals):.4f}  min {np.min(vals):.4f}")
