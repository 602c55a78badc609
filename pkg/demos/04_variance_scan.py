"""
Gradient-landscape flatness
===========================

For uniformly random parameters the energy divided by the ground-state energy
has mean zero. How fast its variance shrinks with n depends on the graph
family: slowly for regular graphs, quickly for dense random graphs.
"""

import numpy as np

from ihva import build_ihva_tree, erdos_renyi, fit_log_slope, random_regular, variance_scan

###############################################################################
# Regular graphs against the analytic lower bound

for n in (6, 8, 10):
    g = random_regular(n, 3, seed=n)
    v = variance_scan(g, build_ihva_tree(g, 2), n_samples=512, seed=n)
    print(f"3-regular n={n:2d}  mean {v.mean:+.4f} +/- {v.stderr:.4f}  var {v.variance:.4f}  bound {v.bound:.2e}")

###############################################################################
# Slopes of log-variance

curves = {}
for family in ("3-regular", "ER q=0.5"):
    ns, vs = [], []
    for n in (8, 10, 12):
        vals = []
        for k in range(3):
            g = random_regular(n, 3, seed=[n, k]) if family == "3-regular" else erdos_renyi(n, 0.5, seed=[n, k], connected=True)
            vals.append(variance_scan(g, build_ihva_tree(g, 2), n_samples=512, seed=[n, k]).variance)
        ns.append(n)
        vs.append(np.mean(vals))
    curves[family] = fit_log_slope(ns, vs)
    print(f"{family:9s} slope {curves[family][0]:+.3f} +/- {curves[family][1]:.3f}")
