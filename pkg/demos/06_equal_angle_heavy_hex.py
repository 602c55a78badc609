"""
Equal-angle circuits on signed heavy-hex patches
================================================

Every gate shares one angle and the edge signs go into the gate signs. The
tree layout with one parameter is compared with two-parameter QAOA, each
trained by COBYLA on a sampled CVaR(0.1) for 20 evaluations and then sampled
2048 times.
"""

from ihva import (OptimizerConfig, assign_random_signs, brute_force_maxcut, build, greedy_maxcut,
                  heavy_hex_patch, minimize, ratio_distribution)
from ihva import simulator as sim

cfg = OptimizerConfig(method="derivative-free", max_iters=20, restarts=1, objective="cvar:0.1", shots=2048)

for seed in range(5):
    g = assign_random_signs(heavy_hex_patch(16, seed=seed), seed=[seed, 1])
    c_max = brute_force_maxcut(g).cut_value
    line = [f"seed {seed}: C_max={c_max}"]
    for kind in ("equal-ihva-tree", "equal-qaoa"):
        c = build(kind, g)
        r = minimize(c, g, cfg)
        d = ratio_distribution(sim.run(c, r.best_params), g, c_max, shots=2048, seed=seed)
        line.append(f"{kind} max {d.max:.3f} mean {d.mean:.3f}")
    line.append(f"greedy {greedy_maxcut(g, seed=seed).cut_value / c_max:.3f}")
    print("  ".join(line))
