"""
CVaR training against the Goemans-Williamson baseline
=====================================================

With a CVaR objective only the best tenth of the output distribution is
scored, so the optimizer can concentrate weight on optimal cuts. The
classical baseline is the low-rank SDP relaxation with one hyperplane rounding per
run, best of five runs.
"""

from ihva import OptimizerConfig, brute_force_maxcut, build_ihva_tree, gw_maxcut, minimize, random_regular

cfg = OptimizerConfig(objective="cvar:0.1")

for D in (3, 4, 5):
    for seed in range(3):
        g = random_regular(12, D, seed=[D, seed])
        c_max = brute_force_maxcut(g).cut_value
        r = minimize(build_ihva_tree(g, 2), g, cfg, c_max=c_max)
        gw = max(gw_maxcut(g, seed=[D, seed, k], rounding_trials=1).cut_value for k in range(5))
        print(f"D={D} graph {seed}: C_max={c_max:3d}  CVaR alpha={r.approx_ratio:.4f}  "
              f"<cut>={r.expected_cut:.2f}  G-W alpha={gw / c_max:.4f}")
