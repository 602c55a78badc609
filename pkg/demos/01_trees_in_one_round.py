"""
Trees are solved by a single round
==================================

On a tree every edge can be cut. One round of the tree-ordered ansatz with
every angle at pi/2 maps |+...+> to an equal superposition of the two optimal
bipartitions, so the expected cut equals the number of edges.
"""

import math

import numpy as np

from ihva import arrange_round, build_ihva_tree, random_tree
from ihva import simulator as sim

###############################################################################
# A small tree and its gate order
# -------------------------------
# The layout starts at the tree center and emits edges parent-first.

g = random_tree(8, seed=3)
layout = arrange_round(g)
print("edges:", g.pairs)
print("gate order (Z qubit, Y qubit):", layout.gates)

###############################################################################
# All angles at pi/2

c = build_ihva_tree(g)
psi = sim.run(c, np.full(c.n_params, math.pi / 2))
report = sim.energy(psi, g)
print(f"expected cut {report.cut:.12f} of {g.m} edges")

support = np.flatnonzero(np.abs(psi) > 1e-9)
print("basis states in the output:", [sim.bitstring(i, g.n) for i in support])
print("amplitudes:", psi[support])

###############################################################################
# The same thing for a range of sizes

for n in range(4, 17, 3):
    t = random_tree(n, seed=n)
    c = build_ihva_tree(t)
    cut = sim.energy(sim.run(c, np.full(c.n_params, math.pi / 2)), t).cut
    print(f"n={n:2d}  cut={cut:.9f}  n-1={n - 1}")
