"""
Circuit depth and light cones
=============================

The tree layout is sequential along each tree, so its depth grows with n but
stays between a logarithmic lower bound and n*D/2. The stagger layout is
shallow, and each edge observable only sees a few qubits. The tree layout has
edges whose backward light cone spans the whole register.
"""

from ihva import build_ihva_stagger, build_ihva_tree, circuit_depth, depth_scan, lightcone_scan, ring_graph

scan = depth_scan([3, 4], [8, 12, 16, 20], trials=10, seed=0)
print(scan.csv())

for n in (8, 12, 16):
    g = ring_graph(n)
    tree, stag = build_ihva_tree(g), build_ihva_stagger(g)
    lt, ls = lightcone_scan(g, tree), lightcone_scan(g, stag)
    print(f"ring n={n:2d}  depth tree {circuit_depth(tree):2d} stagger {circuit_depth(stag)}  "
          f"cone tree max {lt.max:2d}  stagger min/max {ls.min}/{ls.max}")
