"""Independent reference implementations used only by the tests.

They share no code with the package: dense Kronecker-product matrices for
Pauli rotations, union-find for connectivity, all-roots enumeration for tree
heights, and plain loops for cut values.
"""

import itertools

import numpy as np
from scipy.linalg import expm

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def dense_pauli(n, support):
    """Matrix of a Pauli string; qubit q is bit q of the index (little-endian)."""
    letters = dict(support)
    mat = np.eye(1, dtype=complex)
    for q in reversed(range(n)):  # most significant qubit leftmost in the Kronecker product
        mat = np.kron(mat, PAULI[letters.get(q, "I")])
    return mat


def dense_run(circuit, params):
    n = circuit.n_qubits
    psi = np.full(2**n, 2 ** (-n / 2), dtype=complex)
    for g in circuit.gates:
        theta = g.sign * params[g.param]
        psi = expm(-0.5j * theta * dense_pauli(n, g.support)) @ psi
    return psi


def dense_energy(psi, n, edges):
    h = sum(w * dense_pauli(n, [(u, "Z"), (v, "Z")]) for u, v, w in edges)
    return float(np.real(np.vdot(psi, h @ psi)))


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def component_count(n, edges):
    uf = UnionFind(n)
    return n - sum(uf.union(u, v) for u, v, *_ in edges)


def is_forest(n, edges):
    uf = UnionFind(n)
    return all(uf.union(u, v) for u, v, *_ in edges)


def eccentricity(n, edges, root):
    adj = {i: [] for i in range(n)}
    for u, v, *_ in edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return max(dist.values())


def min_height_all_roots(n, edges):
    """(root, height) by trying every root; smallest label on ties."""
    heights = [eccentricity(n, edges, r) for r in range(n)]
    best = min(heights)
    return heights.index(best), best


def cut_of(bits, edges):
    return sum((1 - w * (1 - 2 * bits[u]) * (1 - 2 * bits[v])) // 2 for u, v, w in edges)


def max_cut_loops(n, edges):
    return max(cut_of(bits, edges) for bits in itertools.product((0, 1), repeat=n))


def min_spin_energy(n, edges):
    return min(sum(w * s[u] * s[v] for u, v, w in edges) for s in itertools.product((1, -1), repeat=n))
