"""Classical MaxCut references: exhaustive search, Goemans-Williamson, greedy local search.

All cut values use the weighted objective ``H_w(x) = 1/2 sum_ij (1 - w_ij s_i s_j)``
with spins ``s = 1 - 2x``: a +1 edge scores when cut, a -1 edge scores when
uncut. For unit weights this is the ordinary cut size.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ParameterError, ResourceError

BRUTE_FORCE_LIMIT = 30
_CHUNK = 1 << 20


@dataclass
class CutSolution:
    assignment: np.ndarray  # bit of node i at position i
    cut_value: float
    exact: bool = False
    info: dict = field(default_factory=dict)

    @property
    def index(self) -> int:
        return int(sum(int(b) << i for i, b in enumerate(self.assignment)))

    @property
    def bitstring(self) -> str:
        """``x_{n-1} ... x_0``."""
        return "".join(str(int(b)) for b in self.assignment[::-1])

    def to_dict(self) -> dict:
        return {
            "assignment": [int(b) for b in self.assignment],
            "bitstring": self.bitstring,
            "cut_value": _num(self.cut_value),
            "exact": self.exact,
            **({"info": self.info} if self.info else {}),
        }


def _num(x):
    return int(x) if float(x).is_integer() else float(x)


def cut_value(graph, assignment) -> int:
    x = np.asarray(assignment, dtype=np.int64)
    if x.shape != (graph.n,):
        raise ParameterError(f"assignment needs {graph.n} bits, got shape {x.shape}")
    if graph.m == 0:
        return 0
    e = np.array(graph.pairs)
    differ = x[e[:, 0]] != x[e[:, 1]]
    w = graph.weights
    return int(np.sum(np.where(w > 0, differ, ~differ)))


def _bits(index, n):
    return np.array([(index >> i) & 1 for i in range(n)], dtype=np.int64)


def brute_force_maxcut(graph, max_nodes=BRUTE_FORCE_LIMIT) -> CutSolution:
    """Exact maximum by enumerating the 2**(n-1) assignments with the top node on side 0.

    Complementing every bit leaves the cut unchanged, so fixing one node
    halves the search. Ties go to the smallest basis index.
    """
    n = graph.n
    if n > max_nodes:
        raise ResourceError(f"exhaustive search over {n} nodes exceeds the {max_nodes}-node guard")
    total = 1 << (n - 1)
    u = np.array([e[0] for e in graph.edges], dtype=np.int64)
    v = np.array([e[1] for e in graph.edges], dtype=np.int64)
    w = graph.weights
    best_val, best_idx = -1, 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        vals = np.zeros(idx.size, dtype=np.int64)
        for a, b, wt in zip(u, v, w):
            differ = ((idx >> a) ^ (idx >> b)) & 1
            vals += differ if wt > 0 else 1 - differ
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_idx = int(vals[k]), int(idx[k])
    return CutSolution(_bits(best_idx, n), best_val, exact=True)


def ground_state_energy(graph, max_nodes=BRUTE_FORCE_LIMIT) -> float:
    """Lowest eigenvalue of ``sum w_ij Z_i Z_j``; equals ``|E| - 2 C_max``."""
    return float(graph.m - 2 * brute_force_maxcut(graph, max_nodes).cut_value)


def _coupling(graph):
    a = np.zeros((graph.n, graph.n))
    for u, v, w in graph.edges:
        a[u, v] = a[v, u] = w
    return a


def sdp_objective(graph, vectors) -> float:
    """Relaxed objective ``1/2 sum_ij (1 - w_ij v_i . v_j)``."""
    if graph.m == 0:
        return 0.0
    e = np.array(graph.pairs)
    dots = np.einsum("ij,ij->i", vectors[e[:, 0]], vectors[e[:, 1]])
    return float(0.5 * np.sum(1.0 - graph.weights * dots))


def solve_low_rank_sdp(graph, rank=None, seed=None, tol=1e-7, max_sweeps=2000):
    """Burer-Monteiro ascent on unit vectors for the MaxCut SDP relaxation.

    Sweeps over the rows; each row is replaced by the unit vector opposite
    to its weighted neighbour sum, which is the projected-gradient step of
    infinite length and maximizes the objective in that row exactly, so the
    objective never decreases. Stops when a sweep changes the objective by
    less than ``tol`` relative.

    Returns the ``(n, rank)`` vector matrix and the objective after each sweep.
    """
    rng = np.random.default_rng(seed)
    n = graph.n
    k = rank or int(np.ceil(np.sqrt(2 * n))) + 1
    vecs = rng.standard_normal((n, k))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    a = _coupling(graph)
    history = [sdp_objective(graph, vecs)]
    for _ in range(max_sweeps):
        for i in range(n):
            g = a[i] @ vecs
            norm = np.linalg.norm(g)
            if norm > 1e-14:
                vecs[i] = -g / norm
        history.append(sdp_objective(graph, vecs))
        if abs(history[-1] - history[-2]) <= tol * max(abs(history[-1]), 1.0):
            break
    return vecs, history


def gw_maxcut(graph, seed=None, rounding_trials=50, rank=None) -> CutSolution:
    """Goemans-Williamson: low-rank SDP relaxation plus random-hyperplane rounding."""
    rng = np.random.default_rng(seed)
    vecs, history = solve_low_rank_sdp(graph, rank=rank, seed=rng)
    best = None
    for _ in range(rounding_trials):
        r = rng.standard_normal(vecs.shape[1])
        x = (vecs @ r < 0).astype(np.int64)
        val = cut_value(graph, x)
        if best is None or val > best[1]:
            best = (x, val)
    info = {"sdp_value": history[-1], "sweeps": len(history) - 1}
    return CutSolution(best[0], best[1], exact=False, info=info)


def _greedy_construct(graph, rng):
    # Breadth-first placement from a random start: each node joins the side
    # that satisfies most already-placed neighbours. Exact on forests.
    s = np.zeros(graph.n, dtype=np.int64)
    placed = np.zeros(graph.n, dtype=bool)
    adj = graph.adjacency
    for start in rng.permutation(graph.n):
        if placed[start]:
            continue
        s[start] = rng.choice([-1, 1])
        placed[start] = True
        queue = deque([int(start)])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if placed[v]:
                    continue
                # choosing s_v scores sum_j (1 - w_vj s_v s_j) / 2 over placed j
                pull = sum(graph.weight(v, j) * s[j] for j in adj[v] if placed[j])
                s[v] = -1 if pull > 0 else 1 if pull < 0 else rng.choice([-1, 1])
                placed[v] = True
                queue.append(v)
    return s


def greedy_maxcut(graph, seed=None) -> CutSolution:
    """Greedy breadth-first placement followed by 1-opt local search.

    The local search repeatedly flips the node with the largest positive gain
    (smallest label on ties) until no single flip improves the cut.
    """
    rng = np.random.default_rng(seed)
    a = _coupling(graph)
    s = _greedy_construct(graph, rng)
    flips = 0
    while True:
        gain = s * (a @ s)  # flipping s_k changes H_w by sum_j w_kj s_k s_j
        k = int(np.argmax(gain))
        if gain[k] <= 0:
            break
        s[k] = -s[k]
        flips += 1
    x = ((1 - s) // 2).astype(np.int64)
    return CutSolution(x, cut_value(graph, x), exact=False, info={"flips": flips})
