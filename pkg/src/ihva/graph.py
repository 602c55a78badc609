"""Undirected graphs with +/-1 edge weights, random generators and edge-list I/O.

Nodes are the integers ``0..n-1``. Edges are stored once, as ``(u, v, w)`` with
``u < v`` and ``w`` in ``{-1, +1}``, sorted lexicographically. Gate orientation
is decided elsewhere; the canonical orientation here is storage only.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .exceptions import GenerationError, GraphParseError, ParameterError

MAX_RETRIES = 10_000


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise ParameterError(f"graph needs at least one node, got n={n}")
        canon = {}
        for e in self.edges:
            if len(e) == 2:
                u, v, w = int(e[0]), int(e[1]), 1
            elif len(e) == 3:
                u, v, w = int(e[0]), int(e[1]), int(e[2])
            else:
                raise ParameterError(f"edge must be (u, v) or (u, v, w), got {e!r}")
            if u == v:
                raise ParameterError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if w not in (-1, 1):
                raise ParameterError(f"edge weight must be -1 or +1, got {e[2]!r}")
            if u > v:
                u, v = v, u
            if (u, v) in canon:
                raise ParameterError(f"duplicate edge ({u}, {v})")
            canon[(u, v)] = w
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple((u, v, canon[u, v]) for u, v in sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, _ in self.edges]

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=np.int64)

    @property
    def is_weighted(self) -> bool:
        return any(w != 1 for _, _, w in self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples, indexed by node."""
        nbrs = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def weight(self, u, v) -> int:
        if u > v:
            u, v = v, u
        return self._weight_map[u, v]

    @cached_property
    def _weight_map(self):
        return {(u, v): w for u, v, w in self.edges}

    def has_edge(self, u, v) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._weight_map

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    @property
    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def with_weights(self, weights) -> Graph:
        weights = list(weights)
        if len(weights) != self.m:
            raise ParameterError(f"expected {self.m} weights, got {len(weights)}")
        return Graph(self.n, [(u, v, w) for (u, v, _), w in zip(self.edges, weights)])

    def relabel(self, perm) -> Graph:
        """Return the graph with node ``i`` renamed to ``perm[i]``."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise ParameterError("relabeling must be a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v], w) for u, v, w in self.edges])

    def subgraph(self, nodes) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``nodes``, relabeled densely in ascending order.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(int(v) for v in nodes))
        index = {v: i for i, v in enumerate(keep)}
        sub = [(index[u], index[v], w) for u, v, w in self.edges if u in index and v in index]
        return Graph(len(keep), sub), keep

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data) -> Graph:
        return cls(int(data["n"]), [tuple(e) for e in data["edges"]])


def complete_graph(n) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def ring_graph(n) -> Graph:
    if n < 3:
        raise ParameterError("a ring needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n_leaves) -> Graph:
    return Graph(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_regular(n, d, seed=None, max_retries=MAX_RETRIES) -> Graph:
    """Uniform simple connected d-regular graph by the pairing model with rejection.

    Every try shuffles the ``n*d`` stubs and pairs them consecutively; tries with
    a self-loop, a repeated pair or a disconnected result are thrown away.
    """
    if n < 1 or d < 0:
        raise ParameterError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if (n * d) % 2:
        raise ParameterError(f"n*d must be even, got n={n}, d={d}")
    if d >= n:
        raise ParameterError(f"degree must be below node count, got n={n}, d={d}")
    rng = _rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_retries):
        rng.shuffle(stubs)
        u, v = stubs[0::2], stubs[1::2]
        if np.any(u == v):
            continue
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        g = Graph(n, list(zip(lo.tolist(), hi.tolist())))
        if g.is_connected():
            return g
    raise GenerationError(f"no simple connected {d}-regular graph on {n} nodes after {max_retries} tries")


def random_tree(n, seed=None) -> Graph:
    """Uniformly random labeled tree, decoded from a random Pruefer sequence."""
    if n < 1:
        raise ParameterError(f"tree needs n >= 1, got {n}")
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else [])
    rng = _rng(seed)
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    for s in seq:
        leaf = degree.index(1)
        edges.append((leaf, s))
        degree[leaf] -= 1
        degree[s] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return Graph(n, edges)


def erdos_renyi(n, q, seed=None, connected=False, max_retries=MAX_RETRIES) -> Graph:
    """G(n, q): each unordered pair is an edge independently with probability q."""
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"edge probability must lie in [0, 1], got {q}")
    rng = _rng(seed)
    iu, iv = np.triu_indices(n, k=1)
    for _ in range(max_retries if connected else 1):
        mask = rng.random(iu.size) < q
        g = Graph(n, list(zip(iu[mask].tolist(), iv[mask].tolist())))
        if not connected or g.is_connected():
            return g
    raise GenerationError(f"no connected G({n}, {q}) sample after {max_retries} tries")


def random_bipartite(n_left, n_right, q, seed=None, max_retries=MAX_RETRIES) -> Graph:
    """Connected random bipartite graph; nodes are shuffled so sides are not contiguous."""
    rng = _rng(seed)
    n = n_left + n_right
    for _ in range(max_retries):
        perm = rng.permutation(n)
        left, right = perm[:n_left], perm[n_left:]
        edges = [(int(a), int(b)) for a in left for b in right if rng.random() < q]
        g = Graph(n, edges)
        if g.is_connected():
            return g
    raise GenerationError("no connected bipartite sample found")


def heavy_hex_lattice(rows, cols) -> Graph:
    """Heavy-hex lattice: a brick-wall hexagonal lattice with every edge subdivided.

    ``rows`` x ``cols`` brick-wall sites; a site (r, c) links right to (r, c+1),
    and down to (r+1, c) when r + c is even. Each such link gets a middle node.
    """
    site = lambda r, c: r * cols + c
    links = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                links.append((site(r, c), site(r, c + 1)))
            if r + 1 < rows and (r + c) % 2 == 0:
                links.append((site(r, c), site(r + 1, c)))
    n = rows * cols
    edges = []
    for k, (a, b) in enumerate(links):
        mid = n + k
        edges += [(a, mid), (mid, b)]
    return Graph(n + len(links), edges)


def heavy_hex_patch(n, seed=None, lattice=(6, 9)) -> Graph:
    """Connected n-node patch cut from a heavy-hex lattice by random frontier growth."""
    rng = _rng(seed)
    big = heavy_hex_lattice(*lattice)
    if n > big.n:
        raise ParameterError(f"patch of {n} nodes exceeds lattice size {big.n}")
    start = int(rng.integers(big.n))
    chosen = {start}
    frontier = set(big.adjacency[start])
    while len(chosen) < n:
        nxt = sorted(frontier)[int(rng.integers(len(frontier)))]
        chosen.add(nxt)
        frontier.discard(nxt)
        frontier.update(v for v in big.adjacency[nxt] if v not in chosen)
    sub, _ = big.subgraph(chosen)
    return sub


def assign_random_signs(graph, seed=None) -> Graph:
    rng = _rng(seed)
    signs = rng.choice(np.array([-1, 1]), size=graph.m)
    return graph.with_weights(signs.tolist())


def connected_components(graph) -> list[list[int]]:
    """Maximal connected node sets, each sorted, ordered by smallest member."""
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for v in graph.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def parse_edge_list(text) -> Graph:
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise GraphParseError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise GraphParseError("first line must hold the node count", lineno)
            n = values[0]
            continue
        if len(values) not in (2, 3):
            raise GraphParseError(f"expected 'u v [w]', got {raw.strip()!r}", lineno)
        u, v = values[:2]
        w = values[2] if len(values) == 3 else 1
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"node out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphParseError(f"self-loop on node {u}", lineno)
        if w not in (-1, 1):
            raise GraphParseError(f"weight must be -1 or 1, got {w}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append((u, v, w))
    if n is None:
        raise GraphParseError("empty edge list")
    return Graph(n, edges)


def format_edge_list(graph) -> str:
    lines = [str(graph.n)]
    for u, v, w in graph.edges:
        lines.append(f"{u} {v}" if w == 1 else f"{u} {v} {w}")
    return "\n".join(lines) + "\n"


def load_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def save_edge_list(graph, path):
    Path(path).write_text(format_edge_list(graph))


def load_json(path) -> Graph:
    return Graph.from_dict(json.loads(Path(path).read_text()))


def save_json(graph, path):
    Path(path).write_text(json.dumps(graph.to_dict()) + "\n")


def load_graph(path) -> Graph:
    """Load either format, chosen by the ``.json`` suffix."""
    return load_json(path) if str(path).endswith(".json") else load_edge_list(path)
