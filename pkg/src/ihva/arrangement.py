"""Gate orderings for one round of ZY gates.

Two layouts are provided. The tree layout decomposes the graph into
breadth-first spanning trees, re-roots each at its center and emits its edges
parent-first. The stagger layout groups edges into matchings by greedy edge
coloring so every group can run in parallel.

Ties are always broken towards the smallest node label.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .exceptions import DisconnectedGraphError, ParameterError
from .graph import Graph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrientedTree:
    root: int
    parent: dict  # child -> parent; the root is absent
    edge_order: tuple  # (parent, child) pairs, ancestors first

    @property
    def nodes(self) -> list[int]:
        return sorted({self.root, *self.parent})

    @property
    def height(self) -> int:
        depth = {self.root: 0}
        for p, c in self.edge_order:
            depth[c] = depth[p] + 1
        return max(depth.values())

    def children(self) -> dict:
        kids = {v: [] for v in self.nodes}
        for p, c in self.edge_order:
            kids[p].append(c)
        return kids


@dataclass(frozen=True)
class ArrangedRound:
    gates: tuple  # (z_node, y_node) pairs in execution order
    tree_ids: tuple

    def __len__(self):
        return len(self.gates)

    @property
    def n_trees(self) -> int:
        return max(self.tree_ids) + 1 if self.tree_ids else 0

    def to_dict(self) -> dict:
        return {"gates": [list(g) for g in self.gates], "tree_ids": list(self.tree_ids)}


def _adjacency(graph_or_adj):
    if isinstance(graph_or_adj, Graph):
        return {v: list(a) for v, a in enumerate(graph_or_adj.adjacency)}
    return {v: sorted(a) for v, a in graph_or_adj.items()}


def _bfs(adj, root) -> OrientedTree:
    parent = {}
    order = []
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                parent[v] = u
                order.append((u, v))
                queue.append(v)
    return OrientedTree(root, parent, tuple(order))


def bfs_spanning_tree(graph, root=0) -> OrientedTree:
    """Breadth-first spanning tree; neighbours are visited in ascending order."""
    adj = _adjacency(graph)
    if root not in adj:
        raise ParameterError(f"root {root} is not a node of the graph")
    tree = _bfs(adj, root)
    if len(tree.parent) + 1 != len(adj):
        missing = min(set(adj) - {root} - set(tree.parent))
        raise DisconnectedGraphError(f"graph is disconnected: node {missing} unreachable from {root}")
    return tree


def _tree_adjacency(tree_like):
    if isinstance(tree_like, OrientedTree):
        adj = {v: [] for v in tree_like.nodes}
        for p, c in tree_like.edge_order:
            adj[p].append(c)
            adj[c].append(p)
        return {v: sorted(a) for v, a in adj.items()}
    adj = _adjacency(tree_like)
    n_edges = sum(len(a) for a in adj.values()) // 2
    if n_edges != len(adj) - 1 or len(_bfs(adj, min(adj)).parent) != n_edges:
        raise ParameterError("input is not a tree")
    return adj


def _center(adj) -> int:
    # Peel leaves layer by layer; the last one or two survivors are the centers.
    if len(adj) <= 2:
        return min(adj)
    degree = {v: len(a) for v, a in adj.items()}
    layer = [v for v, d in degree.items() if d == 1]
    remaining = len(adj)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for v in adj[leaf]:
                degree[v] -= 1
                if degree[v] == 1:
                    nxt.append(v)
        layer = nxt
    return min(layer)


def min_height_root(tree) -> tuple[int, int]:
    """Root giving the lowest oriented tree, and that height.

    Accepts a tree ``Graph``, an ``OrientedTree`` or an adjacency mapping.
    Runs in linear time via the tree center.
    """
    adj = _tree_adjacency(tree)
    root = _center(adj)
    return root, _bfs(adj, root).height


def tree_arrangement(tree: OrientedTree) -> ArrangedRound:
    """One gate per tree edge, Z on the parent and Y on the child, in BFS order."""
    return ArrangedRound(tuple(tree.edge_order), (0,) * len(tree.edge_order))


def _pick_root(nodes, rng):
    return min(nodes) if rng is None else sorted(nodes)[int(rng.integers(len(nodes)))]


def _components(adj):
    seen = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = _bfs(adj, s)
        members = {s, *comp.parent}
        seen |= members
        comps.append(sorted(members))
    return comps


def arrange_round(graph, seed=None) -> ArrangedRound:
    """Order the ZY gates of one round by recursive BFS-tree decomposition.

    1. Build a BFS spanning tree from a starting node (the lowest label, or a
       seeded random node when ``seed`` is given).
    2. Re-root it at its center and emit its edges parent-first.
    3. Remove the tree edges, drop isolated nodes and recurse on every
       connected component of what is left.
    """
    adj = _adjacency(graph)
    if len(_components(adj)) > 1:
        nodes = set(adj)
        reached = {min(nodes), *_bfs(adj, min(nodes)).parent}
        raise DisconnectedGraphError(f"graph is disconnected: node {min(nodes - reached)} unreachable")
    rng = None if seed is None else np.random.default_rng(seed)
    adj = {v: set(a) for v, a in adj.items()}
    gates, tree_ids = [], []
    # Explicit stack in place of recursion; popping in reverse keeps depth-first order.
    stack = [sorted(v for v in adj if adj[v])] if any(adj.values()) else []
    tid = 0
    while stack:
        nodes = stack.pop()
        sub = {v: sorted(adj[v]) for v in nodes}
        first = _bfs(sub, _pick_root(nodes, rng))
        tree_adj = _tree_adjacency(first)
        oriented = _bfs(tree_adj, _center(tree_adj))
        for p, c in oriented.edge_order:
            gates.append((p, c))
            tree_ids.append(tid)
            adj[p].discard(c)
            adj[c].discard(p)
        tid += 1
        rest = {v: adj[v] for v in nodes if adj[v]}
        stack.extend(reversed(_components(rest)))
    return ArrangedRound(tuple(gates), tuple(tree_ids))


def greedy_edge_coloring(graph) -> list[list[tuple[int, int]]]:
    """Partition edges into matchings, giving each edge the smallest free color."""
    used = [set() for _ in range(graph.n)]
    classes = []
    for u, v in graph.pairs:
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        if c == len(classes):
            classes.append([])
        classes[c].append((u, v))
        used[u].add(c)
        used[v].add(c)
    if graph.m and len(classes) > graph.max_degree + 1:
        log.info("greedy coloring used %d classes, above max degree + 1 = %d", len(classes), graph.max_degree + 1)
    return classes


def stagger_arrangement(graph) -> ArrangedRound:
    """Color class by color class; Z on the lower label. tree_ids hold the class index."""
    gates, ids = [], []
    for k, cls in enumerate(greedy_edge_coloring(graph)):
        for u, v in sorted(cls):
            gates.append((u, v))
            ids.append(k)
    return ArrangedRound(tuple(gates), tuple(ids))
