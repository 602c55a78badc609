import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ihva.exceptions import GenerationError, GraphParseError, ParameterError
from ihva.graph import (
    Graph,
    assign_random_signs,
    complete_graph,
    connected_components,
    erdos_renyi,
    format_edge_list,
    heavy_hex_lattice,
    heavy_hex_patch,
    load_graph,
    parse_edge_list,
    path_graph,
    random_bipartite,
    random_regular,
    random_tree,
    ring_graph,
    save_edge_list,
    save_json,
)

from oracles import component_count, is_forest


# ---- the Graph type ---------------------------------------------------------


def test_edges_are_canonicalized():
    g = Graph(4, [(3, 1), (0, 2, -1), (1, 0)])
    assert g.edges == ((0, 1, 1), (0, 2, -1), (1, 3, 1))
    assert g.weight(2, 0) == -1 and g.has_edge(3, 1) and not g.has_edge(2, 3)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(0, 1), (1, 0)], [(0, 1, 2)], [(0, 1, 0)], [(0,)]])
def test_invalid_edges_rejected(edges):
    with pytest.raises(ParameterError):
        Graph(3, edges)


def test_graph_needs_a_node():
    with pytest.raises(ParameterError):
        Graph(0, [])


def test_relabel_and_subgraph():
    g = path_graph(4)
    h = g.relabel([3, 2, 1, 0])
    assert h.edges == g.edges
    sub, labels = Graph(5, [(0, 2), (2, 4), (1, 3)]).subgraph([4, 0, 2])
    assert labels == [0, 2, 4] and sub.edges == ((0, 1, 1), (1, 2, 1))


def test_with_weights_length_checked():
    with pytest.raises(ParameterError):
        path_graph(3).with_weights([1])


# ---- generators -------------------------------------------------------------


def test_regular_on_four_nodes_is_k4():
    for seed in range(5):
        assert random_regular(4, 3, seed=seed) == complete_graph(4)


def test_regular_six_nodes():
    g = random_regular(6, 3, seed=7)
    assert g.m == 9 and g.is_connected()


@pytest.mark.parametrize("n, d", [(5, 3), (4, 4), (3, -1)])
def test_regular_infeasible(n, d):
    with pytest.raises(ParameterError):
        random_regular(n, d)


def test_regular_retry_cap():
    # a disconnected 1-regular matching is the only option on 4 nodes
    with pytest.raises(GenerationError):
        random_regular(4, 1, seed=0, max_retries=20)


def test_regular_degrees_over_many_seeds():
    rng = np.random.default_rng(0)
    for seed in range(100):
        d = int(rng.integers(2, 6))
        n = int(rng.integers(d + 1, 25))
        if n * d % 2:
            n += 1
        g = random_regular(n, d, seed=seed)
        assert np.all(g.degrees() == d) and g.is_connected()


def test_tree_small_cases():
    assert random_tree(1).edges == ()
    assert random_tree(2).edges == ((0, 1, 1),)


@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_tree_is_spanning_and_acyclic(n, seed):
    g = random_tree(n, seed=seed)
    assert g.m == n - 1
    assert is_forest(n, g.edges) and component_count(n, g.edges) == 1


def test_tree_six_nodes_acyclic():
    g = random_tree(6, seed=3)
    assert g.m == 5 and is_forest(6, g.edges)


def test_erdos_renyi_extremes():
    assert erdos_renyi(5, 1.0, seed=0) == complete_graph(5)
    assert erdos_renyi(5, 0.0, seed=0).m == 0
    with pytest.raises(ParameterError):
        erdos_renyi(5, 1.5)


def test_erdos_renyi_edge_count_binomial():
    counts = np.array([erdos_renyi(16, 0.5, seed=s).m for s in range(1000)])
    pairs = 16 * 15 // 2
    sigma = math.sqrt(pairs * 0.25 / 1000)
    assert abs(counts.mean() - 60) < 3 * sigma


def test_erdos_renyi_connected():
    for seed in range(20):
        assert erdos_renyi(14, 0.5, seed=seed, connected=True).is_connected()


def test_bipartite_is_two_colorable():
    for seed in range(20):
        g = random_bipartite(5, 7, 0.4, seed=seed)
        assert g.is_connected()
        # BFS two-coloring must succeed
        color = {0: 0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if v in color:
                    assert color[v] != color[u]
                else:
                    color[v] = 1 - color[u]
                    stack.append(v)


def test_heavy_hex_structure():
    g = heavy_hex_lattice(3, 4)
    deg = g.degrees()
    sites = 12
    assert np.all(deg[sites:] == 2)  # every link node sits between two sites
    assert deg.max() <= 3
    for seed in range(10):
        p = heavy_hex_patch(16, seed=seed)
        assert p.n == 16 and p.is_connected() and p.max_degree <= 3


def test_signs_reproducible_and_balanced():
    k3 = complete_graph(3)
    assert assign_random_signs(k3, seed=4) == assign_random_signs(k3, seed=4)
    assert assign_random_signs(Graph(3), seed=1).m == 0
    g = random_regular(8, 5, seed=0)  # 20 edges
    w = np.array([assign_random_signs(g, seed=s).weights for s in range(1000)])
    sigma = 1 / math.sqrt(1000)
    assert np.all(np.abs(w.mean(axis=0)) < 3 * sigma)


@pytest.mark.parametrize("make", [
    lambda s: random_regular(12, 3, seed=s),
    lambda s: random_tree(12, seed=s),
    lambda s: erdos_renyi(12, 0.3, seed=s),
    lambda s: random_bipartite(6, 6, 0.5, seed=s),
    lambda s: heavy_hex_patch(12, seed=s),
])
def test_generators_reproducible(make):
    assert make(11) == make(11)


# ---- components ---------------------------------------------------------------


def test_components_examples():
    assert connected_components(path_graph(3)) == [[0, 1, 2]]
    assert connected_components(Graph(3, [(0, 1)])) == [[0, 1], [2]]


@given(st.integers(1, 20), st.floats(0, 0.4), st.integers(0, 2**32 - 1))
def test_components_match_union_find(n, q, seed):
    g = erdos_renyi(n, q, seed=seed)
    comps = connected_components(g)
    assert len(comps) == component_count(n, g.edges)
    assert sorted(v for c in comps for v in c) == list(range(n))


# ---- I/O --------------------------------------------------------------------


def test_parse_examples():
    assert parse_edge_list("3\n0 1\n1 2") == path_graph(3)
    assert parse_edge_list("2\n0 1 -1").edges == ((0, 1, -1),)
    assert parse_edge_list("# comment\n3\n\n0 1  # trailing\n") == Graph(3, [(0, 1)])


@pytest.mark.parametrize("text, line", [
    ("3\n0 1\n1 x", 3), ("3\n0 3", 2), ("3\n0 1\n1 0", 3), ("3\n0 1 2", 2), ("0", 1), ("3\n1 1", 2), ("3\n0 1 1 1", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as err:
        parse_edge_list(text)
    assert err.value.lineno == line and f"line {line}" in str(err.value)


def test_parse_empty():
    with pytest.raises(GraphParseError):
        parse_edge_list("# nothing\n")


@pytest.mark.parametrize("g", [path_graph(3), ring_graph(7), Graph(4, [(0, 3, -1), (1, 2)]), Graph(1)])
def test_round_trips(g, tmp_path):
    assert parse_edge_list(format_edge_list(g)) == g
    save_edge_list(g, tmp_path / "g.txt")
    save_json(g, tmp_path / "g.json")
    assert load_graph(tmp_path / "g.txt") == g == load_graph(tmp_path / "g.json")
    save_edge_list(load_graph(tmp_path / "g.txt"), tmp_path / "h.txt")
    assert (tmp_path / "h.txt").read_text() == (tmp_path / "g.txt").read_text()
