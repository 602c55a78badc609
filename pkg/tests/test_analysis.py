import csv
import io
import math

import numpy as np
import pytest
from scipy import integrate

from ihva.analysis import (
    covariance_check,
    depth_bounds,
    depth_scan,
    fit_log_slope,
    lightcone_scan,
    to_csv,
    variance_lower_bound,
    variance_scan,
)
from ihva.circuit import Circuit, build_ihva_stagger, build_ihva_tree, circuit_depth
from ihva.exceptions import ParameterError
from ihva.graph import path_graph, random_regular, ring_graph
from ihva.oracle import ground_state_energy

EDGE = path_graph(2)


def test_zero_gate_circuit_has_no_variance():
    g = random_regular(6, 3, seed=0)
    v = variance_scan(g, Circuit(6, [], 0), n_samples=16, seed=0)
    assert v.variance == 0 and v.mean == 0 and v.bound is None


def test_single_edge_variance_closed_form():
    # <ZZ>(t) = -sin t and E0 = -1, so the normalized value is sin t
    span = 4 * math.pi
    m1 = integrate.quad(math.sin, 0, span)[0] / span
    m2 = integrate.quad(lambda t: math.sin(t) ** 2, 0, span)[0] / span
    exact = m2 - m1**2
    assert abs(exact - 0.5) < 1e-12
    v = variance_scan(EDGE, build_ihva_tree(EDGE), n_samples=4096, seed=1)
    assert abs(v.variance - exact) < 3 * v.variance_stderr
    assert abs(v.mean) < 3 * v.stderr
    assert v.e0 == -1


def test_regular_mean_is_zero():
    g = random_regular(8, 3, seed=2)
    v = variance_scan(g, build_ihva_tree(g, 2), n_samples=1024, seed=3)
    assert abs(v.mean) < 3 * v.stderr
    assert v.bound == variance_lower_bound(3, 8, 2, ground_state_energy(g))
    assert v.stderr == pytest.approx(np.std(v.values, ddof=1) / math.sqrt(1024))


def test_odd_rounds_get_no_bound():
    g = random_regular(6, 3, seed=0)
    assert variance_scan(g, build_ihva_tree(g, 1), n_samples=8, seed=0).bound is None


def test_variance_scan_errors():
    with pytest.raises(ParameterError):
        variance_scan(EDGE, build_ihva_tree(EDGE), n_samples=1)
    with pytest.raises(ParameterError):
        variance_scan(path_graph(3), build_ihva_tree(EDGE))


def test_bound_formula():
    e0 = ground_state_energy(random_regular(8, 3, seed=0))
    assert variance_lower_bound(3, 8, 2, e0) == 24 / (e0**2 * 256)
    assert variance_lower_bound(3, 16, 2, e0) == 2 * variance_lower_bound(3, 8, 2, e0)
    for bad in [(3, 8, 1, -10), (0, 8, 2, -10), (3, 1, 2, -10), (3, 8, 2, 0)]:
        with pytest.raises(ParameterError):
            variance_lower_bound(*bad)


def test_covariance_examples():
    g = random_regular(8, 3, seed=4)
    a, b = g.pairs[0], g.pairs[-1]
    cov, se = covariance_check(g, Circuit(8, [], 0), a, b, n_samples=32, seed=0, n_boot=50)
    assert cov == 0 and se == 0
    cov, se = covariance_check(g, build_ihva_tree(g, 2), a, b, n_samples=2048, seed=5)
    assert abs(cov) < 3 * se
    with pytest.raises(ParameterError):
        covariance_check(g, build_ihva_tree(g, 2), a, a[::-1])
    missing = next((u, v) for u in range(8) for v in range(u + 1, 8) if not g.has_edge(u, v))
    with pytest.raises(ParameterError):
        covariance_check(g, build_ihva_tree(g, 2), a, missing)


def test_ring_depth_is_linear():
    depths = [circuit_depth(build_ihva_tree(ring_graph(n))) for n in range(4, 30)]
    # a centered spanning path has height about n/2; the closing chord adds one layer
    assert depths == [(n + 1) // 2 + 1 for n in range(4, 30)]


def test_depth_scan():
    scan = depth_scan([2, 3, 4], [5, 8, 10], trials=10, seed=1)
    assert (3, 5, "N*D odd") in scan.skipped
    assert all(r.min <= r.mean <= r.max for r in scan.rows)
    for r in scan.rows:
        if r.D >= 3:
            assert r.lower <= r.min and r.max <= r.upper
        else:
            assert r.lower is None
    assert depth_scan([3], [8], trials=5, seed=2).rows[0].depths == depth_scan([3], [8], trials=5, seed=2).rows[0].depths
    rows = list(csv.DictReader(io.StringIO(scan.csv())))
    assert list(rows[0]) == ["D", "N", "mean", "min", "max", "lower", "upper"]
    assert len(rows) == len(scan.rows)


def test_depth_bounds_values():
    lo, hi = depth_bounds(8, 3)
    assert lo == pytest.approx(math.log2(9) - 1) and hi == 12
    assert depth_bounds(8, 2)[0] is None


def test_lightcone_scan():
    sizes = []
    for n in (8, 12, 16):
        g = ring_graph(n)
        sizes.append(lightcone_scan(g, build_ihva_stagger(g)).max)
        assert lightcone_scan(g, build_ihva_tree(g)).max == n
    assert len(set(sizes)) == 1
    empty = lightcone_scan(ring_graph(5), Circuit(5, [], 0))
    assert set(empty.sizes.values()) == {2}


def test_fit_log_slope():
    ns = np.arange(8, 15)
    slope, err = fit_log_slope(ns, 3 * np.exp(-0.4 * ns))
    assert slope == pytest.approx(-0.4) and err < 1e-10


def test_to_csv():
    assert to_csv([]) == ""
    text = to_csv([{"a": 1, "b": None, "c": 0.1}])
    assert text == "a,b,c\n1,,0.1\n"
