"""Barren-plateau statistics and structural scans.

Variance scans sample every parameter uniformly from ``[0, 4 pi]`` and record
the energy divided by the ground-state energy, so the exact ground state
reads 1.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from . import simulator as sim
from .circuit import backward_light_cone, build_ihva_tree, circuit_depth
from .exceptions import ParameterError
from .graph import random_regular
from .oracle import ground_state_energy

log = logging.getLogger(__name__)

PARAM_RANGE = (0.0, 4 * np.pi)


@dataclass
class VarianceScan:
    n: int
    m: int
    kind: str
    p: int
    n_samples: int
    e0: float
    mean: float
    variance: float
    stderr: float  # of the mean
    variance_stderr: float
    bound: float | None = None
    values: np.ndarray = field(default=None, repr=False)

    def row(self) -> dict:
        d = asdict(self)
        d.pop("values")
        return d


def _variance_stderr(x):
    """Large-sample standard error of the unbiased sample variance."""
    n = x.size
    if n < 4:
        return float("nan")
    c = x - x.mean()
    m2, m4 = np.mean(c**2), np.mean(c**4)
    return float(math.sqrt(max(m4 - m2**2 * (n - 3) / (n - 1), 0.0) / n))


def _regular_degree(graph):
    deg = graph.degrees()
    return int(deg[0]) if graph.m and np.all(deg == deg[0]) else None


def _sample_values(graph, circuit, n_samples, seed, observables):
    rng = np.random.default_rng(seed)
    lo, hi = PARAM_RANGE
    out = np.empty((n_samples, len(observables)))
    for s in range(n_samples):
        p = sim.probabilities(sim.run(circuit, rng.uniform(lo, hi, circuit.n_params)))
        for k, obs in enumerate(observables):
            out[s, k] = np.dot(obs, p)
    return out


def variance_scan(graph, circuit, n_samples=1024, seed=None, e0=None) -> VarianceScan:
    """Mean and variance of ``<H>/E_0`` over uniformly random parameters.

    The regular-graph lower bound is attached when the graph is regular and the
    round count is even; otherwise ``bound`` is None.
    """
    if n_samples < 2:
        raise ParameterError(f"need at least two samples, got {n_samples}")
    if circuit.n_qubits != graph.n:
        raise ParameterError(f"circuit has {circuit.n_qubits} qubits but graph has {graph.n} nodes")
    sim.check_qubits(graph.n)
    e0 = ground_state_energy(graph) if e0 is None else float(e0)
    if e0 == 0:
        raise ParameterError("ground-state energy is zero; normalization undefined")
    diag = sim.energy_diagonal(graph).astype(float)
    x = _sample_values(graph, circuit, n_samples, seed, [diag])[:, 0] / e0
    p = int(circuit.metadata.get("p", 1))
    d = _regular_degree(graph)
    bound = variance_lower_bound(d, graph.n, p, e0) if d and p % 2 == 0 else None
    return VarianceScan(
        n=graph.n, m=graph.m, kind=circuit.metadata.get("ansatz", "custom"), p=p,
        n_samples=n_samples, e0=e0, mean=float(x.mean()), variance=float(x.var(ddof=1)),
        stderr=float(x.std(ddof=1) / math.sqrt(n_samples)), variance_stderr=_variance_stderr(x),
        bound=bound, values=x,
    )


def variance_lower_bound(D, N, p, E0) -> float:
    """``D N / (E0**2 * 2**(D (p + 1) - 1))`` for D-regular graphs and even p."""
    if p % 2:
        raise ParameterError(f"the variance bound holds for even round counts only, got p={p}")
    if D < 1 or N < 2 or p < 2 or E0 == 0:
        raise ParameterError(f"need D >= 1, N >= 2, even p >= 2 and E0 != 0; got D={D}, N={N}, p={p}, E0={E0}")
    return D * N / (E0**2 * 2.0 ** (D * (p + 1) - 1))


def covariance_check(graph, circuit, edge_a, edge_b, n_samples=1024, seed=None, n_boot=1000):
    """Sample covariance of ``<Z Z>`` on two edges, with a bootstrap standard error."""
    a, b = tuple(sorted(edge_a)), tuple(sorted(edge_b))
    if a == b:
        raise ParameterError(f"edges must differ, got {edge_a} twice")
    for e in (a, b):
        if not graph.has_edge(*e):
            raise ParameterError(f"{e} is not an edge of the graph")
    n = graph.n
    obs = [1.0 - 2.0 * sim._parity(n, *e) for e in (a, b)]
    x = _sample_values(graph, circuit, n_samples, seed, obs)
    cov = float(np.cov(x[:, 0], x[:, 1])[0, 1])
    rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(1)[0])
    boot = np.empty(n_boot)
    for k in range(n_boot):
        idx = rng.integers(0, n_samples, n_samples)
        boot[k] = np.cov(x[idx, 0], x[idx, 1])[0, 1]
    return cov, float(boot.std(ddof=1))


def depth_bounds(n, D, p=1):
    """Lower and upper bounds on the iHVA-tree depth of a D-regular graph.

    The lower bound is the height of a complete (D-1)-ary tree around one node
    holding all n nodes; it needs D >= 3 and is None otherwise.
    """
    lower = p * (math.log(n * (D - 2) + 1, D - 1) - 1) if D >= 3 else None
    return lower, p * n * D / 2


@dataclass
class DepthRow:
    D: int
    N: int
    mean: float
    min: int
    max: int
    lower: float | None
    upper: float
    depths: list = field(repr=False, default_factory=list)


@dataclass
class DepthScan:
    rows: list
    skipped: list  # (D, N, reason)

    def csv(self) -> str:
        return to_csv([{k: getattr(r, k) for k in ("D", "N", "mean", "min", "max", "lower", "upper")} for r in self.rows])


def depth_scan(D_list, N_list, trials=50, seed=0) -> DepthScan:
    """One-round iHVA-tree depth over ``trials`` random regular graphs per cell.

    Graph ``t`` of cell (D, N) uses seed ``[seed, D, N, t]``.
    """
    rows, skipped = [], []
    for D in D_list:
        for N in N_list:
            if (N * D) % 2 or D >= N or D < 1:
                reason = "N*D odd" if (N * D) % 2 else "need 1 <= D < N"
                log.info("skipping infeasible cell D=%d N=%d: %s", D, N, reason)
                skipped.append((D, N, reason))
                continue
            depths = [circuit_depth(build_ihva_tree(random_regular(N, D, seed=[seed, D, N, t])))
                      for t in range(trials)]
            lo, hi = depth_bounds(N, D)
            rows.append(DepthRow(D, N, float(np.mean(depths)), min(depths), max(depths), lo, hi, depths))
    return DepthScan(rows, skipped)


@dataclass
class LightCone:
    sizes: dict  # edge -> cone size
    min: int
    mean: float
    max: int


def lightcone_scan(graph, circuit) -> LightCone:
    """Backward light-cone size of every edge observable ``Z_i Z_j``."""
    sizes = {(u, v): len(backward_light_cone(circuit, (u, v))) for u, v in graph.pairs}
    vals = list(sizes.values()) or [0]
    return LightCone(sizes, min(vals), float(np.mean(vals)), max(vals))


def fit_log_slope(ns, variances):
    """OLS slope of ``log(variance)`` against n, and its standard error."""
    res = stats.linregress(np.asarray(ns, dtype=float), np.log(np.asarray(variances, dtype=float)))
    return float(res.slope), float(res.stderr)


def to_csv(rows) -> str:
    rows = list(rows)
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


__all__ = [
    "VarianceScan", "variance_scan", "variance_lower_bound", "covariance_check",
    "depth_bounds", "DepthRow", "DepthScan", "depth_scan", "LightCone", "lightcone_scan",
    "fit_log_slope", "to_csv",
]
