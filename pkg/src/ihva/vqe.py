"""Variational optimization of a circuit against a MaxCut objective.

Two objectives are supported: the energy ``<sum w Z Z>`` and its CVaR at a
level ``alpha``. Both are minimized. Gradients come from one adjoint pass per
evaluation, so quasi-Newton steps cost about three circuit simulations no
matter how many parameters there are.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import optimize

from . import simulator as sim
from .exceptions import NumericalError, ParameterError

METHODS = ("quasi-newton", "derivative-free")
INITS = ("small-constant", "uniform")


def parse_objective(spec):
    """``"energy"`` -> (``"energy"``, None); ``"cvar:0.1"`` -> (``"cvar"``, 0.1)."""
    if spec == "energy":
        return "energy", None
    name, _, level = str(spec).partition(":")
    if name == "cvar":
        try:
            alpha = float(level)
        except ValueError:
            raise ParameterError(f"bad CVaR level in objective {spec!r}") from None
        if not 0.0 < alpha <= 1.0:
            raise ParameterError(f"CVaR level must lie in (0, 1], got {alpha}")
        return "cvar", alpha
    raise ParameterError(f"unknown objective {spec!r}; use 'energy' or 'cvar:<alpha>'")


@dataclass
class OptimizerConfig:
    method: str = "quasi-newton"
    max_iters: int = 500
    restarts: int = 5
    init: object = "small-constant"  # or "uniform", or an explicit parameter vector
    objective: str = "energy"
    seed: int | list = 0  # an int or a seed-sequence key such as [master, task]
    tol: float = 1e-8
    patience: int = 3  # consecutive small steps before stopping
    init_scale: float = 1e-3
    rhobeg: float = 1.0
    shots: int | None = None  # sample-based CVaR in derivative-free mode

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.restarts < 1 or self.max_iters < 1:
            raise ParameterError("restarts and max_iters must be positive")
        if isinstance(self.init, str) and self.init not in INITS:
            raise ParameterError(f"init must be one of {INITS} or a vector, got {self.init!r}")
        if self.shots is not None and self.shots < 1:
            raise ParameterError(f"shots must be positive, got {self.shots}")
        parse_objective(self.objective)

    def to_dict(self) -> dict:
        d = asdict(self)
        if not isinstance(self.init, str):
            d["init"] = [float(x) for x in np.asarray(self.init)]
        return d


@dataclass
class RestartRecord:
    index: int
    seed: list
    initial_params: list
    final_params: list
    history: list  # objective after each iteration, starting from the initial point
    iterations: int
    objective: float
    cut: float
    status: str


@dataclass
class RunResult:
    best_params: np.ndarray
    best_objective: float
    best_energy: float
    best_cut: float  # the objective read as a cut value
    expected_cut: float
    approx_ratio: float | None
    c_max: float | None
    best_restart: int
    restarts: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def histories(self) -> list[list[float]]:
        return [r.history for r in self.restarts]

    @property
    def iterations(self) -> list[int]:
        return [r.iterations for r in self.restarts]

    def to_dict(self) -> dict:
        return {
            "best_params": [float(x) for x in self.best_params],
            "best_objective": self.best_objective,
            "best_energy": self.best_energy,
            "best_cut": self.best_cut,
            "expected_cut": self.expected_cut,
            "approx_ratio": self.approx_ratio,
            "c_max": self.c_max,
            "best_restart": self.best_restart,
            "restarts": [asdict(r) for r in self.restarts],
            "config": self.config,
            "metadata": self.metadata,
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def history_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["restart", "iteration", "objective"])
        for r in self.restarts:
            for it, val in enumerate(r.history):
                w.writerow([r.index, it, repr(float(val))])
        return buf.getvalue()


def small_constant_init(n_params, seed=None, scale=1e-3) -> np.ndarray:
    """Parameters drawn uniformly from ``[0, scale]``."""
    return np.random.default_rng(seed).uniform(0.0, scale, n_params)


def approximation_ratio(cut, c_max) -> float:
    if c_max <= 0:
        raise ParameterError(f"approximation ratio undefined for maximum cut {c_max}")
    return float(cut) / float(c_max)


def _initial_point(config, n_params, rng):
    if isinstance(config.init, str):
        if config.init == "uniform":
            return rng.uniform(0.0, 4 * np.pi, n_params)
        return rng.uniform(0.0, config.init_scale, n_params)
    x0 = np.asarray(config.init, dtype=float)
    if x0.shape != (n_params,):
        raise ParameterError(f"explicit init needs {n_params} values, got shape {x0.shape}")
    return x0.copy()


def _objective(circuit, graph, config, rng):
    """Value-and-gradient callable plus a value-only callable for the objective."""
    kind, alpha = parse_objective(config.objective)
    if kind == "energy":
        diag = sim.energy_diagonal(graph).astype(float)
        obs = diag
        value = lambda x: float(np.dot(diag, sim.probabilities(sim.run(circuit, x))))
    else:
        obs = lambda psi: sim.cvar_observable(psi, graph, alpha)
        if config.shots:
            value = lambda x: sim.cvar_from_samples(sim.sample(sim.run(circuit, x), config.shots, rng), graph, alpha)
        else:
            value = lambda x: sim.cvar(sim.run(circuit, x), graph, alpha)
    return (lambda x: sim.adjoint_gradient(circuit, x, obs)), value


def _checked(f):
    def wrapped(x):
        out = f(x)
        v = out[0] if isinstance(out, tuple) else out
        if not np.isfinite(v):
            raise NumericalError(f"objective is not finite at {x}")
        return out
    return wrapped


def _run_restart(circuit, graph, config, x0, rng):
    value_grad, value = _objective(circuit, graph, config, rng)
    history = []
    status = "max_iters"

    if config.method == "quasi-newton":
        fun = _checked(value_grad)
        history.append(fun(x0)[0])
        streak = [0]

        def callback(intermediate_result):
            f = float(intermediate_result.fun)
            streak[0] = streak[0] + 1 if abs(f - history[-1]) < config.tol else 0
            history.append(f)
            if streak[0] >= config.patience:
                raise StopIteration

        res = optimize.minimize(fun, x0, jac=True, method="L-BFGS-B", callback=callback,
                                options={"maxiter": config.max_iters, "ftol": 0.0, "gtol": 1e-12})
        x = res.x
        if streak[0] >= config.patience:
            status = "converged"
        elif res.nit < config.max_iters:
            status = "stalled"  # line search could make no further progress
        iterations = len(history) - 1
    else:
        fun = _checked(value)
        res = optimize.minimize(lambda x: history.append(fun(x)) or history[-1], x0, method="COBYLA",
                                options={"maxiter": config.max_iters, "rhobeg": config.rhobeg})
        x = res.x
        iterations = len(history)
        if res.nfev < config.max_iters:
            status = "converged"
    return np.asarray(x, dtype=float), history, iterations, status


def minimize(circuit, graph, config=None, c_max=None) -> RunResult:
    """Optimize ``circuit`` from several starts and keep the restart with the best cut.

    Restart ``r`` draws its initial point and any shot noise from the seed
    ``[*config.seed, r]``. A restart whose objective turns non-finite is
    abandoned and recorded with status ``"aborted"``.
    """
    config = config or OptimizerConfig()
    if circuit.n_qubits != graph.n:
        raise ParameterError(f"circuit has {circuit.n_qubits} qubits but graph has {graph.n} nodes")
    kind, alpha = parse_objective(config.objective)
    base = [int(s) for s in config.seed] if isinstance(config.seed, (list, tuple)) else [int(config.seed)]
    records, finals = [], []
    for r in range(config.restarts):
        seed = [*base, r]
        rng = np.random.default_rng(seed)
        x0 = _initial_point(config, circuit.n_params, rng)
        try:
            x, history, iters, status = _run_restart(circuit, graph, config, x0, rng)
        except NumericalError:
            records.append(RestartRecord(r, seed, x0.tolist(), x0.tolist(), [], 0, float("nan"), float("nan"), "aborted"))
            finals.append(None)
            continue
        state = sim.run(circuit, x)
        report = sim.energy(state, graph)
        obj = report.energy if kind == "energy" else sim.cvar(state, graph, alpha)
        cut = (graph.m - obj) / 2
        records.append(RestartRecord(r, seed, x0.tolist(), x.tolist(), [float(h) for h in history],
                                     iters, float(obj), float(cut), status))
        finals.append((x, obj, report))
    ok = [i for i, f in enumerate(finals) if f is not None]
    if not ok:
        raise NumericalError("every restart produced a non-finite objective")
    best = max(ok, key=lambda i: (records[i].cut, -i))
    x, obj, report = finals[best]
    cut = (graph.m - obj) / 2
    return RunResult(
        best_params=x,
        best_objective=float(obj),
        best_energy=float(report.energy),
        best_cut=float(cut),
        expected_cut=float(report.cut),
        approx_ratio=None if c_max is None else approximation_ratio(cut, c_max),
        c_max=None if c_max is None else float(c_max),
        best_restart=best,
        restarts=records,
        config=config.to_dict(),
        metadata=dict(circuit.metadata),
    )


@dataclass
class RatioDistribution:
    ratios: np.ndarray
    max: float
    mean: float
    counts: np.ndarray
    bin_edges: np.ndarray


def ratio_distribution(state, graph, c_max, shots, seed=None, bins=20) -> RatioDistribution:
    """Approximation ratios of sampled bitstrings."""
    if c_max <= 0:
        raise ParameterError(f"approximation ratio undefined for maximum cut {c_max}")
    samples = sim.sample(state, shots, seed)
    ratios = sim.cut_values(graph)[samples] / c_max
    counts, edges = np.histogram(ratios, bins=bins, range=(min(0.0, ratios.min()), 1.0))
    return RatioDistribution(ratios, float(ratios.max()), float(ratios.mean()), counts, edges)
