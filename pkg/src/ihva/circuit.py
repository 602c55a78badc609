"""Circuits of Pauli-string rotations ``exp(-i * sign * theta[param] * P / 2)``.

Gates are listed in execution order: ``gates[0]`` acts on the initial state
first. Edge weights ride on the per-gate ``sign`` so simulation never needs
the graph, and parameter sharing is expressed only through ``param`` indices.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .arrangement import arrange_round, greedy_edge_coloring, stagger_arrangement
from .exceptions import ParameterError

PAULI_LETTERS = frozenset("XYZ")


@dataclass(frozen=True)
class PauliRotation:
    support: tuple  # ((qubit, letter), ...)
    param: int
    sign: int = 1

    def __post_init__(self):
        support = tuple((int(q), str(l)) for q, l in (self.support.items() if isinstance(self.support, dict) else self.support))
        if not support:
            raise ParameterError("a Pauli rotation needs a nonempty support")
        qubits = [q for q, _ in support]
        if len(set(qubits)) != len(qubits):
            raise ParameterError(f"repeated qubit in support {support}")
        if any(l not in PAULI_LETTERS for _, l in support) or any(q < 0 for q in qubits):
            raise ParameterError(f"invalid support {support}")
        if self.sign not in (-1, 1):
            raise ParameterError(f"sign must be +/-1, got {self.sign}")
        object.__setattr__(self, "support", support)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.support)

    @property
    def label(self) -> str:
        return "".join(l for _, l in self.support)

    def count(self, letter) -> int:
        return sum(l == letter for _, l in self.support)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple
    n_params: int
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        used = set()
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ParameterError(f"gate {g} exceeds circuit width {self.n_qubits}")
            if not 0 <= g.param < self.n_params:
                raise ParameterError(f"gate {g} has parameter index out of range")
            used.add(g.param)
        if len(used) != self.n_params:
            raise ParameterError("every parameter index must be used by at least one gate")

    def __len__(self):
        return len(self.gates)

    @property
    def is_real(self) -> bool:
        """True when every generator has an odd number of Y letters.

        Such rotations are real orthogonal matrices, so a real initial state
        stays real.
        """
        return all(g.count("Y") % 2 == 1 for g in self.gates)

    def to_dict(self) -> dict:
        return {
            "n": self.n_qubits,
            "params": self.n_params,
            "gates": [{"q": {str(q): l for q, l in g.support}, "p": g.param, "s": g.sign} for g in self.gates],
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data) -> Circuit:
        gates = [PauliRotation(tuple((int(q), l) for q, l in g["q"].items()), int(g["p"]), int(g.get("s", 1))) for g in data["gates"]]
        return cls(int(data["n"]), gates, int(data["params"]), dict(data.get("metadata", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def graph_hash(graph) -> str:
    return hashlib.sha256(json.dumps(graph.to_dict()).encode()).hexdigest()[:16]


def _zy(z, y, param, sign=1):
    return PauliRotation(((z, "Z"), (y, "Y")), param, sign)


def _yz(z, y, param, sign=1):
    return PauliRotation(((z, "Y"), (y, "Z")), param, sign)


def _ihva(graph, p, arranged, kind):
    if p < 1:
        raise ParameterError(f"need at least one round, got p={p}")
    m = len(arranged.gates)
    gates = []
    for layer in range(p):
        make = _zy if layer % 2 == 0 else _yz
        gates += [make(z, y, layer * m + k) for k, (z, y) in enumerate(arranged.gates)]
    meta = {"ansatz": kind, "p": p, "graph": graph_hash(graph)}
    return Circuit(graph.n, gates, p * m, meta)


def build_ihva_tree(graph, p=1, seed=None) -> Circuit:
    """p-round iHVA with the tree layout; odd rounds ZY, even rounds YZ."""
    return _ihva(graph, p, arrange_round(graph, seed=seed), "ihva-tree")


def build_ihva_stagger(graph, p=1) -> Circuit:
    return _ihva(graph, p, stagger_arrangement(graph), "ihva-stagger")


def _zz_order(graph):
    return [e for cls in greedy_edge_coloring(graph) for e in sorted(cls)]


def build_ma_qaoa(graph, p=1) -> Circuit:
    """Multi-angle QAOA: one ZZ angle per edge and one X angle per node, per round."""
    if p < 1:
        raise ParameterError(f"need at least one round, got p={p}")
    zz = _zz_order(graph)
    per_round = len(zz) + graph.n
    gates = []
    for layer in range(p):
        base = layer * per_round
        gates += [PauliRotation(((u, "Z"), (v, "Z")), base + k) for k, (u, v) in enumerate(zz)]
        gates += [PauliRotation(((i, "X"),), base + len(zz) + i) for i in range(graph.n)]
    meta = {"ansatz": "ma-qaoa", "p": p, "graph": graph_hash(graph)}
    return Circuit(graph.n, gates, p * per_round, meta)


def build_equal_angle(graph, kind="ihva-tree") -> Circuit:
    """One-round ansatz with shared angles; gate signs carry the edge weights."""
    meta = {"ansatz": f"equal-angle-{kind}", "p": 1, "graph": graph_hash(graph)}
    if kind == "ihva-tree":
        gates = [_zy(z, y, 0, graph.weight(z, y)) for z, y in arrange_round(graph).gates]
        return Circuit(graph.n, gates, 1, meta)
    if kind == "qaoa":
        gates = [PauliRotation(((u, "Z"), (v, "Z")), 0, graph.weight(u, v)) for u, v in _zz_order(graph)]
        gates += [PauliRotation(((i, "X"),), 1) for i in range(graph.n)]
        return Circuit(graph.n, gates, 2, meta)
    raise ParameterError(f"unknown equal-angle ansatz {kind!r}")


BUILDERS = {
    "ihva-tree": build_ihva_tree,
    "ihva-stagger": build_ihva_stagger,
    "ma-qaoa": build_ma_qaoa,
}


def build(kind, graph, p=1) -> Circuit:
    if kind.startswith("equal-"):
        return build_equal_angle(graph, kind[len("equal-"):])
    try:
        return BUILDERS[kind](graph, p)
    except KeyError:
        raise ParameterError(f"unknown ansatz {kind!r}; choose from {sorted(BUILDERS)}") from None


def circuit_depth(circuit, count_single_qubit=False) -> int:
    """ASAP depth in units of two-qubit rotations.

    Single-qubit rotations are transparent unless ``count_single_qubit``.
    """
    level = [0] * circuit.n_qubits
    depth = 0
    for g in circuit.gates:
        if len(g.qubits) < 2 and not count_single_qubit:
            continue
        d = 1 + max(level[q] for q in g.qubits)
        for q in g.qubits:
            level[q] = d
        depth = max(depth, d)
    return depth


def backward_light_cone(circuit, qubits) -> set[int]:
    cone = set(qubits)
    if any(not 0 <= q < circuit.n_qubits for q in cone):
        raise ParameterError(f"qubits {sorted(cone)} outside circuit width {circuit.n_qubits}")
    for g in reversed(circuit.gates):
        if cone.intersection(g.qubits):
            cone.update(g.qubits)
    return cone


def check_relevant_series(pauli) -> bool:
    """Odd Y count and invariance under conjugation by the global bit flip.

    A string commutes with X...X exactly when it holds an even number of
    letters that anticommute with X, i.e. Y or Z.
    """
    n_y = pauli.count("Y")
    n_anti = n_y + pauli.count("Z")
    return n_anti % 2 == 0 and n_y % 2 == 1
