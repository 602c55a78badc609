"""Dense statevector simulation of Pauli-rotation circuits.

States are flat numpy arrays of length ``2**n`` in little-endian order: bit
``q`` of the basis index is qubit ``q``. Circuits whose generators all carry
an odd number of Y letters are real orthogonal, and run on float64 arrays;
everything else runs on complex128.

Energies follow ``H = sum_ij w_ij Z_i Z_j`` (to be minimized) and cuts follow
``H_w = 1/2 sum_ij (1 - w_ij Z_i Z_j)`` (to be maximized), so that
``cut = (|E| - energy) / 2``. For unit weights the cut is the usual cut size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .exceptions import ParameterError, ResourceError

MAX_QUBITS = 26


@dataclass
class EnergyReport:
    energy: float
    cut: float
    per_edge: np.ndarray


def check_qubits(n, max_qubits=MAX_QUBITS):
    if n < 1:
        raise ParameterError(f"need at least one qubit, got {n}")
    if n > max_qubits:
        raise ResourceError(f"{n} qubits exceeds the {max_qubits}-qubit guard; pass max_qubits to override")


def plus_state(n, dtype=np.float64, max_qubits=MAX_QUBITS) -> np.ndarray:
    check_qubits(n, max_qubits)
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=dtype)


def n_qubits_of(state) -> int:
    n = int(state.size).bit_length() - 1
    if state.ndim != 1 or state.size != 1 << n:
        raise ParameterError(f"state length {state.size} is not a power of two")
    return n


@lru_cache(maxsize=1024)
def _masks(support):
    flip = phase = n_y = 0
    for q, letter in support:
        if letter in "XY":
            flip |= 1 << q
        if letter in "YZ":
            phase |= 1 << q
        n_y += letter == "Y"
    return flip, phase, 1j**n_y


def apply_pauli_rotation(state, gate, angle):
    """Apply ``exp(-i * gate.sign * angle * P / 2)`` in place and return the state."""
    flip, phase, iy = _masks(gate.support)
    if (flip | phase) >= state.size:
        raise ParameterError(f"gate on qubits {gate.qubits} exceeds a {n_qubits_of(state)}-qubit state")
    theta = gate.sign * angle
    kappa = -1j * np.sin(theta / 2) * iy
    if not np.iscomplexobj(state):
        if kappa.imag != 0.0:
            raise ParameterError(f"gate {gate.label} is not real; simulate with a complex state")
        kappa = kappa.real
    _kernels.rotate(state, flip, phase, np.cos(theta / 2), kappa)
    return state


def _check_params(circuit, params):
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ParameterError(f"expected {circuit.n_params} parameters, got shape {params.shape}")
    return params


def run(circuit, params, real=None, max_qubits=MAX_QUBITS) -> np.ndarray:
    """Final state of ``circuit`` applied to ``|+>^n``.

    ``real=None`` picks the real fast path whenever the circuit allows it.
    """
    params = _check_params(circuit, params)
    if real is None:
        real = circuit.is_real
    state = plus_state(circuit.n_qubits, np.float64 if real else np.complex128, max_qubits)
    for g in circuit.gates:
        apply_pauli_rotation(state, g, params[g.param])
    return state


def _gate_angles(circuit, params):
    return np.array([params[g.param] for g in circuit.gates])


def _run_angles(circuit, angles, real):
    state = plus_state(circuit.n_qubits, np.float64 if real else np.complex128)
    for g, a in zip(circuit.gates, angles):
        apply_pauli_rotation(state, g, a)
    return state


def probabilities(state) -> np.ndarray:
    return state.real**2 if not np.iscomplexobj(state) else (state.real**2 + state.imag**2)


@lru_cache(maxsize=32)
def _parity(n, i, j):
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx >> i) ^ (idx >> j)) & 1


def expectation_zz(state, i, j) -> float:
    n = n_qubits_of(state)
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ParameterError(f"need two distinct qubits in range, got {i}, {j}")
    p = probabilities(state)
    return float(p.sum() - 2.0 * p[_parity(n, i, j).astype(bool)].sum())


@lru_cache(maxsize=64)
def _diagonal_cached(graph):
    n = graph.n
    check_qubits(n, MAX_QUBITS)
    idx = np.arange(1 << n, dtype=np.int64)
    diag = np.zeros(1 << n, dtype=np.int64)
    for u, v, w in graph.edges:
        diag += w * (1 - 2 * (((idx >> u) ^ (idx >> v)) & 1))
    diag.flags.writeable = False
    return diag


def energy_diagonal(graph) -> np.ndarray:
    """``<x| sum w_ij Z_i Z_j |x>`` for every basis index x (read-only, cached)."""
    return _diagonal_cached(graph)


@lru_cache(maxsize=64)
def _sorted_cached(graph):
    diag = energy_diagonal(graph)
    order = np.argsort(diag, kind="stable")
    sorted_e = diag[order].astype(float)
    order.flags.writeable = False
    sorted_e.flags.writeable = False
    return order, sorted_e


def cut_values(graph) -> np.ndarray:
    """``<x|H_w|x>`` for every basis index x."""
    return (graph.m - energy_diagonal(graph)) / 2


def energy(state, graph) -> EnergyReport:
    n = n_qubits_of(state)
    if n != graph.n:
        raise ParameterError(f"state has {n} qubits but graph has {graph.n} nodes")
    p = probabilities(state)
    per_edge = np.array([p.sum() - 2.0 * p[_parity(n, u, v).astype(bool)].sum() for u, v in graph.pairs])
    e = float(np.dot(graph.weights, per_edge)) if graph.m else 0.0
    return EnergyReport(e, (graph.m - e) / 2, per_edge)


def sample(state, shots, seed=None) -> np.ndarray:
    """Basis indices drawn i.i.d. from the Born distribution.

    Each index encodes a bitstring little-endian; see ``bitstring``.
    """
    if shots < 1:
        raise ParameterError(f"need at least one shot, got {shots}")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(probabilities(state))
    draws = rng.random(shots) * cdf[-1]
    return np.minimum(np.searchsorted(cdf, draws, side="right"), cdf.size - 1)


def bitstring(index, n) -> str:
    """Bitstring ``x_{n-1} ... x_0`` of a basis index."""
    return format(int(index), f"0{n}b")


def _cvar_terms(p_sorted, sorted_e, alpha):
    cum = np.cumsum(p_sorted)
    k = min(int(np.searchsorted(cum, alpha, side="left")), cum.size - 1)
    head = cum[k - 1] if k else 0.0
    return k, head


def cvar_from_distribution(probs, energies, alpha, order=None) -> float:
    """Mean energy over the lowest-energy ``alpha`` probability mass.

    The boundary outcome is included fractionally so the kept mass is exactly
    ``alpha``.
    """
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"CVaR level must lie in (0, 1], got {alpha}")
    if order is None:
        order = np.argsort(energies, kind="stable")
    p_sorted = probs[order]
    e_sorted = np.asarray(energies, dtype=float)[order]
    k, head = _cvar_terms(p_sorted, e_sorted, alpha)
    total = np.dot(p_sorted[:k], e_sorted[:k]) + (alpha - head) * e_sorted[k]
    return float(total / alpha)


def cvar(state, graph, alpha) -> float:
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"CVaR level must lie in (0, 1], got {alpha}")
    order, sorted_e = _sorted_cached(graph)
    p_sorted = probabilities(state)[order]
    k, head = _cvar_terms(p_sorted, sorted_e, alpha)
    return float((np.dot(p_sorted[:k], sorted_e[:k]) + (alpha - head) * sorted_e[k]) / alpha)


def cvar_from_samples(samples, graph, alpha) -> float:
    """Shot-based CVaR: mean of the best ceil(alpha * shots) sampled energies."""
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"CVaR level must lie in (0, 1], got {alpha}")
    e = np.sort(energy_diagonal(graph)[np.asarray(samples)])
    keep = max(1, int(np.ceil(alpha * e.size)))
    return float(e[:keep].mean())


def cvar_observable(state, graph, alpha):
    """CVaR value and a diagonal observable with the same first derivative.

    With the sort order and boundary frozen, CVaR is linear in the
    probabilities: ``d CVaR / d p_x = (e_x - e_boundary) / alpha`` for outcomes
    inside the kept mass and zero elsewhere.
    """
    order, sorted_e = _sorted_cached(graph)
    p_sorted = probabilities(state)[order]
    k, head = _cvar_terms(p_sorted, sorted_e, alpha)
    value = (np.dot(p_sorted[:k], sorted_e[:k]) + (alpha - head) * sorted_e[k]) / alpha
    obs = np.zeros(p_sorted.size)
    obs[order[:k]] = (sorted_e[:k] - sorted_e[k]) / alpha
    return float(value), obs


def gradient(circuit, params, graph) -> np.ndarray:
    """Parameter-shift gradient of ``<sum w Z Z>``.

    Every generator is a Pauli string, so shifting one gate's effective angle
    by +/- pi/2 gives its exact derivative. Shared parameters sum the
    contributions of all gates bound to them.
    """
    params = _check_params(circuit, params)
    real = circuit.is_real
    angles = _gate_angles(circuit, params)
    grad = np.zeros(circuit.n_params)
    for k, g in enumerate(circuit.gates):
        shifted = []
        for shift in (np.pi / 2, -np.pi / 2):
            a = angles.copy()
            a[k] += g.sign * shift  # shift the effective angle sign * theta
            shifted.append(energy(_run_angles(circuit, a, real), graph).energy)
        grad[g.param] += g.sign * 0.5 * (shifted[0] - shifted[1])
    return grad


def adjoint_gradient(circuit, params, observable, real=None):
    """Expectation of a diagonal observable and its exact gradient.

    ``observable`` is either a vector of diagonal entries or a callable taking
    the final state and returning ``(value, diagonal)``; the latter lets the
    CVaR objective pick its linearization at the current state. One forward
    pass and one backward pass, independent of the parameter count.
    """
    params = _check_params(circuit, params)
    if real is None:
        real = circuit.is_real
    angles = _gate_angles(circuit, params)
    psi = _run_angles(circuit, angles, real)
    if callable(observable):
        value, diag = observable(psi)
    else:
        diag = np.asarray(observable, dtype=float)
        value = float(np.dot(diag, probabilities(psi)))
    lam = diag * psi
    grad = np.zeros(circuit.n_params)
    for g, a in zip(reversed(circuit.gates), angles[::-1]):
        flip, phase, iy = _masks(g.support)
        kg = -1j * iy
        if real:
            kg = kg.real
        # d<psi|O|psi>/d(theta) = 2 Re <lam| dU psi_prev> and dU psi_prev = -i s/2 P psi
        grad[g.param] += g.sign * float(np.real(_kernels.generator_overlap(lam, psi, flip, phase, kg)))
        apply_pauli_rotation(psi, g, -a)
        apply_pauli_rotation(lam, g, -a)
    return value, grad

