"""Compiled amplitude loops for Pauli rotations.

A Pauli string on the basis is described by two bit masks: ``flip`` (qubits
carrying X or Y) and ``phase`` (qubits carrying Y or Z). For a basis index x,

    P |x> = i**n_y * (-1)**parity(x & phase) * |x ^ flip>

so ``exp(-i t P / 2)`` maps ``psi[x ^ flip] <- c psi[x ^ flip] + kappa * sgn(x) psi[x]``
with ``c = cos(t/2)`` and ``kappa = -i sin(t/2) i**n_y``.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _sgn(v):
    p = 0
    while v:
        v &= v - 1
        p ^= 1
    return 1 - 2 * p


@njit(cache=True)
def rotate(psi, flip, phase, c, kappa):
    n = psi.shape[0]
    if flip == 0:
        for x in range(n):
            psi[x] *= c + kappa * _sgn(x & phase)
        return
    for x in range(n):
        y = x ^ flip
        if x < y:
            a = psi[x]
            b = psi[y]
            psi[x] = c * a + kappa * _sgn(y & phase) * b
            psi[y] = c * b + kappa * _sgn(x & phase) * a


@njit(cache=True)
def generator_overlap(lam, psi, flip, phase, kg):
    """``<lam| G |psi>`` for ``G = kg * P / i**n_y`` (callers pass ``kg = -i * i**n_y``)."""
    n = psi.shape[0]
    acc = 0.0 * kg
    for x in range(n):
        acc += np.conj(lam[x ^ flip]) * kg * _sgn(x & phase) * psi[x]
    return acc
