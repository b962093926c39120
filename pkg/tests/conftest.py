"""Shared fixtures and independent oracle implementations.

The oracles here deliberately avoid the library's own code paths: Pauli
matrices, tensor products, partial traces and singular values are all
built from scratch so that agreement with the package is meaningful.
"""

import math

import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = [SX, SY, SZ]


def kron3(a, b, c):
    return np.kron(np.kron(a, b), c)


def bloch(theta, phi=0.0):
    return np.array([math.sin(theta) * math.cos(phi),
                     math.sin(theta) * math.sin(phi),
                     math.cos(theta)])


def obs(v):
    return v[0] * SX + v[1] * SY + v[2] * SZ


def oracle_svetlichny_matrix(a, ap, b, bp, c, cp):
    """Literal eight-term operator from Cartesian direction vectors."""
    A, Ap, B, Bp, C, Cp = map(obs, (a, ap, b, bp, c, cp))
    return (kron3(A, B + Bp, C) + kron3(A, B - Bp, Cp)
            + kron3(Ap, B - Bp, C) - kron3(Ap, B + Bp, Cp))


def oracle_tensor(rho_entries):
    """All 27 triple-Pauli expectations via explicit traces."""
    m = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                m[i, j, k] = np.trace(
                    rho_entries @ kron3(PAULI[i], PAULI[j], PAULI[k])).real
    return m


def oracle_pair_matrix(rho_entries):
    t = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            t[i, j] = np.trace(rho_entries @ np.kron(PAULI[i], PAULI[j])).real
    return t


def oracle_flatten(m):
    """3x9 flattening with row j and column 3*i + k, by explicit loops."""
    out = np.zeros((3, 9))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                out[j, 3 * i + k] = m[i, j, k]
    return out


def oracle_partial_trace(rho_entries, n, keep):
    """Sum over computational-basis labels of the discarded qubits."""
    keep = list(keep)
    drop = [q for q in range(n) if q not in keep]
    k = len(keep)
    out = np.zeros((2**k, 2**k), dtype=complex)
    for row in range(2**n):
        for col in range(2**n):
            if any((row >> (n - 1 - q)) & 1 != (col >> (n - 1 - q)) & 1
                   for q in drop):
                continue
            r = sum(((row >> (n - 1 - q)) & 1) << (k - 1 - pos)
                    for pos, q in enumerate(keep))
            c = sum(((col >> (n - 1 - q)) & 1) << (k - 1 - pos)
                    for pos, q in enumerate(keep))
            out[r, c] += rho_entries[row, col]
    return out


def oracle_projected_gradient_max(u, v, iters=4000, lr=0.5):
    """Numerical maximization of u.x + v.y on the unit sphere in R^8."""
    coef = np.concatenate([u, v])
    z = np.ones(8) / math.sqrt(8.0)
    for _ in range(iters):
        z = z + lr * coef
        z /= np.linalg.norm(z)
    return float(coef @ z)


def random_pure(n, rng):
    a = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return a / np.linalg.norm(a)


def random_density_entries(n, rng):
    d = 2**n
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


@pytest.fixture
def rng():
    return np.random.default_rng(20250809)
