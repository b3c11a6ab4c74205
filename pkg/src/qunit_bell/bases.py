"""The two mutually unbiased bases and their intermediate states.

The A basis is the computational basis, the A' basis its discrete Fourier
transform.  For every pair (a_i, a'_j) there is one intermediate (Breidbart)
state m_ij lying exactly between the two: it identifies either with the same
probability 1/2 + 1/(2*sqrt(N)).  The N^2 scaled projectors (1/N)|m_ij><m_ij|
sum to the identity, so the family is a POVM.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import projector


def _check_dim(N: int) -> int:
    N = int(N)
    if N < 2:
        raise ValueError(f"local dimension must be at least 2, got {N}")
    return N


def _check_index(i: int, N: int, name: str) -> int:
    i = int(i)
    if not 0 <= i < N:
        raise ValueError(f"{name} index {i} out of range for dimension {N}")
    return i


def computational_basis(N: int) -> np.ndarray:
    """The N standard unit vectors, as rows."""
    N = _check_dim(N)
    return np.eye(N, dtype=complex)


def fourier_basis(N: int) -> np.ndarray:
    """Rows a'_k with amplitudes exp(2*pi*i*k*n/N)/sqrt(N) at position n."""
    N = _check_dim(N)
    k = np.arange(N)
    return np.exp(2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)


def overlap_phase(i: int, j: int, N: int) -> float:
    """Argument phi_ij = 2*pi*i*j/N of the overlap <a_i|a'_j>."""
    N = _check_dim(N)
    i = _check_index(i, N, "row")
    j = _check_index(j, N, "column")
    return 2.0 * np.pi * i * j / N


def normalization_constant(N: int) -> float:
    """Squared norm C = 2*(1 + 1/sqrt(N)) of exp(i*phi_ij)|a_i> + |a'_j>."""
    N = _check_dim(N)
    return 2.0 * (1.0 + 1.0 / np.sqrt(N))


def intermediate_state(i: int, j: int, N: int) -> np.ndarray:
    """Normalized midpoint (exp(i*phi_ij)|a_i> + |a'_j>)/sqrt(C)."""
    N = _check_dim(N)
    i = _check_index(i, N, "row")
    j = _check_index(j, N, "column")
    a_i = np.zeros(N, dtype=complex)
    a_i[i] = 1.0
    a_prime_j = fourier_basis(N)[j]
    phase = np.exp(1j * overlap_phase(i, j, N))
    return (phase * a_i + a_prime_j) / np.sqrt(normalization_constant(N))


@dataclass(frozen=True)
class BasisPair:
    """Computational basis A and Fourier basis A' (rows of each array)."""

    dim: int
    a_states: np.ndarray
    a_prime_states: np.ndarray


@dataclass(frozen=True)
class IntermediateFamily:
    """All N^2 intermediate states m_ij with their phases and normalization.

    states[i, j] is the ket m_ij; the first index refers to the A basis,
    the second to the A' basis.
    """

    dim: int
    states: np.ndarray
    normalization: float
    phases: np.ndarray


def basis_pair(N: int) -> BasisPair:
    return BasisPair(_check_dim(N), computational_basis(N), fourier_basis(N))


def intermediate_family(N: int) -> IntermediateFamily:
    N = _check_dim(N)
    states = np.empty((N, N, N), dtype=complex)
    phases = np.empty((N, N))
    for i in range(N):
        for j in range(N):
            states[i, j] = intermediate_state(i, j, N)
            phases[i, j] = overlap_phase(i, j, N)
    return IntermediateFamily(N, states, normalization_constant(N), phases)


def povm_defect(family: IntermediateFamily) -> float:
    """Max-entry deviation of sum_ij (1/N)|m_ij><m_ij| from the identity."""
    N = family.dim
    total = np.zeros((N, N), dtype=complex)
    for i in range(N):
        for j in range(N):
            total += projector(family.states[i, j]) / N
    return float(np.abs(total - np.eye(N)).max())
