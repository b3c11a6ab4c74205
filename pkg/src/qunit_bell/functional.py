"""The Bell functional B_N over two von Neumann settings and N^2 binary clicks.

Alice measures one of two mutually unbiased bases, A (computational) or A'
(Fourier).  Bob measures one of N^2 binary projectors onto the intermediate
states m_ij.  The states are organized into N groups M_0..M_{N-1} of N states
each: group j holds, at value v, the state m_{v,(v+j) mod N}.  Every group
therefore contains each first index and each second index exactly once.

B_N sums the joint "click" probabilities over all 2N (Alice setting, group)
combinations, counting a click as +1 when it identifies Bob's correlated state
and -1 otherwise:

  - Setting A, Alice outcome u: the correct group-j state is the one with
    first index u, i.e. value v = u.
  - Setting A', Alice outcome u: the shared state correlates Bob with the
    Fourier state of label (N-u) mod N, so the correct group-j state is the
    one with second index (N-u) mod N, i.e. value v = (-u-j) mod N.
    Equivalently, within group j the clicking value reads N-j higher
    (mod N) than the value of Bob's correlated state.

For the maximally entangled state each combination contributes exactly
1/sqrt(N), giving the quantum value 2*sqrt(N); local deterministic models
cannot exceed 2.  At N=2 this is the CHSH inequality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import _check_dim, computational_basis, fourier_basis, intermediate_family
from .linalg import projector, validate_density_matrix

SETTING_A = 0
SETTING_A_PRIME = 1


@dataclass(frozen=True)
class ValueLayout:
    """Assignment of intermediate states to (value, group) slots.

    assignment[v, j] holds the index pair (i, l) of the state m_il sitting
    at value v of group M_j, namely (v, (v+j) mod N).
    """

    dim: int
    assignment: np.ndarray

    def state_index(self, value: int, group: int) -> tuple[int, int]:
        i, l = self.assignment[value, group]
        return int(i), int(l)


@dataclass(frozen=True)
class BellFunctional:
    """Signed coefficients c[x, u, v, j] in {+1, -1}.

    x is Alice's setting (0 = A, 1 = A'), u her outcome, and (v, j) names
    Bob's binary measurement by its slot in the value layout.  Coefficients
    are stored as integers so deterministic-strategy values stay exact.
    """

    dim: int
    coefficients: np.ndarray


@dataclass(frozen=True)
class JointClickTable:
    """Joint probabilities p[x, u, v, j] of Alice outcome u and a Bob click."""

    dim: int
    probabilities: np.ndarray


def build_layout(N: int) -> ValueLayout:
    """Map slot (value v, group j) to the state index pair (v, (v+j) mod N)."""
    N = _check_dim(N)
    assignment = np.empty((N, N, 2), dtype=int)
    for v in range(N):
        for j in range(N):
            assignment[v, j] = (v, (v + j) % N)
    return ValueLayout(N, assignment)


def build_functional(N: int) -> BellFunctional:
    """Coefficients +1 on the correlated slot of each (setting, outcome, group)."""
    N = _check_dim(N)
    c = np.full((2, N, N, N), -1, dtype=np.int8)
    for u in range(N):
        for j in range(N):
            c[SETTING_A, u, u, j] = 1
            c[SETTING_A_PRIME, u, (-u - j) % N, j] = 1
    return BellFunctional(N, c)


def max_entangled_state(N: int) -> np.ndarray:
    """(1/sqrt(N)) sum_k |a_k> x |a_k>; in the A' bases it pairs label l with (N-l) mod N."""
    N = _check_dim(N)
    psi = np.zeros(N * N, dtype=complex)
    psi[np.arange(N) * (N + 1)] = 1.0 / np.sqrt(N)
    return psi


def _alice_settings(N: int) -> np.ndarray:
    """Alice's two bases stacked as rows: shape (2, N, N)."""
    return np.stack([computational_basis(N), fourier_basis(N)])


def joint_click_table(rho: np.ndarray, layout: ValueLayout) -> JointClickTable:
    """Born-rule table p[x, u, v, j] = Tr(rho (P_u^x  x  P_m)) for state rho.

    Alice occupies the first (slowest) tensor factor.
    """
    N = layout.dim
    rho = validate_density_matrix(rho)
    if rho.shape != (N * N, N * N):
        raise ValueError(
            f"state has dimension {rho.shape[0]}, expected {N * N} for local dimension {N}"
        )
    m_flat = intermediate_family(N).states.reshape(N * N, N)
    slot = layout.assignment[:, :, 0] * N + layout.assignment[:, :, 1]  # (v, j) -> flat m index
    probs = np.empty((2, N, N, N))
    for x, alice in enumerate(_alice_settings(N)):
        joint = np.kron(alice, m_flat)  # rows u*N^2 + s are the kets a_u x m_s
        p = np.einsum("ij,jk,ik->i", joint.conj(), rho, joint).real
        probs[x] = p.reshape(N, N * N)[:, slot]
    return JointClickTable(N, probs)


def evaluate(functional: BellFunctional, table: JointClickTable) -> float:
    """Signed sum of joint click probabilities."""
    if functional.dim != table.dim:
        raise ValueError(
            f"dimension mismatch: functional {functional.dim} vs table {table.dim}"
        )
    return float(np.sum(functional.coefficients * table.probabilities))


def quantum_value(rho: np.ndarray, N: int) -> float:
    """B_N of a (possibly mixed) state on the N^2-dimensional joint space."""
    N = _check_dim(N)
    return evaluate(build_functional(N), joint_click_table(rho, build_layout(N)))


def bell_operator(N: int) -> np.ndarray:
    """Hermitian operator whose expectation reproduces B_N for fixed settings."""
    N = _check_dim(N)
    functional = build_functional(N)
    layout = build_layout(N)
    m_states = intermediate_family(N).states
    operator = np.zeros((N * N, N * N), dtype=complex)
    for x, alice in enumerate(_alice_settings(N)):
        for u in range(N):
            bob_part = np.zeros((N, N), dtype=complex)
            for v in range(N):
                for j in range(N):
                    i, l = layout.state_index(v, j)
                    bob_part += int(functional.coefficients[x, u, v, j]) * projector(
                        m_states[i, l]
                    )
            operator += np.kron(projector(alice[u]), bob_part)
    return operator
