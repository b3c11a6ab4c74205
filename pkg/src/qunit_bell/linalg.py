"""Dense complex linear algebra for small Hilbert spaces (dim <= ~100).

Kets are 1-D complex ndarrays, operators are square 2-D complex ndarrays.
Tensor products put the first factor (Alice) on the slowest-varying index.
"""

from __future__ import annotations

import numpy as np

# Tolerance ladder: algebraic identities, eigen-residuals, optimizer acceptance.
ATOL_ALGEBRA = 1e-10
ATOL_EIGEN = 1e-8
ATOL_ACCEPT = 1e-6

# How far a "normalized" input ket may deviate from unit norm before rejection.
NORM_REJECT = 1e-8


def _as_complex(a) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite entries (NaN/Inf) are not admitted")
    return arr


def hermiticity_defect(op: np.ndarray) -> float:
    """Max-entry deviation of op from its conjugate transpose."""
    op = np.asarray(op)
    return float(np.abs(op - op.conj().T).max())


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor's index varying slowest."""
    return np.kron(_as_complex(a), _as_complex(b))


def projector(v: np.ndarray) -> np.ndarray:
    """Rank-1 projector |v><v| of a normalized ket."""
    v = _as_complex(v)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > NORM_REJECT:
        raise ValueError(f"ket is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return np.outer(v, v.conj())


def expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    """Born-rule expectation Tr(rho obs) of a Hermitian observable."""
    rho = _as_complex(rho)
    obs = _as_complex(obs)
    if rho.shape != obs.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape} vs observable {obs.shape}")
    if hermiticity_defect(obs) > ATOL_ALGEBRA:
        raise ValueError(
            f"observable is not Hermitian: defect {hermiticity_defect(obs):.3e}"
        )
    value = complex(np.trace(rho @ obs))
    if abs(value.imag) >= 1e-9:
        raise ValueError(f"expectation has non-negligible imaginary part {value.imag:.3e}")
    return value.real


def hermitian_eigensystem(op: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvectors.

    Returns (w, vecs) with vecs[k] the eigenvector for w[k].
    """
    op = _as_complex(op)
    defect = hermiticity_defect(op)
    if defect > ATOL_ALGEBRA:
        raise ValueError(f"operator is not Hermitian: defect {defect:.3e}")
    w, v = np.linalg.eigh(op)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order].T.copy()


def schmidt_spectrum(psi: np.ndarray, local_dim: int) -> np.ndarray:
    """Descending squared Schmidt coefficients of a bipartite pure state."""
    psi = _as_complex(psi)
    if psi.shape != (local_dim * local_dim,):
        raise ValueError(
            f"state of length {psi.shape[0]} is not bipartite over local dimension {local_dim}"
        )
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > NORM_REJECT:
        raise ValueError(f"ket is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    singular = np.linalg.svd(psi.reshape(local_dim, local_dim), compute_uv=False)
    return singular**2


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return rho as complex array.

    Raises ValueError naming the violated invariant and its magnitude.
    """
    rho = _as_complex(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > ATOL_ALGEBRA:
        raise ValueError(f"density matrix is not Hermitian: defect {defect:.3e}")
    trace_dev = abs(complex(np.trace(rho)) - 1.0)
    if trace_dev > ATOL_ALGEBRA:
        raise ValueError(f"density matrix trace deviates from 1 by {trace_dev:.3e}")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -1e-9:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return rho
