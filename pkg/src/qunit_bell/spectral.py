"""Spectral certification of the quantum maximum.

For fixed measurement settings the largest quantum value over all states is
exactly the top eigenvalue of the Bell operator, so one eigendecomposition
certifies both the maximum 2*sqrt(N) and that the maximally entangled state
attains it.  Eigenvector-dependent claims (uniform Schmidt spectrum, entropy
ln N) are only meaningful when the top eigenvalue is non-degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import _check_dim
from .functional import bell_operator, max_entangled_state
from .linalg import ATOL_EIGEN, expectation, hermitian_eigensystem, projector, schmidt_spectrum

DEGENERACY_GAP = 1e-8


@dataclass(frozen=True)
class SpectralReport:
    """Top of the Bell-operator spectrum and the entanglement of its eigenvector."""

    dim: int
    max_eigenvalue: float
    gap: float
    top_state: np.ndarray
    schmidt: np.ndarray
    entropy: float


def entanglement_entropy(schmidt: np.ndarray) -> float:
    """Von Neumann entropy -sum s ln s of a squared-Schmidt spectrum."""
    s = schmidt[schmidt > 1e-15]
    return float(-np.sum(s * np.log(s)))


def analyze(N: int) -> SpectralReport:
    """Eigenanalysis of the Bell operator for dimension N."""
    N = _check_dim(N)
    eigenvalues, eigenvectors = hermitian_eigensystem(bell_operator(N))
    top_state = eigenvectors[0]
    schmidt = schmidt_spectrum(top_state, N)
    return SpectralReport(
        dim=N,
        max_eigenvalue=float(eigenvalues[0]),
        gap=float(eigenvalues[0] - eigenvalues[1]),
        top_state=top_state,
        schmidt=schmidt,
        entropy=entanglement_entropy(schmidt),
    )


def verify_max_entangled_optimality(N: int) -> tuple[float, bool]:
    """B_N of the maximally entangled state, and whether it meets the spectral maximum."""
    N = _check_dim(N)
    operator = bell_operator(N)
    achieved = expectation(projector(max_entangled_state(N)), operator)
    top = float(hermitian_eigensystem(operator)[0][0])
    return achieved, abs(achieved - top) < ATOL_EIGEN
