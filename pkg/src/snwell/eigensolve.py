"""Lowest eigenpairs of the tridiagonal Hamiltonian, with fixed conventions.

The heavy lifting is LAPACK bisection + inverse iteration on the symmetric
tridiagonal matrix (scipy.linalg.eigh_tridiagonal with an index range), which
is deterministic bit-for-bit for identical inputs and needs O(N k) memory.
On top of that this module enforces the conventions every downstream
consumer relies on:

* eigenvectors are tabulated on the full grid with the Dirichlet zeros at
  both endpoints and normalized so that sum(psi^2) dx = 1,
* the entry of largest magnitude is positive (ties broken leftmost), so
  re-runs and golden files agree,
* eigenvalues come back ascending; inside a near-degenerate cluster
  (|E_i - E_j| < 1e-9 max(|E_i|, 1)) the vectors are re-orthogonalized and
  ordered by the grid index of their largest-amplitude entry,
* every returned pair satisfies the residual bound
  max|H psi - E psi| <= 1e-8 * scale(H), else NumericalError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .classical import ModelParams
from .discretize import DiscreteHamiltonian, SpatialGrid
from .errors import ConfigurationError, NumericalError

__all__ = ["EigenState", "Spectrum", "solve", "eigenvalue_residual"]

RESIDUAL_RTOL = 1e-8
CLUSTER_RTOL = 1e-9


@dataclass(frozen=True)
class EigenState:
    """One eigenpair (E_n, psi_n) tabulated on the full grid.

    boundary_amplitude is max(|psi|) over the first and last interior points;
    values that are not small signal a state leaning on the Dirichlet window
    (plane-wave-like behaviour at the box edge) rather than a converged bound
    state.
    """

    index: int
    energy: float
    values: np.ndarray = field(repr=False, compare=False)
    boundary_amplitude: float = 0.0


@dataclass(frozen=True)
class Spectrum:
    states: list[EigenState]
    params: ModelParams
    grid: SpatialGrid

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.states])


def _orthonormalize_clusters(w: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Re-orthogonalize and re-order eigenvectors inside degenerate clusters.

    Mathematically the matrix has simple eigenvalues (all off-diagonals are
    nonzero), so clusters only appear when the splitting falls below machine
    resolution; this pass makes the output well-defined in that case.
    """
    m = w.size
    i = 0
    while i < m:
        j = i + 1
        while j < m and abs(w[j] - w[j - 1]) < CLUSTER_RTOL * max(abs(w[j]), 1.0):
            j += 1
        if j - i > 1:
            block = v[:, i:j].copy()
            for c in range(block.shape[1]):
                for prev in range(c):
                    block[:, c] -= (block[:, prev] @ block[:, c]) * block[:, prev]
                block[:, c] /= np.linalg.norm(block[:, c])
            order = np.argsort([int(np.argmax(np.abs(block[:, c]))) for c in range(j - i)],
                               kind="stable")
            v[:, i:j] = block[:, order]
            w[i:j] = w[i:j][order]
        i = j
    return w, v


def solve(h: DiscreteHamiltonian, k: int) -> Spectrum:
    """Lowest k eigenpairs of the discrete Hamiltonian.

    Raises ConfigurationError when k is out of 1..N-2 and NumericalError
    (carrying the offending state index where known) when convergence or the
    residual bound fails.
    """
    m = h.diagonal.size
    if not 1 <= k <= m:
        raise ConfigurationError(f"k must be in 1..{m}, got {k}")
    try:
        w, v = eigh_tridiagonal(h.diagonal, h.off_diagonal, select="i", select_range=(0, k - 1))
    except LinAlgError as exc:
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc

    # Gershgorin: every eigenvalue must sit inside the union of the discs.
    off_bound = 2.0 * float(np.max(np.abs(h.off_diagonal)))
    lo = float(np.min(h.diagonal)) - off_bound
    hi = float(np.max(h.diagonal)) + off_bound
    for i, e in enumerate(w):
        if not lo <= e <= hi:
            raise NumericalError(
                f"eigenvalue {e} outside Gershgorin bounds [{lo}, {hi}]", state_index=i
            )

    w, v = _orthonormalize_clusters(w.copy(), v.copy())

    scale = float(np.max(np.abs(h.diagonal))) + off_bound
    dx = h.grid.dx
    n = h.grid.n_points
    states = []
    for i in range(k):
        interior = v[:, i] / math.sqrt(float(np.sum(v[:, i] ** 2)) * dx)
        residual = float(np.max(np.abs(h.apply(interior) - w[i] * interior)))
        if residual > RESIDUAL_RTOL * scale:
            raise NumericalError(
                f"residual {residual} exceeds {RESIDUAL_RTOL * scale} for state {i}",
                state_index=i,
            )
        psi = np.zeros(n)
        psi[1:-1] = interior
        if psi[int(np.argmax(np.abs(psi)))] < 0:
            psi = -psi
        states.append(
            EigenState(
                index=i,
                energy=float(w[i]),
                values=psi,
                boundary_amplitude=float(max(abs(psi[1]), abs(psi[-2]))),
            )
        )
    return Spectrum(states=states, params=h.params, grid=h.grid)


def eigenvalue_residual(h: DiscreteHamiltonian, s: EigenState) -> float:
    """max|H psi - E psi| over the interior points of a solved state."""
    if s.values.size != h.grid.n_points:
        raise ValueError(
            f"state has {s.values.size} values but the grid has {h.grid.n_points} points"
        )
    quad = float(np.sum(s.values**2)) * h.grid.dx
    if abs(quad - 1.0) > 1e-6:
        raise ValueError(f"state is not grid-normalized (sum psi^2 dx = {quad})")
    interior = s.values[1:-1]
    return float(np.max(np.abs(h.apply(interior) - s.energy * interior)))
