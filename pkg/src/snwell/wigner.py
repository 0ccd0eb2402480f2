"""Discrete Wigner transform and the nonreactive phase-space probability.

For a real eigenfunction tabulated on the spatial grid the Wigner function
at (x_j, p_k) is the quadrature

    rho(x_j, p_k) = (1 / pi hbar) sum_l psi(x_j - l dx) psi(x_j + l dx)
                                      cos(2 l dx p_k / hbar) dx,

the offset step being 2 dx so both evaluation points fall exactly on grid
nodes; l runs over every integer (positive and negative) for which both
points stay inside [a, b], consistent with psi being identically zero
outside the Dirichlet window.  Real eigenfunctions kill the sine part
analytically, so no complex arrays are ever built, and rho(x, p) = rho(x, -p)
holds exactly.

rho is a quasiprobability: it integrates to 1 (up to momentum-window
truncation) and obeys |rho| <= 1/(pi hbar), but it may be negative and is
never clamped.  The probability of classically nonreactive behaviour is its
integral over the region H(x, p) <= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import ModelParams, hamiltonian
from .discretize import SpatialGrid, uniform_points
from .eigensolve import EigenState
from .errors import ConfigurationError

__all__ = [
    "MomentumGrid",
    "WignerField",
    "make_momentum_grid",
    "wigner_transform",
    "marginal_x",
    "nonreactive_probability",
]


@dataclass(frozen=True)
class MomentumGrid:
    c: float
    d: float
    n_points: int
    dp: float
    points: np.ndarray = field(repr=False, compare=False)


def make_momentum_grid(c: float, d: float, n: int) -> MomentumGrid:
    """Uniform momentum grid on [c, d] with n points (endpoints included)."""
    if not d > c:
        raise ConfigurationError(f"momentum grid needs c < d, got [{c!r}, {d!r}]")
    if n < 2:
        raise ConfigurationError(f"momentum grid needs at least 2 points, got {n}")
    dp = (d - c) / (n - 1)
    return MomentumGrid(c=c, d=d, n_points=n, dp=dp, points=uniform_points(c, d, n))


@dataclass(frozen=True)
class WignerField:
    """rho tabulated on the product grid, rows = x, columns = p.

    Carries the state and parameters it came from so emitted files are
    self-describing and the classical overlay contour at e = energy can be
    regenerated.
    """

    values: np.ndarray = field(repr=False, compare=False)
    state_index: int
    energy: float
    params: ModelParams
    spatial_grid: SpatialGrid
    momentum_grid: MomentumGrid


def wigner_transform(
    state: EigenState,
    xg: SpatialGrid,
    pg: MomentumGrid,
    params: ModelParams,
) -> WignerField:
    """Wigner quasiprobability of one eigenstate on the product grid.

    The l = 0 term enters once and each |l| >= 1 pair twice (cosine is even),
    so the whole field is one correlation-matrix product: O(N^2 L) flops,
    rows independent, deterministic output regardless of BLAS threading.
    """
    psi = state.values
    n = xg.n_points
    if psi.size != n:
        raise ValueError(f"state has {psi.size} values but the spatial grid has {n} points")
    lmax = (n - 1) // 2
    corr = np.zeros((n, lmax + 1))
    corr[:, 0] = psi * psi
    for l in range(1, lmax + 1):
        corr[l : n - l, l] = psi[: n - 2 * l] * psi[2 * l :]
    corr[:, 1:] *= 2.0
    eta = 2.0 * xg.dx * np.arange(lmax + 1)
    prefactor = xg.dx / (math.pi * params.hbar)
    pts = pg.points
    if np.array_equal(pts[::-1], -pts):
        # mirrored momentum columns share one evaluation: the p -> -p symmetry
        # of the cosine kernel then holds bitwise (a plain full matrix product
        # would not guarantee that, BLAS may round column blocks differently)
        half = pg.n_points - (pg.n_points + 1) // 2
        kernel = np.cos(np.outer(eta, pts[half:]) / params.hbar)
        right = prefactor * (corr @ kernel)
        values = np.empty((n, pg.n_points))
        values[:, half:] = right
        values[:, :half] = right[:, pg.n_points - 1 - half - np.arange(half)]
    else:
        kernel = np.cos(np.outer(eta, np.abs(pts)) / params.hbar)
        values = prefactor * (corr @ kernel)
    return WignerField(
        values=values,
        state_index=state.index,
        energy=state.energy,
        params=params,
        spatial_grid=xg,
        momentum_grid=pg,
    )


def marginal_x(w: WignerField) -> np.ndarray:
    """Momentum-integrated field, sum_k rho(x_j, p_k) dp; approximates psi^2."""
    return np.sum(w.values, axis=1) * w.momentum_grid.dp


def nonreactive_probability(w: WignerField, params: ModelParams) -> float:
    """Integral of rho over the classically nonreactive region H(x, p) <= 0.

    Cells are included by the sign of H at their sample point (x_j, p_k); no
    sub-cell refinement at the separatrix.  Being a quasiprobability integral
    on a finite window, the result can fall slightly outside [0, 1] and is
    reported as computed.
    """
    h = hamiltonian(params, w.spatial_grid.points[:, None], w.momentum_grid.points[None, :])
    inside = np.where(h <= 0.0, w.values, 0.0)
    return float(np.sum(inside)) * w.spatial_grid.dx * w.momentum_grid.dp
