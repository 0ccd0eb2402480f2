"""Classical mechanics of the cubic saddle-node well.

The system is the one degree-of-freedom Hamiltonian

    H(x, p) = p^2 / (2 m) + V(x),      V(x) = -sqrt(mu) x^2 + (alpha/3) x^3,

with mu >= 0 and alpha > 0.  For mu > 0 the potential has a barrier top at
x = 0 (energy 0) and a well bottom at x = 2 sqrt(mu)/alpha; as mu -> 0 the
two merge and annihilate.  The well depth

    D = 4 mu^(3/2) / (3 alpha^2)

is the barrier-to-bottom energy drop and is the natural sweep coordinate:
at fixed mu, larger alpha means a shallower well.

Everything here is a pure function of its arguments and can be called from
any number of threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "ModelParams",
    "EquilibriumKind",
    "Equilibrium",
    "TrajectoryClass",
    "potential",
    "hamiltonian",
    "equilibria",
    "depth",
    "classify_energy",
    "contour_points",
]


@dataclass(frozen=True)
class ModelParams:
    """Physical parameter set defining one system instance.

    mu controls the separation of the two equilibria, alpha the strength of
    the cubic term (and through it the well depth), hbar and mass enter only
    the quantum side and the kinetic energy.
    """

    mu: float
    alpha: float
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("mu", "alpha", "hbar", "mass"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"{name} must be finite, got {getattr(self, name)!r}")
        if self.mu < 0:
            raise ConfigurationError(f"mu must be >= 0, got {self.mu!r}")
        if self.alpha <= 0:
            raise ConfigurationError(f"alpha must be > 0, got {self.alpha!r}")
        if self.hbar <= 0:
            raise ConfigurationError(f"hbar must be > 0, got {self.hbar!r}")
        if self.mass <= 0:
            raise ConfigurationError(f"mass must be > 0, got {self.mass!r}")


class EquilibriumKind(enum.Enum):
    SADDLE = "saddle"
    CENTRE = "centre"
    DEGENERATE = "degenerate"  # mu = 0, saddle and centre have collided


class TrajectoryClass(enum.Enum):
    REACTIVE = "reactive"
    NONREACTIVE = "nonreactive"


@dataclass(frozen=True)
class Equilibrium:
    """A phase-space equilibrium (x, 0) with its stability kind and energy."""

    position: float
    kind: EquilibriumKind
    energy: float


def potential(params: ModelParams, x):
    """V(x) = -sqrt(mu) x^2 + (alpha/3) x^3.  Accepts scalars or arrays."""
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else x
    return -math.sqrt(params.mu) * x**2 + (params.alpha / 3.0) * x**3


def hamiltonian(params: ModelParams, x, p):
    """Total energy p^2/(2m) + V(x).  Broadcasts over array arguments."""
    return p**2 / (2.0 * params.mass) + potential(params, x)


def depth(params: ModelParams) -> float:
    """Well depth D = 4 mu^(3/2) / (3 alpha^2); zero exactly at the bifurcation."""
    return 4.0 * params.mu**1.5 / (3.0 * params.alpha**2)


def equilibria(params: ModelParams) -> list[Equilibrium]:
    """Both equilibria of the well, or the single degenerate one at mu = 0.

    The barrier top at x = 0 is a saddle in phase space (V''(0) = -2 sqrt(mu)),
    the well bottom at x = 2 sqrt(mu)/alpha is a centre (V'' = +2 sqrt(mu));
    their energies are 0 and -depth.
    """
    if params.mu == 0:
        return [Equilibrium(0.0, EquilibriumKind.DEGENERATE, 0.0)]
    centre_x = 2.0 * math.sqrt(params.mu) / params.alpha
    return [
        Equilibrium(0.0, EquilibriumKind.SADDLE, 0.0),
        Equilibrium(centre_x, EquilibriumKind.CENTRE, -depth(params)),
    ]


def classify_energy(e: float) -> TrajectoryClass:
    """Reactive iff e > 0; the separatrix e = 0 counts as nonreactive."""
    return TrajectoryClass.REACTIVE if e > 0 else TrajectoryClass.NONREACTIVE


def contour_points(params: ModelParams, e: float, grid, rel_tol: float = 1e-10) -> np.ndarray:
    """Sample the level set H(x, p) = e over the spatial grid.

    Returns an (n_pairs, 2) array of (x, p) rows.  For every grid point with
    e - V(x) >= 0 the two momentum branches +/- sqrt(2 m (e - V)) are emitted
    (in that order); classically forbidden x contribute nothing.  The inversion
    is analytic, so rel_tol only absorbs rounding at turning points: kinetic
    energies down to -rel_tol * max(1, |e|) are kept and clamped to zero.
    """
    kinetic = e - potential(params, grid.points)
    keep = kinetic >= -rel_tol * max(1.0, abs(e))
    xs = grid.points[keep]
    ps = np.sqrt(2.0 * params.mass * np.clip(kinetic[keep], 0.0, None))
    out = np.empty((2 * xs.size, 2))
    out[0::2, 0] = xs
    out[0::2, 1] = ps
    out[1::2, 0] = xs
    out[1::2, 1] = -ps
    return out
