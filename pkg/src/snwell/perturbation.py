"""Taylor expansion of the well about its centre and the harmonic level formula.

Expanding V about the centre x2 = 2 sqrt(mu)/alpha gives, exactly (V is a
cubic, so the expansion terminates),

    V(x) = -D + sqrt(mu) (x - x2)^2 + (alpha/3) (x - x2)^3,

a harmonic oscillator of frequency omega = sqrt(2 sqrt(mu)/m) sitting at
energy -D, perturbed by a cubic term.  Dropping the cubic term yields the
level estimate

    E_n ~ -D + hbar omega (n + 1/2),

which is linear in D with slope -1 at fixed mu and explains the observed
linear drift of the computed levels with well depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import ModelParams, depth

__all__ = ["HarmonicApprox", "expand_about_centre", "harmonic_energy_estimate"]


@dataclass(frozen=True)
class HarmonicApprox:
    """Expansion data: V(x) = offset + (m omega^2 / 2)(x - center)^2 + cubic_coeff (x - center)^3."""

    center: float
    offset: float
    omega: float
    cubic_coeff: float


def expand_about_centre(params: ModelParams) -> HarmonicApprox:
    if params.mu == 0:
        raise ValueError("mu = 0: the centre has merged with the saddle, no expansion point")
    root_mu = math.sqrt(params.mu)
    return HarmonicApprox(
        center=2.0 * root_mu / params.alpha,
        offset=-depth(params),
        omega=math.sqrt(2.0 * root_mu / params.mass),
        cubic_coeff=params.alpha / 3.0,
    )


def harmonic_energy_estimate(params: ModelParams, n: int) -> float:
    """-D + hbar omega (n + 1/2), the cubic-free level estimate."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    approx = expand_about_centre(params)
    return approx.offset + params.hbar * approx.omega * (n + 0.5)
