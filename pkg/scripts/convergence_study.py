#!/usr/bin/env python3
"""Grid-refinement study for the deep-well bound states.

Prints the lowest three levels of the mu = 4, alpha = 1 well on [-1, 9] at a
sequence of grid sizes, together with their gaps to the cubic-free harmonic
estimate -D + hbar omega (n + 1/2).  The gaps converge to O(1e-2) values set
by the cubic anharmonicity, not by the discretization; this is where the
0.05 tolerance used in the tests comes from.

Usage: python scripts/convergence_study.py [--mu MU] [--alpha A]
"""

import argparse

from snwell import ModelParams, assemble, harmonic_energy_estimate, make_grid, solve


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mu", type=float, default=4.0)
    parser.add_argument("--alpha", type=float, default=1.0)
    args = parser.parse_args()

    params = ModelParams(mu=args.mu, alpha=args.alpha)
    estimates = [harmonic_energy_estimate(params, n) for n in range(3)]
    print(f"mu = {params.mu}, alpha = {params.alpha}")
    print("harmonic estimates:", "  ".join(f"E{n} ~ {e:.6f}" for n, e in enumerate(estimates)))
    print(f"{'N':>6} {'E0':>14} {'E1':>14} {'E2':>14} {'gap0':>10} {'gap1':>10} {'gap2':>10}")
    for n_points in (149, 299, 599, 1201, 2401):
        grid = make_grid(-1.0, 9.0, n_points)
        spectrum = solve(assemble(params, grid), 3)
        energies = spectrum.energies
        gaps = energies - estimates
        print(
            f"{n_points:>6} {energies[0]:>14.8f} {energies[1]:>14.8f} {energies[2]:>14.8f} "
            f"{gaps[0]:>+10.2e} {gaps[1]:>+10.2e} {gaps[2]:>+10.2e}"
        )


if __name__ == "__main__":
    main()
