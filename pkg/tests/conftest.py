import hypothesis
import numpy as np
import pytest

from snwell import DiscreteHamiltonian, ModelParams, assemble, make_grid, make_momentum_grid, solve

hypothesis.settings.register_profile("ci", deadline=None, max_examples=100)
hypothesis.settings.load_profile("ci")


def fd_hamiltonian(grid, v, hbar=1.0, mass=1.0):
    """FD matrix for an arbitrary potential callable, built from the stencil.

    Lets the oracle systems (harmonic well, box, ...) run through the same
    solver path as the cubic well.
    """
    kinetic = hbar**2 / (mass * grid.dx**2)
    return DiscreteHamiltonian(
        diagonal=kinetic + v(grid.points[1:-1]),
        off_diagonal=np.full(grid.n_points - 3, -0.5 * kinetic),
        grid=grid,
        params=ModelParams(mu=0.0, alpha=1.0, hbar=hbar, mass=mass),
    )


@pytest.fixture(scope="session")
def saddle_grid():
    return make_grid(-1.0, 9.0, 599)


@pytest.fixture(scope="session")
def momentum_grid():
    return make_momentum_grid(-6.0, 6.0, 599)


@pytest.fixture(scope="session")
def deep_params():
    return ModelParams(mu=4.0, alpha=1.0)


@pytest.fixture(scope="session")
def deep_spectrum(saddle_grid, deep_params):
    """Deep-well instance (D = 32/3) with the first seven states."""
    return solve(assemble(deep_params, saddle_grid), 7)
