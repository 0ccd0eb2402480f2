import math

import numpy as np
import pytest

from snwell import (
    ConfigurationError,
    ModelParams,
    WignerField,
    assemble,
    make_grid,
    make_momentum_grid,
    marginal_x,
    nonreactive_probability,
    solve,
    wigner_transform,
)

from conftest import fd_hamiltonian


@pytest.fixture(scope="module")
def harmonic_field():
    g = make_grid(-10.0, 10.0, 1201)
    s = solve(fd_hamiltonian(g, lambda x: 0.5 * x**2), 2)
    pg = make_momentum_grid(-6.0, 6.0, 1201)
    params = ModelParams(mu=0.0, alpha=1.0)
    return g, pg, s, wigner_transform(s.states[0], g, pg, params), params


@pytest.fixture(scope="module")
def deep_fields(deep_spectrum, saddle_grid, momentum_grid, deep_params):
    return [
        wigner_transform(st, saddle_grid, momentum_grid, deep_params)
        for st in deep_spectrum.states[:5]
    ]


@pytest.fixture(scope="module")
def shallow_spectrum(saddle_grid):
    return solve(assemble(ModelParams(4.0, 5.0), saddle_grid), 5)


def slow_wigner_value(psi, dx, hbar, j, p):
    """Direct evaluation of the discrete transform, signed offsets and all."""
    n = psi.size
    total = 0.0
    for l in range(-(n - 1), n):
        jm, jp = j - l, j + l
        if 0 <= jm < n and 0 <= jp < n:
            total += psi[jm] * psi[jp] * math.cos(p * (2.0 * l * dx) / hbar)
    return total * dx / (math.pi * hbar)


def test_momentum_grid_invariants():
    pg = make_momentum_grid(-6.0, 6.0, 599)
    assert pg.dp == 12.0 / 598.0
    assert pg.points[0] == -6.0 and pg.points[-1] == 6.0
    assert pg.points[299] == 0.0
    np.testing.assert_array_equal(pg.points[::-1], -pg.points)
    with pytest.raises(ConfigurationError):
        make_momentum_grid(6.0, -6.0, 599)
    with pytest.raises(ConfigurationError):
        make_momentum_grid(-6.0, 6.0, 1)


def test_harmonic_ground_state_matches_gaussian(harmonic_field):
    g, pg, _, w, _ = harmonic_field
    exact = np.exp(-(g.points[:, None] ** 2 + pg.points[None, :] ** 2)) / np.pi
    window = (np.abs(g.points) <= 3.0)[:, None] & (np.abs(pg.points) <= 3.0)[None, :]
    assert np.max(np.abs(w.values - exact)[window]) < 1e-3


def test_matches_direct_sum_evaluation(deep_fields, saddle_grid, momentum_grid, deep_spectrum):
    w = deep_fields[2]
    psi = deep_spectrum.states[2].values
    for j, k in [(0, 10), (150, 299), (299, 0), (299, 598), (420, 470), (598, 200)]:
        direct = slow_wigner_value(psi, saddle_grid.dx, 1.0, j, momentum_grid.points[k])
        assert abs(w.values[j, k] - direct) < 1e-12


def test_asymmetric_momentum_window_matches_direct_sum(deep_spectrum, saddle_grid, deep_params):
    pg = make_momentum_grid(-2.0, 5.0, 149)
    st = deep_spectrum.states[1]
    w = wigner_transform(st, saddle_grid, pg, deep_params)
    for j, k in [(10, 0), (299, 74), (500, 148)]:
        direct = slow_wigner_value(st.values, saddle_grid.dx, 1.0, j, pg.points[k])
        assert abs(w.values[j, k] - direct) < 1e-12


def test_zero_momentum_column_is_pure_correlation_sum(deep_fields, saddle_grid, momentum_grid,
                                                      deep_spectrum):
    w = deep_fields[0]
    psi = deep_spectrum.states[0].values
    mid = (momentum_grid.n_points - 1) // 2
    assert momentum_grid.points[mid] == 0.0
    for j in (0, 1, 137, 299, 400, 597, 598):
        assert abs(w.values[j, mid] - slow_wigner_value(psi, saddle_grid.dx, 1.0, j, 0.0)) < 1e-12


def test_momentum_symmetry_is_bitwise(deep_fields):
    for w in deep_fields:
        np.testing.assert_array_equal(w.values, w.values[:, ::-1])


def test_real_and_bounded(deep_fields, harmonic_field):
    bound = 1.0 / math.pi + 1e-6
    for w in deep_fields + [harmonic_field[3]]:
        assert w.values.dtype == np.float64
        assert np.max(np.abs(w.values)) <= bound


def test_normalization_within_a_percent(deep_fields, saddle_grid, momentum_grid):
    for w in deep_fields:
        total = np.sum(w.values) * saddle_grid.dx * momentum_grid.dp
        assert total == pytest.approx(1.0, abs=1e-2)


def test_wider_momentum_window_tightens_normalization(deep_spectrum, saddle_grid, deep_params):
    st = deep_spectrum.states[4]
    errors = []
    for window in (6.0, 10.0):
        pg = make_momentum_grid(-window, window, 599)
        w = wigner_transform(st, saddle_grid, pg, deep_params)
        errors.append(abs(np.sum(w.values) * saddle_grid.dx * pg.dp - 1.0))
    assert errors[1] <= errors[0]


def test_marginal_recovers_position_density(deep_fields, deep_spectrum, harmonic_field):
    for w, st in zip(deep_fields, deep_spectrum.states):
        assert np.max(np.abs(marginal_x(w) - st.values**2)) < 1e-2
    g, _, s, w0, _ = harmonic_field
    assert np.max(np.abs(marginal_x(w0) - s.states[0].values**2)) < 1e-2


def test_marginal_of_zero_field_is_zero(saddle_grid, momentum_grid, deep_params):
    w = WignerField(
        values=np.zeros((saddle_grid.n_points, momentum_grid.n_points)),
        state_index=0,
        energy=0.0,
        params=deep_params,
        spatial_grid=saddle_grid,
        momentum_grid=momentum_grid,
    )
    np.testing.assert_array_equal(marginal_x(w), np.zeros(saddle_grid.n_points))


def test_first_excited_state_goes_negative(harmonic_field):
    g, pg, s, _, params = harmonic_field
    w1 = wigner_transform(s.states[1], g, pg, params)
    assert w1.values.min() < 0.0
    mid_x = (g.n_points - 1) // 2
    mid_p = (pg.n_points - 1) // 2
    assert w1.values[mid_x, mid_p] == pytest.approx(-1.0 / math.pi, abs=1e-3)


def test_planck_constant_enters_prefactor_and_kernel():
    # hbar = 2, omega = m = 1: rho_0 = exp(-(x^2 + p^2)/hbar) / (pi hbar)
    g = make_grid(-10.0, 10.0, 801)
    pg = make_momentum_grid(-6.0, 6.0, 801)
    params = ModelParams(mu=0.0, alpha=1.0, hbar=2.0)
    s = solve(fd_hamiltonian(g, lambda x: 0.5 * x**2, hbar=2.0), 1)
    w = wigner_transform(s.states[0], g, pg, params)
    exact = np.exp(-(g.points[:, None] ** 2 + pg.points[None, :] ** 2) / 2.0) / (2.0 * np.pi)
    window = (np.abs(g.points) <= 3.0)[:, None] & (np.abs(pg.points) <= 3.0)[None, :]
    assert np.max(np.abs(w.values - exact)[window]) < 1e-3


def test_grid_mismatch_rejected(deep_spectrum, momentum_grid, deep_params):
    wrong = make_grid(-1.0, 9.0, 149)
    with pytest.raises(ValueError):
        wigner_transform(deep_spectrum.states[0], wrong, momentum_grid, deep_params)


def test_nonreactive_probability_deep_well(deep_fields, deep_params):
    probs = [nonreactive_probability(w, deep_params) for w in deep_fields]
    assert probs[0] >= 0.9
    assert (np.diff(probs) < 0).all()
    for p in probs:
        assert -0.05 <= p <= 1.05


def test_nonreactive_probability_shallow_well(shallow_spectrum, saddle_grid, momentum_grid):
    params = shallow_spectrum.params
    probs = [
        nonreactive_probability(wigner_transform(st, saddle_grid, momentum_grid, params), params)
        for st in shallow_spectrum.states
    ]
    for p in probs[1:]:
        assert p <= 0.2
    for p in probs:
        assert -0.05 <= p <= 1.05
