import numpy as np
import pytest

import oracles
from conftest import two_level_model, vee_model
from clsim import (
    build_liouvillian,
    dump_correlations_csv,
    initial_state,
    matrix_exponential,
    propagate,
    regression_seed,
    two_time_correlations,
    gamma_matrix,
)
from clsim.errors import GridMismatch, IndexOutOfRange


# --- seed matrices -------------------------------------------------------

def test_seed_00_row_00_selects_ground_population():
    seed = regression_seed(0, 0, 4)
    row = seed.matrix[seed.basis.index_of(0, 0)]
    expected = np.zeros(16)
    expected[seed.basis.index_of(0, 0)] = 1.0
    assert np.array_equal(row, expected)


def test_seed_01_row_10_selects_population_one():
    # A_10 A_01 = A_11, so Y_10(t2, 0) = <A_11(t2)>
    seed = regression_seed(0, 1, 4)
    row = seed.matrix[seed.basis.index_of(1, 0)]
    expected = np.zeros(16)
    expected[seed.basis.index_of(1, 1)] = 1.0
    assert np.array_equal(row, expected)


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(4))
def test_seeds_match_exhaustive_operator_products(m, n):
    seed = regression_seed(m, n, 4)
    expansion = oracles.product_expansion(m, n, 4)
    for row_k, (i, j) in enumerate(seed.basis.pairs):
        expected = np.zeros(16)
        for (a, b), coeff in expansion[(i, j)].items():
            expected[seed.basis.index_of(a, b)] = coeff
        assert np.array_equal(seed.matrix[row_k], expected), (m, n, i, j)


def test_seed_rejects_out_of_range_indices():
    with pytest.raises(IndexOutOfRange):
        regression_seed(0, 4, 4)
    with pytest.raises(IndexOutOfRange):
        regression_seed(-1, 0, 4)


# --- two-time correlations ----------------------------------------------

def test_tau_zero_slice_reproduces_one_time_averages_exactly(near_degenerate):
    L = build_liouvillian(near_degenerate)
    traj = propagate(L, initial_state(near_degenerate, "ground"), np.linspace(0, 2, 21))
    for j in (1, 2, 3):
        corr = two_time_correlations(L, traj, j, np.linspace(0, 1, 11))
        seed = regression_seed(0, j, 4)
        expected = seed.matrix @ traj.values
        assert np.array_equal(corr.values[:, :, 0], expected)


def test_two_level_free_decay_correlator_analytic():
    omega10 = 1.3
    m = two_level_model(gamma=1.0, r=0.0, omega10=omega10)
    L = build_liouvillian(m)
    t2_grid = np.linspace(0, 2, 21)
    traj = propagate(L, initial_state(m, [0.0, 1.0]), t2_grid)
    tau_grid = np.linspace(0, 2, 21)
    corr = two_time_correlations(L, traj, 1, tau_grid, components=[(1, 0)])
    got = corr.values[0]
    expected = np.exp(-t2_grid)[:, None] * np.exp(
        (1j * omega10 - 0.5) * tau_grid
    )[None, :]
    assert np.abs(got - expected).max() < 1e-9
    # magnitude at t2 = tau = 1/gamma
    assert abs(got[10, 10]) == pytest.approx(np.exp(-1.5), abs=1e-9)


def test_diagonal_correlator_at_tau_zero_is_population(split_lower):
    L = build_liouvillian(split_lower)
    traj = propagate(L, initial_state(split_lower, "ground"), np.linspace(0, 3, 31))
    for i in (1, 2, 3):
        corr = two_time_correlations(L, traj, i, [0.0], components=[(i, 0)])
        vals = corr.values[0, :, 0]
        assert np.abs(vals.imag).max() < 1e-12
        assert vals.real.min() >= -1e-12
        assert np.abs(vals.real - traj.population(i)).max() < 1e-12


def test_tau_semigroup(near_degenerate):
    L = build_liouvillian(near_degenerate)
    traj = propagate(L, initial_state(near_degenerate, "ground"), np.linspace(0, 1, 6))
    tau = np.linspace(0, 1.0, 11)
    corr = two_time_correlations(L, traj, 2, tau)
    # Y(t2, tau1 + tau2) = expm(M tau2) Y(t2, tau1)
    step = matrix_exponential(L.matrix * 0.4)
    shifted = step @ corr.values[:, 3, :]  # columns over tau at one t2
    assert np.abs(shifted[:, 2] - corr.values[:, 3, 6]).max() < 1e-10


def test_weighted_kernel_real_at_tau_zero(near_degenerate):
    L = build_liouvillian(near_degenerate)
    traj = propagate(L, initial_state(near_degenerate, "equalpi"), np.linspace(0, 4, 41))
    g = gamma_matrix(near_degenerate)
    kernel0 = np.zeros(traj.times.size, dtype=complex)
    for j in (1, 2, 3):
        corr = two_time_correlations(
            L, traj, j, [0.0], components=[(i, 0) for i in (1, 2, 3)]
        )
        for c, i in enumerate((1, 2, 3)):
            kernel0 += g[i - 1, j - 1] * corr.values[c, :, 0]
    assert np.abs(kernel0.imag).max() < 1e-10


def test_correlations_match_runge_kutta_oracle(split_lower):
    L = build_liouvillian(split_lower)
    t2_grid = np.linspace(0.0, 1.0, 5)
    tau_grid = np.linspace(0.0, 1.0, 9)
    traj = propagate(L, initial_state(split_lower, "ground"), t2_grid)
    for j in (1, 3):
        corr = two_time_correlations(L, traj, j, tau_grid)
        for k in (1, 4):
            rho_t2 = traj.state(k).density_matrix()
            ref = oracles.correlation_oracle(split_lower, rho_t2, 0, j, tau_grid)
            for c, (a, b) in enumerate(corr.components):
                assert np.abs(corr.values[c, k, :] - ref[(a, b)]).max() < 1e-8


def test_rejects_nonuniform_tau_grid(near_degenerate):
    L = build_liouvillian(near_degenerate)
    traj = propagate(L, initial_state(near_degenerate, "ground"), [0.0, 1.0])
    with pytest.raises(GridMismatch):
        two_time_correlations(L, traj, 1, [0.0, 0.1, 0.3])
    with pytest.raises(GridMismatch):
        two_time_correlations(L, traj, 1, [0.5, 1.0])


def test_csv_dump(tmp_path, near_degenerate):
    L = build_liouvillian(near_degenerate)
    traj = propagate(L, initial_state(near_degenerate, "ground"), np.linspace(0, 1, 3))
    corr = two_time_correlations(
        L, traj, 1, np.linspace(0, 1, 4), components=[(1, 0), (2, 0)]
    )
    path = tmp_path / "corr.csv"
    dump_correlations_csv(corr, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t2,tau,re,im,i,j"
    assert len(lines) == 1 + 2 * 3 * 4
    assert lines[1].endswith(",1,0")
