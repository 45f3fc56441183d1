"""Two-time correlation functions via the regression property.

The two-time averages ``Y_ij(t2, tau) = <A_ij(t2 + tau) A_mn(t2)>``
(with ``A_ij = |i><j|``) obey the same linear equations in ``tau`` as
the one-time averages, so ``Y(t2, tau) = expm(M tau) Y(t2, 0)``.  The
initial slice follows from the operator product rule
``A_ij A_mn = delta_jm A_in``: a sparse matrix ``T`` maps the one-time
vector psi(t2) onto ``Y(t2, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, IndexOutOfRange
from .dynamics import Trajectory, make_propagator
from .model import Liouvillian, OperatorBasis

UNIFORM_RTOL = 1e-9


@dataclass(frozen=True)
class RegressionSeed:
    """Map from one-time averages to the tau = 0 slice of Y^{mn}."""

    mn: tuple[int, int]
    matrix: np.ndarray
    basis: OperatorBasis

    def __post_init__(self):
        self.matrix.setflags(write=False)


def regression_seed(m: int, n: int, n_levels: int) -> RegressionSeed:
    """Seed matrix T with row (i, j) selecting <A_in> when j == m."""
    basis = OperatorBasis(n_levels - 1)
    if not (0 <= m < n_levels and 0 <= n < n_levels):
        raise IndexOutOfRange(
            f"operator indices ({m}, {n}) outside 0..{n_levels - 1}"
        )
    T = np.zeros((basis.dim, basis.dim))
    for row, (i, j) in enumerate(basis.pairs):
        if j == m:
            T[row, basis.index_of(i, n)] = 1.0
    return RegressionSeed(mn=(m, n), matrix=T, basis=basis)


@dataclass(frozen=True)
class CorrelationSlice:
    """Y^{mn} components on a (t2, tau) grid, tau contiguous in memory.

    ``values[c, k, m]`` holds the component ``components[c]`` of
    ``Y^{mn}(t2_grid[k], tau_grid[m])``.
    """

    mn: tuple[int, int]
    components: tuple[tuple[int, int], ...]
    t2_grid: np.ndarray
    tau_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.t2_grid.setflags(write=False)
        self.tau_grid.setflags(write=False)
        self.values.setflags(write=False)

    def component(self, i: int, j: int) -> np.ndarray:
        try:
            c = self.components.index((i, j))
        except ValueError:
            raise IndexOutOfRange(
                f"component ({i}, {j}) not stored in this slice"
            ) from None
        return self.values[c]


def _uniform_step(grid: np.ndarray, name: str) -> float:
    if grid.ndim != 1 or grid.size < 1:
        raise GridMismatch(f"{name} must be a nonempty 1-d array")
    if grid[0] != 0.0:
        raise GridMismatch(f"{name} must start at 0")
    if grid.size == 1:
        return 0.0
    gaps = np.diff(grid)
    step = gaps[0]
    if step <= 0 or np.any(np.abs(gaps - step) > UNIFORM_RTOL * max(step, 1.0)):
        raise GridMismatch(f"{name} must be uniform and increasing")
    return float(step)


def two_time_correlations(
    generator: Liouvillian,
    traj: Trajectory,
    j: int,
    tau_grid,
    *,
    m: int = 0,
    components=None,
) -> CorrelationSlice:
    """Correlations ``Y^{mj}(t2, tau)`` for every trajectory sample t2.

    By default the seed is ``(m, n) = (0, j)``, which yields the emission
    correlators ``<A_i0(t2 + tau) A_0j(t2)>`` in the components ``(i, 0)``.
    ``components`` restricts which vector entries are stored (all by
    default); the tau grid must be uniform starting at 0.
    """
    basis = generator.basis
    tau_grid = np.asarray(tau_grid, dtype=float)
    step = _uniform_step(tau_grid, "tau grid")
    seed = regression_seed(m, j, basis.n_levels)
    if components is None:
        components = basis.pairs
    components = tuple(tuple(c) for c in components)
    rows = np.array([basis.index_of(i, jj) for (i, jj) in components])

    # columns: seeded vectors at every t2, evolved jointly over tau
    y = seed.matrix @ traj.values
    n_t2 = traj.times.size
    values = np.empty((len(components), n_t2, tau_grid.size), dtype=complex)
    values[:, :, 0] = y[rows, :]
    if tau_grid.size > 1:
        prop = make_propagator(generator, step).matrix
        for k in range(1, tau_grid.size):
            y = prop @ y
            values[:, :, k] = y[rows, :]
    return CorrelationSlice(
        mn=(m, j),
        components=components,
        t2_grid=traj.times.copy(),
        tau_grid=tau_grid.copy(),
        values=values,
    )


def dump_correlations_csv(corr: CorrelationSlice, path) -> None:
    """Debug dump with columns t2, tau, re, im, i, j."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t2,tau,re,im,i,j\n")
        for c, (i, j) in enumerate(corr.components):
            for k, t2 in enumerate(corr.t2_grid):
                row = corr.values[c, k, :]
                for mm, tau in enumerate(corr.tau_grid):
                    fh.write(
                        "%.12e,%.12e,%.12e,%.12e,%d,%d\n"
                        % (t2, tau, row[mm].real, row[mm].imag, i, j)
                    )
