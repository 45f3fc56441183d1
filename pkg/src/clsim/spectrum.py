"""Time-dependent filtered emission spectrum and derived observables.

The spectrum at observation time ``t`` is the double integral

    S(omega, t) = Re  int_0^t dt2  int_0^{t - t2} dtau
                  exp(-G (t - t2)) exp((G/2 - 1j omega) tau)
                  sum_ij  g[i, j] <A_i0(t2 + tau) A_0j(t2)>

with filter bandwidth ``G``, weights ``g[i, i] = 2 * gamma_rad[i]`` and
``g[i, j] = -sqrt(gamma_rad[i] * gamma_rad[j])`` for crossed pathways,
and frequencies measured in the frame of the model's ``omega`` values.
Spectra are reported in filter-scaled dimensionless units.

Two independent evaluation routes are provided:

* :func:`spectrum_quadrature` integrates both time axes with the
  composite trapezoidal rule on a shared step ``h``, consuming
  precomputed correlation slices.
* :func:`spectrum_eigen` diagonalizes the generator once, integrates
  every eigenmode analytically over ``tau``, and applies the trapezoidal
  rule only over ``t2``.

Both share the ``t2`` nodes and weights, so route disagreement isolates
the ``tau`` discretization error.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .correlations import CorrelationSlice, regression_seed
from .dynamics import Trajectory
from .errors import (
    GridMismatch,
    GridTooCoarse,
    IllConditionedEigenbasis,
    IndexOutOfRange,
)
from .model import EmitterModel, Liouvillian

EIGEN_COND_LIMIT = 1e8
RATIO_FLOOR_FRACTION = 1e-6
ZERO_POP_TOL = 1e-14


@dataclass(frozen=True)
class SpectrumConfig:
    """Frequency/time grids and quadrature step for spectrum evaluation."""

    omega_grid: np.ndarray
    t_grid: np.ndarray
    filter_bandwidth: float = 0.1
    step: float = 0.002
    p_values: tuple[float, ...] = (0.0, 1.0)

    def __post_init__(self):
        omega = np.asarray(self.omega_grid, dtype=float)
        tg = np.asarray(self.t_grid, dtype=float)
        object.__setattr__(self, "omega_grid", omega)
        object.__setattr__(self, "t_grid", tg)
        if self.filter_bandwidth <= 0:
            raise GridMismatch("filter bandwidth must be positive")
        if self.step <= 0:
            raise GridMismatch("quadrature step must be positive")
        if omega.ndim != 1 or omega.size == 0 or np.any(np.diff(omega) <= 0):
            raise GridMismatch("omega grid must be 1-d and strictly increasing")
        if tg.ndim != 1 or tg.size == 0 or np.any(np.diff(tg) <= 0):
            raise GridMismatch("t grid must be 1-d and strictly increasing")
        if tg[0] < 0:
            raise GridMismatch("t grid must be nonnegative")


@dataclass(frozen=True)
class SpectrumGrid:
    """Real spectrum samples S(omega, t); values[k] is the row at t_grid[k]."""

    omega: np.ndarray
    times: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.omega.setflags(write=False)
        self.times.setflags(write=False)
        self.values.setflags(write=False)

    def at_time(self, t: float) -> np.ndarray:
        k = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[k] - t) > 1e-9 * max(1.0, abs(t)):
            raise GridMismatch(f"time {t} not on the spectrum grid")
        return self.values[k]


def gamma_matrix(model: EmitterModel) -> np.ndarray:
    """Pathway weight matrix: 2 gamma_i on the diagonal,
    -sqrt(gamma_i gamma_j) off it."""
    g = np.asarray(model.gamma_rad, dtype=float)
    root = np.sqrt(g)
    out = -np.outer(root, root)
    np.fill_diagonal(out, 2.0 * g)
    return out


def _check_resolution(cfg: SpectrumConfig, on_coarse: str) -> None:
    limit = 1.0 / (
        10.0 * max(np.abs(cfg.omega_grid).max(), cfg.filter_bandwidth, 1.0)
    )
    if cfg.step > limit * (1 + 1e-12):
        msg = (
            f"quadrature step {cfg.step:g} too coarse for the frequency grid "
            f"(need <= {limit:g})"
        )
        if on_coarse == "raise":
            raise GridTooCoarse(msg)
        if on_coarse == "warn":
            warnings.warn(msg, stacklevel=3)


def _t_indices(cfg: SpectrumConfig) -> np.ndarray:
    """Map requested observation times onto multiples of the step."""
    h = cfg.step
    idx = np.rint(cfg.t_grid / h).astype(int)
    if np.any(np.abs(idx * h - cfg.t_grid) > 1e-9 * np.maximum(1.0, cfg.t_grid)):
        raise GridMismatch(
            "observation times must be integer multiples of the quadrature step"
        )
    return idx


def _trapezoid_weights(n_nodes: int) -> np.ndarray:
    w = np.ones(n_nodes)
    if n_nodes > 1:
        w[0] = w[-1] = 0.5
    else:
        w[0] = 0.0
    return w


def spectrum_quadrature(
    corr,
    cfg: SpectrumConfig,
    model: EmitterModel,
    *,
    on_coarse: str = "raise",
) -> SpectrumGrid:
    """Spectrum by composite trapezoidal quadrature over both time axes.

    ``corr`` is a sequence of :class:`CorrelationSlice` objects with seeds
    ``(0, j)`` for every excited level j, each providing the components
    ``(i, 0)``.  Their shared grid step must equal ``cfg.step`` and cover
    the largest requested observation time.
    """
    _check_resolution(cfg, on_coarse)
    n = model.n_excited
    g = gamma_matrix(model)
    slices: dict[int, CorrelationSlice] = {}
    for sl in corr:
        if sl.mn[0] != 0:
            raise GridMismatch(f"spectrum needs seeds (0, j); got {sl.mn}")
        slices[sl.mn[1]] = sl
    missing = [j for j in range(1, n + 1) if j not in slices]
    if missing:
        raise GridMismatch(f"missing correlation slices for seeds {missing}")

    h = cfg.step
    t_idx = _t_indices(cfg)
    k_max = int(t_idx.max())
    kernel = None
    for j in range(1, n + 1):
        sl = slices[j]
        for grid, name in ((sl.t2_grid, "t2"), (sl.tau_grid, "tau")):
            if grid.size < k_max + 1:
                raise GridMismatch(
                    f"{name} grid of slice (0, {j}) too short for t = {k_max * h:g}"
                )
            if abs((grid[1] - grid[0]) - h) > 1e-9 * max(h, 1.0):
                raise GridMismatch(
                    f"{name} grid step of slice (0, {j}) differs from cfg.step"
                )
        part = np.zeros((k_max + 1, k_max + 1), dtype=complex)
        for i in range(1, n + 1):
            part += g[i - 1, j - 1] * sl.component(i, 0)[: k_max + 1, : k_max + 1]
        kernel = part if kernel is None else kernel + part

    scale = np.abs(kernel).max()
    residue = (
        float(np.abs(kernel[:, 0].imag).max() / scale) if scale > 0 else 0.0
    )

    gam = cfg.filter_bandwidth
    n_omega = cfg.omega_grid.size
    values = np.zeros((cfg.t_grid.size, n_omega))
    m_idx = np.arange(k_max + 1)
    work = np.empty_like(kernel)
    for w_i, omega in enumerate(cfg.omega_grid):
        z_pow = np.exp((gam / 2 - 1j * omega) * h * m_idx)
        np.multiply(kernel, z_pow[None, :], out=work)
        np.cumsum(work, axis=1, out=work)
        for t_i, kt in enumerate(t_idx):
            if kt == 0:
                continue
            ks = np.arange(kt + 1)
            ms = kt - ks
            inner = h * (
                work[ks, ms]
                - 0.5 * kernel[ks, 0]
                - 0.5 * z_pow[ms] * kernel[ks, ms]
            )
            wt = _trapezoid_weights(kt + 1) * h
            values[t_i, w_i] = np.real(
                np.sum(wt * np.exp(-gam * h * ms) * inner)
            )

    meta = {
        "method": "quadrature",
        "filter_bandwidth": gam,
        "step": h,
        "imag_residue": residue,
        "p_interf": model.p_interf,
    }
    return SpectrumGrid(
        omega=cfg.omega_grid.copy(),
        times=cfg.t_grid.copy(),
        values=values,
        meta=meta,
    )


def spectrum_eigen(
    traj: Trajectory,
    generator: Liouvillian,
    cfg: SpectrumConfig,
    model: EmitterModel,
    *,
    cond_limit: float = EIGEN_COND_LIMIT,
    on_coarse: str = "raise",
) -> SpectrumGrid:
    """Spectrum via eigendecomposition of the generator.

    The ``tau`` integral of every eigenmode has the closed form
    ``(exp((lam + s) T) - 1) / (lam + s)`` with ``s = G/2 - 1j omega``,
    leaving only the ``t2`` quadrature.  Requires a well-conditioned
    eigenbasis; raises :class:`IllConditionedEigenbasis` otherwise.
    """
    _check_resolution(cfg, on_coarse)
    basis = generator.basis
    n = model.n_excited
    h = cfg.step
    t2 = traj.times
    if t2[0] != 0.0 or (
        t2.size > 1 and abs((t2[1] - t2[0]) - h) > 1e-9 * max(h, 1.0)
    ):
        raise GridMismatch("trajectory grid must start at 0 with step cfg.step")
    t_idx = _t_indices(cfg)
    if t_idx.max() >= t2.size:
        raise GridMismatch("trajectory grid too short for requested times")

    lam, vecs = np.linalg.eig(generator.matrix)
    cond = np.linalg.cond(vecs)
    if not np.isfinite(cond) or cond > cond_limit:
        raise IllConditionedEigenbasis(
            f"eigenvector condition number {cond:.3e} exceeds {cond_limit:.1e}"
        )
    vinv = np.linalg.inv(vecs)

    g = gamma_matrix(model)
    dim = basis.dim
    modes = np.zeros((dim, t2.size), dtype=complex)
    kern0 = np.zeros(t2.size, dtype=complex)
    for j in range(1, n + 1):
        seed = regression_seed(0, j, basis.n_levels).matrix
        u = np.zeros(dim)
        for i in range(1, n + 1):
            u[basis.index_of(i, 0)] = g[i - 1, j - 1]
        coeff = (vinv @ seed) @ traj.values
        weight = vecs.T @ u
        modes += weight[:, None] * coeff
        kern0 += u @ (seed @ traj.values)
    scale = np.abs(kern0).max()
    residue = float(np.abs(kern0.imag).max() / scale) if scale > 0 else 0.0

    gam = cfg.filter_bandwidth
    values = np.zeros((cfg.t_grid.size, cfg.omega_grid.size))
    for t_i, kt in enumerate(t_idx):
        if kt == 0:
            continue
        span = (kt - np.arange(kt + 1)) * h  # t - t2 at each node
        decay = np.exp(-gam * span) * (_trapezoid_weights(kt + 1) * h)
        mode_pow = np.exp(np.outer(lam, span))
        d_here = modes[:, : kt + 1]
        for w_i, omega in enumerate(cfg.omega_grid):
            s = gam / 2 - 1j * omega
            z = lam + s
            x = z[:, None] * span[None, :]
            num = mode_pow * np.exp(s * span)[None, :] - 1.0
            small = np.abs(x) < 1e-6
            with np.errstate(divide="ignore", invalid="ignore"):
                phi = num / z[:, None]
            series = span[None, :] * (1.0 + x / 2.0 + x * x / 6.0)
            phi = np.where(small, series, phi)
            inner = np.einsum("mk,mk->k", d_here, phi)
            values[t_i, w_i] = float(np.real(np.sum(decay * inner)))

    meta = {
        "method": "eigen",
        "filter_bandwidth": gam,
        "step": h,
        "imag_residue": residue,
        "eigen_condition": float(cond),
        "p_interf": model.p_interf,
    }
    return SpectrumGrid(
        omega=cfg.omega_grid.copy(),
        times=cfg.t_grid.copy(),
        values=values,
        meta=meta,
    )


def _require_shared_axes(a: SpectrumGrid, b: SpectrumGrid) -> None:
    if not (np.array_equal(a.omega, b.omega) and np.array_equal(a.times, b.times)):
        raise GridMismatch("spectrum grids do not share omega/t axes")


def interference_contribution(s_p: SpectrumGrid, s_0: SpectrumGrid) -> SpectrumGrid:
    """Pointwise |S_p - S_0|: the part of the emission due to interference."""
    _require_shared_axes(s_p, s_0)
    return SpectrumGrid(
        omega=s_p.omega.copy(),
        times=s_p.times.copy(),
        values=np.abs(s_p.values - s_0.values),
        meta={"derived": "interference_contribution"},
    )


def relative_intensity(
    s_num: SpectrumGrid, s_den: SpectrumGrid, floor: float | None = None
) -> SpectrumGrid:
    """Pointwise ratio s_num / s_den with small denominators flagged NaN."""
    _require_shared_axes(s_num, s_den)
    if floor is None:
        floor = RATIO_FLOOR_FRACTION * s_den.values.max(initial=0.0)
    if floor <= 0:
        raise GridMismatch("ratio floor must be positive")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(
            s_den.values >= floor, s_num.values / s_den.values, np.nan
        )
    return SpectrumGrid(
        omega=s_num.omega.copy(),
        times=s_num.times.copy(),
        values=ratio,
        meta={"derived": "relative_intensity", "floor": float(floor)},
    )


def coherence_ratio(traj: Trajectory, i: int, j: int) -> np.ndarray:
    """Ratio |rho_ij| / (rho_ii + rho_jj) along a trajectory.

    Zero by convention wherever the participating populations vanish.
    """
    n = traj.basis.n_excited
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(
            f"coherence ratio needs distinct excited indices, got ({i}, {j})"
        )
    num = traj.coherence_abs(i, j)
    den = traj.population(i) + traj.population(j)
    out = np.zeros_like(num)
    ok = den >= ZERO_POP_TOL
    out[ok] = num[ok] / den[ok]
    return out


def peak_location(grid: SpectrumGrid, t: float, window=None) -> tuple[float, float]:
    """(omega, value) of the largest sample at time t, optionally windowed."""
    row = grid.at_time(t)
    omega = grid.omega
    if window is not None:
        lo, hi = window
        mask = (omega >= lo) & (omega <= hi)
        if not mask.any():
            raise GridMismatch(f"window {window} contains no omega samples")
        row = row[mask]
        omega = omega[mask]
    k = int(np.argmax(row))
    return float(omega[k]), float(row[k])
