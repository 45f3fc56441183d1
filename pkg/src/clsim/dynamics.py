"""Time propagation and steady states of the operator-average system.

Because the generator M is constant, propagation is exact:
``psi(t) = expm(M t) psi(0)``.  On uniform grids a single cached step
propagator ``expm(M dt)`` is applied repeatedly, so a full trajectory
costs one matrix exponential plus one matrix-vector product per sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateKernel, GridMismatch, NoSteadyState, NonFinite, ConvergenceFailure
from .model import Liouvillian, OperatorBasis, StateVector

GAP_RTOL = 1e-12


def matrix_exponential(a: np.ndarray) -> np.ndarray:
    """Dense matrix exponential (scaling-and-squaring, Pade approximant)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonFinite(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix contains NaN or infinite entries")
    out = scipy.linalg.expm(a)
    if not np.all(np.isfinite(out)):
        raise ConvergenceFailure("matrix exponential overflowed")
    return out


@dataclass(frozen=True)
class Propagator:
    """Cached fixed-step propagator ``expm(M * step)``."""

    step: float
    matrix: np.ndarray
    generator: Liouvillian

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def apply(self, entries: np.ndarray) -> np.ndarray:
        return self.matrix @ entries


def make_propagator(generator: Liouvillian, step: float) -> Propagator:
    return Propagator(
        step=float(step),
        matrix=matrix_exponential(generator.matrix * float(step)),
        generator=generator,
    )


@dataclass(frozen=True)
class Trajectory:
    """Operator averages sampled on a time grid; column k is psi(times[k])."""

    times: np.ndarray
    values: np.ndarray  # (basis.dim, len(times)) complex
    basis: OperatorBasis

    def __post_init__(self):
        self.times.setflags(write=False)
        self.values.setflags(write=False)

    def state(self, k: int) -> StateVector:
        return StateVector(entries=self.values[:, k].copy(), basis=self.basis)

    def population(self, i: int) -> np.ndarray:
        """Real population of level i along the trajectory."""
        return self.values[self.basis.index_of(i, i), :].real.copy()

    def coherence(self, i: int, j: int) -> np.ndarray:
        """Complex rho_ij(t) for i != j."""
        return self.values[self.basis.index_of(j, i), :].copy()

    def coherence_abs(self, i: int, j: int) -> np.ndarray:
        return np.abs(self.values[self.basis.index_of(j, i), :])


def propagate(generator: Liouvillian, psi0: StateVector, times) -> Trajectory:
    """Exact trajectory psi(t_k) = expm(M t_k) psi(0) on a monotone grid.

    Step propagators are cached per distinct gap, so uniform grids use a
    single matrix exponential.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise GridMismatch("time grid must be a nonempty 1-d array")
    if np.any(np.diff(times) <= 0) and times.size > 1:
        raise GridMismatch("time grid must be strictly increasing")
    if times[0] < 0:
        raise GridMismatch("time grid must start at t >= 0")

    dim = generator.dim
    values = np.empty((dim, times.size), dtype=complex)
    cache: dict[float, np.ndarray] = {}

    def step_matrix(gap: float) -> np.ndarray:
        for known, mat in cache.items():
            if abs(known - gap) <= GAP_RTOL * max(1.0, abs(known)):
                return mat
        mat = matrix_exponential(generator.matrix * gap)
        cache[gap] = mat
        return mat

    current = psi0.entries.astype(complex)
    if times[0] > 0:
        current = step_matrix(times[0]) @ current
    values[:, 0] = current
    for k in range(1, times.size):
        current = step_matrix(times[k] - times[k - 1]) @ current
        values[:, k] = current
    return Trajectory(times=times.copy(), values=values, basis=generator.basis)


def steady_state(
    generator: Liouvillian,
    *,
    null_rtol: float = 1e-10,
    separation_rtol: float = 1e-8,
) -> StateVector:
    """Stationary state from the null space of M (smallest singular vector).

    Raises :class:`DegenerateKernel` when more than one singular value
    vanishes relative to the spectral scale, and :class:`NoSteadyState`
    when none does or the kernel vector is traceless.
    """
    M = generator.matrix
    _, s, vh = np.linalg.svd(M)
    scale = s[0] if s[0] > 0 else 1.0
    if s[-1] > null_rtol * scale:
        raise NoSteadyState(
            f"smallest singular value {s[-1]:.3e} not separated from zero "
            f"(scale {scale:.3e})"
        )
    if s[-2] < separation_rtol * scale:
        raise DegenerateKernel(
            f"kernel dimension > 1: singular values {s[-2]:.3e}, {s[-1]:.3e}"
        )
    vec = vh[-1].conj()
    trace = sum(vec[k] for k in generator.basis.population_indices)
    if abs(trace) < 1e-10:
        raise NoSteadyState("kernel vector has vanishing trace")
    return StateVector(entries=vec / trace, basis=generator.basis)
