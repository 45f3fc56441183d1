"""Emitter model and construction of the master-equation generator.

The emitter is an N-level system: one ground state ``|0>`` and
``n_excited`` upper states ``|1> .. |n>``, each radiatively coupled to the
ground state (V-type configuration).  The dynamics combine

* free evolution with level frequencies ``omega[i]`` (frequency of
  ``|i>`` relative to the ground state, in units of the reference decay
  rate; any frame shift common to all levels drops out of observables),
* radiative decay ``|i> -> |0>`` with total width ``gamma_rad[i] +
  excitation[i]`` (the incoherent drive broadens the line),
* incoherent excitation ``|0> -> |i>`` at rate ``excitation[i]``,
* cross-pathway drive terms with amplitude
  ``p_interf * sqrt(excitation[i] * excitation[j])`` coupling the pathways
  through ``|0>`` (the source of interference between decay channels),
* nonradiative decay between excited levels along ``nr_channels``.

Everything is expressed on the operator-average vector ``psi`` whose
entry for the index pair ``(i, j)`` is ``<|i><j|>``; this equals the
density-matrix element ``rho[j, i]``.  The ordering is: excited
populations ``(1,1) .. (n,n)``, excited coherence pairs ``(i,j), (j,i)``
for ``i < j`` in lexicographic order, optical coherence pairs
``(i,0), (0,i)`` for ``i = 1 .. n``, and finally the ground population
``(0,0)``.  On this vector the master equation is the linear system
``d psi / dt = M psi`` with the constant generator ``M`` built by
:func:`build_liouvillian`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadChannel,
    IndexOutOfRange,
    InterferenceOutOfRange,
    NegativeRate,
    NotNormalized,
    PumpMatrixNotPSD,
)

PSD_TOL = 1e-12
NORM_TOL = 1e-8


class OperatorBasis:
    """Index map between operator pairs (i, j) and vector positions."""

    def __init__(self, n_excited: int):
        if n_excited < 1:
            raise IndexOutOfRange(f"need at least one excited level, got {n_excited}")
        self.n_excited = n_excited
        n = n_excited
        pairs: list[tuple[int, int]] = [(i, i) for i in range(1, n + 1)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                pairs.append((i, j))
                pairs.append((j, i))
        for i in range(1, n + 1):
            pairs.append((i, 0))
            pairs.append((0, i))
        pairs.append((0, 0))
        self.pairs: tuple[tuple[int, int], ...] = tuple(pairs)
        self._index = {pair: k for k, pair in enumerate(pairs)}
        self.dim = len(pairs)
        self.n_levels = n + 1

    def index_of(self, i: int, j: int) -> int:
        try:
            return self._index[(i, j)]
        except KeyError:
            raise IndexOutOfRange(f"operator pair ({i}, {j}) outside basis") from None

    @property
    def population_indices(self) -> list[int]:
        """Positions of all <|i><i|> entries, ground included."""
        return [self._index[(i, i)] for i in range(1, self.n_excited + 1)] + [
            self._index[(0, 0)]
        ]

    @property
    def excited_coherence_indices(self) -> list[int]:
        return [
            self._index[(i, j)]
            for (i, j) in self.pairs
            if i != j and i >= 1 and j >= 1
        ]


def _as_rate_tuple(values, name: str, length: int) -> tuple[float, ...]:
    vals = tuple(float(v) for v in values)
    if len(vals) != length:
        raise IndexOutOfRange(f"{name} must have {length} entries, got {len(vals)}")
    for k, v in enumerate(vals):
        if not math.isfinite(v):
            raise NegativeRate(f"{name}[{k}] is not finite")
        if v < 0:
            raise NegativeRate(f"{name}[{k}]: negative rate {v}")
    return vals


@dataclass(frozen=True)
class EmitterModel:
    """Validated parameter set of the driven multi-level emitter.

    All rates and frequencies are in units of the reference decay rate;
    times elsewhere are in units of its inverse.
    """

    n_excited: int
    omega: tuple[float, ...]
    gamma_rad: tuple[float, ...]
    excitation: tuple[float, ...]
    p_interf: float
    gamma_nr: float
    nr_channels: tuple[tuple[int, int], ...] = ()
    # per-channel nonradiative rates; default: gamma_nr for every channel
    nr_rates: tuple[float, ...] = field(default=())

    def __post_init__(self):
        n = self.n_excited
        if n < 1:
            raise IndexOutOfRange(f"n_excited must be >= 1, got {n}")
        object.__setattr__(self, "omega", tuple(float(w) for w in self.omega))
        if len(self.omega) != n:
            raise IndexOutOfRange(
                f"omega must have {n} entries, got {len(self.omega)}"
            )
        if not all(math.isfinite(w) for w in self.omega):
            raise NegativeRate("omega entries must be finite")
        object.__setattr__(
            self, "gamma_rad", _as_rate_tuple(self.gamma_rad, "gamma_rad", n)
        )
        object.__setattr__(
            self, "excitation", _as_rate_tuple(self.excitation, "excitation", n)
        )
        object.__setattr__(self, "p_interf", float(self.p_interf))
        if not -1.0 <= self.p_interf <= 1.0:
            raise InterferenceOutOfRange(
                f"p_interf must lie in [-1, 1], got {self.p_interf}"
            )
        object.__setattr__(self, "gamma_nr", float(self.gamma_nr))
        if self.gamma_nr < 0:
            raise NegativeRate(f"gamma_nr: negative rate {self.gamma_nr}")
        channels = tuple((int(u), int(l)) for (u, l) in self.nr_channels)
        for (u, l) in channels:
            if not (1 <= l < u <= n):
                raise BadChannel(
                    f"nr_channel ({u}, {l}) must satisfy 1 <= lower < upper <= {n}"
                )
        object.__setattr__(self, "nr_channels", channels)
        if self.nr_rates:
            rates = _as_rate_tuple(self.nr_rates, "nr_rates", len(channels))
        else:
            rates = tuple(self.gamma_nr for _ in channels)
        object.__setattr__(self, "nr_rates", rates)

        evals = np.linalg.eigvalsh(self.pump_matrix())
        if evals.min(initial=0.0) < -PSD_TOL:
            raise PumpMatrixNotPSD(
                "pump rate matrix not positive semidefinite: "
                f"min eigenvalue {evals.min():.6g} (p_interf={self.p_interf})"
            )

    @property
    def n_levels(self) -> int:
        return self.n_excited + 1

    def pump_matrix(self) -> np.ndarray:
        """Rate matrix R with R[i,i] = excitation[i], R[i,j] = p*sqrt(ri*rj)."""
        r = np.asarray(self.excitation, dtype=float)
        root = np.sqrt(r)
        R = self.p_interf * np.outer(root, root)
        np.fill_diagonal(R, r)
        return R

    def basis(self) -> OperatorBasis:
        return OperatorBasis(self.n_excited)


def build_model(
    *,
    n_excited: int,
    omega,
    gamma_rad,
    excitation,
    p_interf: float,
    gamma_nr: float,
    nr_channels=(),
    nr_rates=(),
) -> EmitterModel:
    """Validate raw parameters and return an :class:`EmitterModel`.

    Raises :class:`NegativeRate`, :class:`InterferenceOutOfRange`,
    :class:`PumpMatrixNotPSD`, or :class:`BadChannel` on invalid input.
    """
    return EmitterModel(
        n_excited=n_excited,
        omega=tuple(omega),
        gamma_rad=tuple(gamma_rad),
        excitation=tuple(excitation),
        p_interf=p_interf,
        gamma_nr=gamma_nr,
        nr_channels=tuple(tuple(c) for c in nr_channels),
        nr_rates=tuple(nr_rates),
    )


def default_channels(n_excited: int) -> tuple[tuple[int, int], ...]:
    """All downward channels between excited levels, highest first."""
    return tuple(
        (u, l)
        for u in range(n_excited, 1, -1)
        for l in range(1, u)
    )


def _unit(n_levels: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n_levels, n_levels), dtype=complex)
    m[i, j] = 1.0
    return m


def master_equation_rhs(model: EmitterModel, rho: np.ndarray) -> np.ndarray:
    """Right-hand side of the master equation applied to a density matrix.

    Implements, term by term: the commutator with the level Hamiltonian,
    radiative decay dissipators with width gamma_rad[i] + excitation[i],
    excitation dissipators, the cross-pathway terms (anticommutator of
    ``S+_i S-_j + S-_j S+_i`` minus both sandwich terms, weighted by
    ``p * sqrt(r_i r_j)``), and the nonradiative channel dissipators.
    """
    n = model.n_excited
    N = model.n_levels
    rho = np.asarray(rho, dtype=complex)
    ham = np.zeros(N, dtype=complex)
    ham[1:] = model.omega
    out = -1j * (ham[:, None] - ham[None, :]) * rho

    def dissipator(c: np.ndarray, rate: float) -> np.ndarray:
        cdc = c.conj().T @ c
        return rate * (
            c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc)
        )

    for i in range(1, n + 1):
        lower = _unit(N, 0, i)
        raise_ = _unit(N, i, 0)
        out += dissipator(lower, model.gamma_rad[i - 1] + model.excitation[i - 1])
        out += dissipator(raise_, model.excitation[i - 1])

    p = model.p_interf
    if p != 0.0:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                r_ij = p * math.sqrt(
                    model.excitation[i - 1] * model.excitation[j - 1]
                )
                if r_ij == 0.0:
                    continue
                sp_i = _unit(N, i, 0)
                sm_j = _unit(N, 0, j)
                k = sp_i @ sm_j + sm_j @ sp_i
                out -= r_ij * (
                    0.5 * (k @ rho + rho @ k)
                    - sm_j @ rho @ sp_i
                    - sp_i @ rho @ sm_j
                )

    for (u, l), rate in zip(model.nr_channels, model.nr_rates):
        out += dissipator(_unit(N, l, u), rate)

    return out


@dataclass(frozen=True)
class Liouvillian:
    """Constant generator M of ``d psi / dt = M psi``."""

    matrix: np.ndarray
    basis: OperatorBasis

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.dim


def build_liouvillian(model: EmitterModel) -> Liouvillian:
    """Assemble M by applying the master-equation right-hand side to each
    basis operator and reading off the coefficients in the operator-average
    ordering.  Exact up to floating-point rounding: the right-hand side is
    linear in the state."""
    basis = model.basis()
    N = model.n_levels
    M = np.zeros((basis.dim, basis.dim), dtype=complex)
    for col, (i_c, j_c) in enumerate(basis.pairs):
        # psi[col] = rho[j_c, i_c]
        drho = master_equation_rhs(model, _unit(N, j_c, i_c))
        for row, (i_r, j_r) in enumerate(basis.pairs):
            M[row, col] = drho[j_r, i_r]
    return Liouvillian(matrix=M, basis=basis)


@dataclass(frozen=True)
class StateVector:
    """Operator averages ``<|i><j|>`` at one instant, in basis order."""

    entries: np.ndarray
    basis: OperatorBasis

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.basis.dim,):
            raise IndexOutOfRange(
                f"state vector needs {self.basis.dim} entries, got {entries.shape}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def rho(self, i: int, j: int) -> complex:
        """Density-matrix element rho[i, j] = <|j><i|>."""
        return complex(self.entries[self.basis.index_of(j, i)])

    def density_matrix(self) -> np.ndarray:
        N = self.basis.n_levels
        out = np.zeros((N, N), dtype=complex)
        for k, (i, j) in enumerate(self.basis.pairs):
            out[j, i] = self.entries[k]
        return out

    def trace(self) -> float:
        return float(
            sum(self.entries[k].real for k in self.basis.population_indices)
        )

    def hermiticity_defect(self) -> float:
        rho = self.density_matrix()
        return float(np.abs(rho - rho.conj().T).max())

    def min_eigenvalue(self) -> float:
        rho = self.density_matrix()
        return float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())


STATE_PRESETS = ("ground", "super01", "equal0", "equalpi")


def _preset_amplitudes(name: str, n_levels: int):
    if name == "ground":
        c = np.zeros(n_levels)
        c[0] = 1.0
        return c, np.zeros(n_levels)
    if n_levels < 2:
        raise IndexOutOfRange(f"preset {name!r} needs at least one excited level")
    if name == "super01":
        c = np.zeros(n_levels)
        c[0] = c[1] = 1.0 / math.sqrt(2.0)
        return c, np.zeros(n_levels)
    if name == "equal0":
        return np.full(n_levels, 1.0 / math.sqrt(n_levels)), np.zeros(n_levels)
    if name == "equalpi":
        # equal weights, top level phase-flipped relative to the rest
        phases = np.zeros(n_levels)
        phases[-1] = math.pi
        return np.full(n_levels, 1.0 / math.sqrt(n_levels)), phases
    raise IndexOutOfRange(
        f"unknown state preset {name!r}; known: {', '.join(STATE_PRESETS)}"
    )


def initial_state(model: EmitterModel, spec="ground", phases=None) -> StateVector:
    """Pure initial state from a preset name or amplitude list.

    ``spec`` may be a preset name (one of ``STATE_PRESETS``), a sequence of
    real amplitudes ``c[0] .. c[n]`` (with optional ``phases`` of equal
    length), or a dict ``{"coefficients": [...], "phases": [...]}``.  The
    state is ``sum_i c[i] exp(1j * phases[i]) |i>``.
    """
    basis = model.basis()
    N = basis.n_levels
    if isinstance(spec, str):
        c, delta = _preset_amplitudes(spec, N)
    elif isinstance(spec, dict):
        unknown = set(spec) - {"coefficients", "phases", "name"}
        if unknown:
            raise IndexOutOfRange(f"unknown state keys {sorted(unknown)}")
        if "name" in spec:
            return initial_state(model, spec["name"])
        c = np.asarray(spec["coefficients"], dtype=float)
        ph = spec.get("phases")
        delta = np.asarray(ph, dtype=float) if ph is not None else np.zeros(len(c))
    else:
        c = np.asarray(spec, dtype=float)
        delta = np.asarray(
            phases if phases is not None else np.zeros(len(c)), dtype=float
        )
    if c.shape != (N,) or delta.shape != (N,):
        raise IndexOutOfRange(
            f"state spec needs {N} coefficients and phases for levels 0..{N - 1}"
        )
    norm = float(np.sum(c * c))
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"sum of |c_i|^2 is {norm:.12g}, expected 1")
    amp = c * np.exp(1j * delta)
    rho = np.outer(amp, amp.conj())
    entries = np.array([rho[j, i] for (i, j) in basis.pairs], dtype=complex)
    return StateVector(entries=entries, basis=basis)
