"""Simulator for the dynamics and time-dependent emission spectra of an
electron-beam-driven multi-level quantum emitter."""

__version__ = "0.1.0"

from .model import (
    EmitterModel,
    Liouvillian,
    OperatorBasis,
    StateVector,
    build_liouvillian,
    build_model,
    default_channels,
    initial_state,
    master_equation_rhs,
)
from .dynamics import (
    Propagator,
    Trajectory,
    make_propagator,
    matrix_exponential,
    propagate,
    steady_state,
)
from .correlations import (
    CorrelationSlice,
    RegressionSeed,
    dump_correlations_csv,
    regression_seed,
    two_time_correlations,
)
from .spectrum import (
    SpectrumConfig,
    SpectrumGrid,
    coherence_ratio,
    gamma_matrix,
    interference_contribution,
    peak_location,
    relative_intensity,
    spectrum_eigen,
    spectrum_quadrature,
)

__all__ = [
    "EmitterModel",
    "Liouvillian",
    "OperatorBasis",
    "StateVector",
    "build_liouvillian",
    "build_model",
    "default_channels",
    "initial_state",
    "master_equation_rhs",
    "Propagator",
    "Trajectory",
    "make_propagator",
    "matrix_exponential",
    "propagate",
    "steady_state",
    "CorrelationSlice",
    "RegressionSeed",
    "dump_correlations_csv",
    "regression_seed",
    "two_time_correlations",
    "SpectrumConfig",
    "SpectrumGrid",
    "coherence_ratio",
    "gamma_matrix",
    "interference_contribution",
    "peak_location",
    "relative_intensity",
    "spectrum_eigen",
    "spectrum_quadrature",
    "__version__",
]
