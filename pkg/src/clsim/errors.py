"""Exception types shared across the package."""


class ClsimError(Exception):
    """Base class for all errors raised by clsim."""


# --- model construction ---

class NegativeRate(ClsimError):
    """A decay, excitation, or nonradiative rate is negative."""


class InterferenceOutOfRange(ClsimError):
    """Interference parameter outside [-1, 1]."""


class PumpMatrixNotPSD(ClsimError):
    """Pump rate matrix has a negative eigenvalue."""


class BadChannel(ClsimError):
    """Nonradiative channel indices are invalid."""


class NotNormalized(ClsimError):
    """Pure-state coefficients do not have unit norm."""


class IndexOutOfRange(ClsimError):
    """Level or operator index outside the model's range."""


# --- numerics ---

class NonFinite(ClsimError):
    """Input matrix contains NaN or infinite entries."""


class ConvergenceFailure(ClsimError):
    """A matrix function evaluation did not produce a finite result."""


class DegenerateKernel(ClsimError):
    """Generator kernel has dimension larger than one."""


class NoSteadyState(ClsimError):
    """No stationary state separated from the rest of the spectrum."""


# --- grids and spectra ---

class GridMismatch(ClsimError):
    """Time or frequency grids are inconsistent with each other."""


class GridTooCoarse(ClsimError):
    """Quadrature step too large for the requested frequency range."""


class IllConditionedEigenbasis(ClsimError):
    """Generator eigenbasis too ill-conditioned for the eigen route."""


# --- configuration / CLI ---

class ConfigParse(ClsimError):
    """Configuration document could not be parsed."""


class ValidationFailed(ClsimError):
    """Configuration parsed but failed semantic validation."""
