"""Render figures from clsim's CSV artifacts.

Pure read-plot-save: no physics is recomputed here. The only numeric
transformations are the per-panel display scalings and frequency-axis
offsets declared in the figure catalog.
"""

__version__ = "0.1.0"


class FigureError(Exception):
    """Base class for rendering errors."""


class MissingArtifact(FigureError):
    """A required CSV or sidecar is absent; names the preset to run."""


class SchemaMismatch(FigureError):
    """A CSV header does not match the expected artifact schema."""
