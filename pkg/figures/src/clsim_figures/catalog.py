"""Figure catalog: inputs, display scalings, and offsets per figure id.

Scalings and frequency-axis offsets are presentation-only: they are applied
at render time and never touch the data files. Time values are in units of
the inverse reference decay rate; frequencies are detunings in the artifact
frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    kind: str
    preset: str
    inputs: tuple[str, ...]
    # display parameters; interpretation depends on `kind`
    params: dict = field(default_factory=dict)


_INITIAL_STATES = ("ground", "super01", "equal0", "equalpi")
_RATES = ("0.5", "1", "5")

_SPECS = [
    FigureSpec(
        "fig1b", "spectrum_surface", "fig1b",
        ("fig1b_spectrum_p0.csv", "fig1b_spectrum_p1.csv"),
        {"labels": ("I (p=0)", "II (p=1)")},
    ),
    FigureSpec(
        "fig1c", "spectrum_surface", "fig1c",
        ("fig1c_spectrum_p0.csv", "fig1c_spectrum_p1.csv"),
        {"labels": ("I (p=0)", "II (p=1)")},
    ),
    FigureSpec(
        "fig1d", "contour_pair", "fig1b",
        ("fig1b_interference.csv", "fig1c_interference.csv"),
        {
            "presets": ("fig1b", "fig1c"),
            "value_name": "abs_diff",
            "titles": ("near-degenerate", "split lower level"),
            "label": "|S_p - S_0|",
        },
    ),
    FigureSpec(
        "fig1e", "ratio_contour", "fig1b",
        ("fig1b_relative_intensity.csv",),
        {"title": "relative intensity (near-degenerate)"},
    ),
    FigureSpec(
        "fig1f", "ratio_contour", "fig1c",
        ("fig1c_relative_intensity.csv",),
        {"title": "relative intensity (split lower level)"},
    ),
    FigureSpec(
        "fig2a", "spectra_lines", "fig2-initial-states",
        tuple(
            f"fig2-initial-states_{s}_spectrum_p1.csv" for s in _INITIAL_STATES
        ),
        {
            "labels": _INITIAL_STATES,
            "t_values": (0.5, 1.0, 2.0),
            "t_scalings": {0.5: 4.0, 1.0: 1.5},
            "offsets": {"equal0": 30.0, "equalpi": 30.0},
            "title": "initial states, with interference (p=1)",
        },
    ),
    FigureSpec(
        "fig2b", "spectra_lines", "fig2-initial-states",
        tuple(
            f"fig2-initial-states_{s}_spectrum_p0.csv" for s in _INITIAL_STATES
        ),
        {
            "labels": _INITIAL_STATES,
            "t_values": (0.5, 1.0, 2.0),
            "t_scalings": {0.5: 4.0, 1.0: 1.5},
            "offsets": {"equal0": 30.0, "equalpi": 30.0},
            "title": "initial states, no interference (p=0)",
        },
    ),
    FigureSpec(
        "fig2c", "spectra_lines", "fig2-excitation-rates",
        tuple(
            f"fig2-excitation-rates_r{r}_spectrum_p1.csv" for r in _RATES
        ),
        {
            "labels": tuple(f"r={r}" for r in _RATES),
            "t_values": (0.5, 1.0, 2.0),
            "t_scalings": {0.5: 15.0, 1.0: 3.0},
            "offsets": {"r=1": 15.0, "r=5": 45.0},
            "title": "excitation rates, with interference (p=1)",
        },
    ),
    FigureSpec(
        "fig2d", "spectra_lines", "fig2-excitation-rates",
        tuple(
            f"fig2-excitation-rates_r{r}_spectrum_p0.csv" for r in _RATES
        ),
        {
            "labels": tuple(f"r={r}" for r in _RATES),
            "t_values": (0.5, 1.0, 2.0),
            "t_scalings": {0.5: 15.0, 1.0: 3.0},
            "offsets": {"r=1": 15.0, "r=5": 45.0},
            "title": "excitation rates, no interference (p=0)",
        },
    ),
    FigureSpec(
        "fig3a", "dynamics_lines", "fig3",
        ("fig3_caseI_trajectory_p1.csv",),
        {"coherence_scale": 2.0, "title": "case I dynamics"},
    ),
    FigureSpec(
        "fig3b", "dynamics_lines", "fig3",
        ("fig3_caseII_trajectory_p1.csv",),
        {"coherence_scale": 3.0, "title": "case II dynamics"},
    ),
    FigureSpec(
        "fig3c", "coherence_ratio_lines", "fig3",
        (
            "fig3_caseI_coherence_ratio_p1.csv",
            "fig3_caseII_coherence_ratio_p1.csv",
            "fig3_caseIII_coherence_ratio_p1.csv",
        ),
        {"labels": ("I", "II", "III")},
    ),
    FigureSpec(
        "fig3d", "coherence_bars", "fig3",
        ("fig3_caseI_trajectory_p1.csv",),
        {"t_values": (0.0, 0.2, 0.5, 1.0)},
    ),
]

CATALOG = {spec.figure_id: spec for spec in _SPECS}


def figure_ids() -> list[str]:
    return [spec.figure_id for spec in _SPECS]
