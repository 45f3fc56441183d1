"""Bundled experiment presets.

Each preset is a complete configuration document (see :mod:`clsim.config`)
covering one of the standard studies: level-spacing dependence (`fig1b`,
`fig1c`), initial-state dependence (`fig2-initial-states`), excitation-rate
dependence (`fig2-excitation-rates`), and density-matrix dynamics for three
level-spacing cases (`fig3`).  All rates are in units of the reference
radiative decay rate; the frequency axis is centered on the middle excited
level.
"""

from __future__ import annotations

import copy

_BASE_MODEL = {
    "n_excited": 3,
    "gamma_rad": [1.0, 1.0, 1.0],
    "excitation": [5.0, 5.0, 5.0],
    "gamma_nr": 3.0,
    "nr_channels": [[3, 1], [3, 2], [2, 1]],
}


def _model(omega):
    out = copy.deepcopy(_BASE_MODEL)
    out["omega"] = list(omega)
    return out


PRESETS: dict[str, dict] = {
    # near-degenerate excited levels: transient central-peak suppression
    "fig1b": {
        "name": "fig1b",
        "mode": "all",
        "model": _model([-0.05, 0.0, 0.05]),
        "p_values": [0.0, 1.0],
        "initial_states": ["ground"],
        "dynamics": {"t_max": 5.0, "num_times": 501},
        "spectrum": {
            "filter_bandwidth": 0.1,
            "omega_min": -20.0, "omega_max": 20.0, "num_omega": 161,
            "t_max": 5.0, "num_t": 26,
            "step": 0.004,
            "method": "eigen",
        },
    },
    # one far-detuned level: persistent suppression plus an untouched sideband
    "fig1c": {
        "name": "fig1c",
        "mode": "all",
        "model": _model([-50.0, 0.0, 0.05]),
        "p_values": [0.0, 1.0],
        "initial_states": ["ground"],
        "dynamics": {"t_max": 5.0, "num_times": 501},
        "spectrum": {
            "filter_bandwidth": 0.1,
            "omega_min": -75.0, "omega_max": 25.0, "num_omega": 401,
            "t_max": 5.0, "num_t": 26,
            "step": 0.00125,
            "method": "eigen",
        },
    },
    # spectra for four initial states, with and without interference
    "fig2-initial-states": {
        "name": "fig2-initial-states",
        "mode": "spectrum",
        "model": _model([-100.0, 0.0, 0.05]),
        "p_values": [0.0, 1.0],
        "initial_states": ["ground", "super01", "equal0", "equalpi"],
        "spectrum": {
            "filter_bandwidth": 0.1,
            "omega_min": -130.0, "omega_max": 30.0, "num_omega": 641,
            "t_values": [0.5, 1.0, 2.0],
            "step": 0.000625,
            "method": "eigen",
        },
    },
    # spectra for weak through strong excitation
    "fig2-excitation-rates": {
        "name": "fig2-excitation-rates",
        "mode": "spectrum",
        "model": _model([-50.0, 0.0, 0.05]),
        "p_values": [0.0, 1.0],
        "initial_states": ["ground"],
        "excitation_values": [0.5, 1.0, 5.0],
        "spectrum": {
            "filter_bandwidth": 0.1,
            "omega_min": -80.0, "omega_max": 30.0, "num_omega": 441,
            "t_values": [0.5, 1.0, 2.0],
            "step": 0.00125,
            "method": "eigen",
        },
    },
    # populations, coherences, and coherence ratios for three level spacings
    "fig3": {
        "name": "fig3",
        "mode": "dynamics",
        "model": _model([-0.05, 0.0, 0.05]),
        "p_values": [1.0],
        "initial_states": ["ground"],
        "cases": [
            {"label": "I", "omega": [-0.05, 0.0, 0.05]},
            {"label": "II", "omega": [-50.0, 0.0, 0.05]},
            {"label": "III", "omega": [-50.0, 0.0, 50.0]},
        ],
        "dynamics": {"t_max": 5.0, "num_times": 501},
    },
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def preset_document(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(name)
    return copy.deepcopy(PRESETS[name])
