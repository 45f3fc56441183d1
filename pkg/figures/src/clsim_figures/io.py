"""CSV artifact loading with schema validation."""

from __future__ import annotations

import os

import numpy as np

from . import MissingArtifact, SchemaMismatch

TRAJECTORY_HEADER = "t,rho_00,rho_11,rho_22,rho_33,abs_rho_12,abs_rho_13,abs_rho_23"
COHERENCE_HEADER = "t,C_12,C_13,C_23"


def require_artifact(data_dir: str, fname: str, preset: str) -> str:
    path = os.path.join(data_dir, fname)
    if not os.path.exists(path):
        raise MissingArtifact(
            f"missing {fname}; generate it with: clsim run {preset}"
        )
    sidecar = os.path.join(data_dir, f"{preset}.json")
    if not os.path.exists(sidecar):
        raise MissingArtifact(
            f"missing sidecar {preset}.json for {fname}; "
            f"regenerate with: clsim run {preset}"
        )
    return path


def _load(path: str, expected_header: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != expected_header:
            raise SchemaMismatch(
                f"{os.path.basename(path)}: header {header!r} != "
                f"expected {expected_header!r}"
            )
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return data


def load_spectrum(data_dir: str, fname: str, preset: str, value_name: str = "S"):
    """Long-format (t, omega, value) file -> (t, omega, values[nt, nw])."""
    path = require_artifact(data_dir, fname, preset)
    data = _load(path, f"t,omega_detuning,{value_name}")
    t = np.unique(data[:, 0])
    omega = np.unique(data[:, 1])
    if t.size * omega.size != data.shape[0]:
        raise SchemaMismatch(f"{fname}: rows do not form a (t, omega) grid")
    values = data[:, 2].reshape(t.size, omega.size)
    return t, omega, values


def load_trajectory(data_dir: str, fname: str, preset: str):
    """Returns dict with t, populations (4 columns), coherences (3 columns)."""
    path = require_artifact(data_dir, fname, preset)
    data = _load(path, TRAJECTORY_HEADER)
    return {
        "t": data[:, 0],
        "populations": data[:, 1:5],
        "coherences": data[:, 5:8],
    }


def load_coherence_ratio(data_dir: str, fname: str, preset: str):
    path = require_artifact(data_dir, fname, preset)
    data = _load(path, COHERENCE_HEADER)
    return {"t": data[:, 0], "C": data[:, 1:4]}
