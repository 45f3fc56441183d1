"""Matplotlib renderers, one per figure kind."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import FigureError
from .catalog import CATALOG, FigureSpec
from .io import load_coherence_ratio, load_spectrum, load_trajectory

PAIR_LABELS = ("|rho_12|", "|rho_13|", "|rho_23|")
POP_LABELS = ("rho_00", "rho_11", "rho_22", "rho_33")


def _save(fig, out_dir: str, figure_id: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{figure_id}.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _spectrum_surface(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    fig = plt.figure(figsize=(11, 4.5))
    for k, fname in enumerate(spec.inputs):
        t, omega, values = load_spectrum(data_dir, fname, spec.preset)
        ax = fig.add_subplot(1, len(spec.inputs), k + 1, projection="3d")
        tt, ww = np.meshgrid(t, omega, indexing="ij")
        ax.plot_surface(ww, tt, values, cmap="viridis", linewidth=0)
        ax.set_xlabel("detuning")
        ax.set_ylabel("t")
        ax.set_zlabel("S")
        ax.set_title(spec.params["labels"][k])
    fig.suptitle(spec.figure_id)
    return _save(fig, out_dir, spec.figure_id)


def _contour_pair(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    fig, axes = plt.subplots(1, len(spec.inputs), figsize=(11, 4))
    axes = np.atleast_1d(axes)
    for ax, fname, preset, title in zip(
        axes, spec.inputs, spec.params["presets"], spec.params["titles"]
    ):
        t, omega, values = load_spectrum(
            data_dir, fname, preset, value_name=spec.params["value_name"]
        )
        mesh = ax.pcolormesh(omega, t, values, shading="auto", cmap="inferno")
        fig.colorbar(mesh, ax=ax, label=spec.params["label"])
        ax.set_xlabel("detuning")
        ax.set_ylabel("t")
        ax.set_title(title)
    fig.suptitle(spec.figure_id)
    return _save(fig, out_dir, spec.figure_id)


def _ratio_contour(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    t, omega, values = load_spectrum(
        data_dir, spec.inputs[0], spec.preset, value_name="ratio"
    )
    fig, ax = plt.subplots(figsize=(6, 4))
    masked = np.ma.masked_invalid(values)
    mesh = ax.pcolormesh(
        omega, t, masked, shading="auto", cmap="viridis", vmin=0.0, vmax=1.2
    )
    fig.colorbar(mesh, ax=ax, label="S_p / S_0")
    ax.set_xlabel("detuning")
    ax.set_ylabel("t")
    ax.set_title(f"{spec.figure_id}: {spec.params['title']}")
    return _save(fig, out_dir, spec.figure_id)


def _spectra_lines(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    t_values = spec.params["t_values"]
    scalings = spec.params["t_scalings"]
    offsets = spec.params["offsets"]
    labels = spec.params["labels"]
    fig, axes = plt.subplots(1, len(t_values), figsize=(4 * len(t_values), 3.4),
                             sharey=False)
    loaded = [
        load_spectrum(data_dir, fname, spec.preset) for fname in spec.inputs
    ]
    for ax, t_want in zip(np.atleast_1d(axes), t_values):
        for label, (t, omega, values) in zip(labels, loaded):
            k = int(np.argmin(np.abs(t - t_want)))
            if abs(t[k] - t_want) > 1e-9:
                raise FigureError(
                    f"{spec.figure_id}: time {t_want} missing from artifact grid"
                )
            scale = scalings.get(t_want, 1.0)
            shift = offsets.get(label, 0.0)
            ax.plot(omega + shift, values[k] * scale, label=label, lw=1.0)
        note = f" (x{scalings[t_want]:g})" if t_want in scalings else ""
        ax.set_title(f"t = {t_want:g}{note}")
        ax.set_xlabel("detuning (shifted for clarity)")
        ax.set_ylabel("S")
    np.atleast_1d(axes)[0].legend(fontsize=8)
    fig.suptitle(f"{spec.figure_id}: {spec.params['title']}")
    fig.tight_layout()
    return _save(fig, out_dir, spec.figure_id)


def _dynamics_lines(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    data = load_trajectory(data_dir, spec.inputs[0], spec.preset)
    scale = spec.params["coherence_scale"]
    fig, ax = plt.subplots(figsize=(6, 4))
    for k in range(1, 4):
        ax.plot(data["t"], data["populations"][:, k], lw=1.2,
                label=POP_LABELS[k])
    for k in range(3):
        ax.plot(data["t"], data["coherences"][:, k] * scale, "--", lw=1.0,
                label=f"{PAIR_LABELS[k]} x{scale:g}")
    ax.set_xlabel("t")
    ax.set_ylabel("populations / scaled coherences")
    ax.legend(fontsize=8, ncol=2)
    ax.set_title(f"{spec.figure_id}: {spec.params['title']}")
    fig.tight_layout()
    return _save(fig, out_dir, spec.figure_id)


def _coherence_ratio_lines(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    fig, axes = plt.subplots(1, len(spec.inputs), figsize=(10, 3.2), sharey=True)
    for ax, fname, label in zip(
        np.atleast_1d(axes), spec.inputs, spec.params["labels"]
    ):
        data = load_coherence_ratio(data_dir, fname, spec.preset)
        for k, pair in enumerate(("C_12", "C_13", "C_23")):
            ax.plot(data["t"], data["C"][:, k], lw=1.1, label=pair)
        ax.set_xlabel("t")
        ax.set_title(f"case {label}")
    np.atleast_1d(axes)[0].set_ylabel("|rho_ij| / (rho_ii + rho_jj)")
    np.atleast_1d(axes)[0].legend(fontsize=8)
    fig.suptitle(spec.figure_id)
    fig.tight_layout()
    return _save(fig, out_dir, spec.figure_id)


def _coherence_bars(spec: FigureSpec, data_dir: str, out_dir: str) -> str:
    data = load_trajectory(data_dir, spec.inputs[0], spec.preset)
    t_values = spec.params["t_values"]
    fig = plt.figure(figsize=(7, 5))
    ax = fig.add_subplot(projection="3d")
    width = 0.18
    for slot, t_want in enumerate(t_values):
        k = int(np.argmin(np.abs(data["t"] - t_want)))
        if abs(data["t"][k] - t_want) > 1e-9:
            raise FigureError(
                f"{spec.figure_id}: time {t_want} missing from artifact grid"
            )
        heights = data["coherences"][k]
        ax.bar3d(
            np.arange(3) - width / 2, np.full(3, slot) - width / 2,
            np.zeros(3), width, width, heights, shade=True,
        )
    ax.set_xticks(range(3), PAIR_LABELS)
    ax.set_yticks(range(len(t_values)), [f"t={t:g}" for t in t_values])
    ax.set_zlabel("|rho_ij|")
    ax.set_title(spec.figure_id)
    return _save(fig, out_dir, spec.figure_id)


_RENDERERS = {
    "spectrum_surface": _spectrum_surface,
    "contour_pair": _contour_pair,
    "ratio_contour": _ratio_contour,
    "spectra_lines": _spectra_lines,
    "dynamics_lines": _dynamics_lines,
    "coherence_ratio_lines": _coherence_ratio_lines,
    "coherence_bars": _coherence_bars,
}


def render(figure_id: str, data_dir: str, out_dir: str) -> str:
    """Render one figure from the artifacts in data_dir; returns the path."""
    if figure_id not in CATALOG:
        raise FigureError(
            f"unknown figure id {figure_id!r}; known: {', '.join(CATALOG)}"
        )
    spec = CATALOG[figure_id]
    return _RENDERERS[spec.kind](spec, data_dir, out_dir)
