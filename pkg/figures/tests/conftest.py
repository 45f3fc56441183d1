import json

import numpy as np
import pytest

FMT = "%.12e"


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(FMT % v for v in row) + "\n")


def write_spectrum(path, value_name="S", peak=1.0):
    ts = [0.0, 0.5, 1.0, 2.0]
    omega = np.linspace(-5.0, 5.0, 11)
    rows = []
    for t in ts:
        for w in omega:
            rows.append((t, w, peak * t * np.exp(-w * w / 4.0)))
    _write_csv(path, f"t,omega_detuning,{value_name}", rows)


def write_trajectory(path):
    t = np.linspace(0.0, 5.0, 51)
    rows = []
    for tt in t:
        ground = np.exp(-tt)
        excited = (1.0 - ground) / 3.0
        coh = 0.1 * tt * np.exp(-tt)
        rows.append((tt, ground, excited, excited, excited, coh, coh, coh))
    _write_csv(
        path,
        "t,rho_00,rho_11,rho_22,rho_33,abs_rho_12,abs_rho_13,abs_rho_23",
        rows,
    )


def write_coherence_ratio(path):
    t = np.linspace(0.0, 5.0, 51)
    rows = [(tt, 0.1 * tt, 0.05 * tt, 0.3 * (1 - np.exp(-tt))) for tt in t]
    _write_csv(path, "t,C_12,C_13,C_23", rows)


def write_sidecar(directory, preset):
    (directory / f"{preset}.json").write_text(
        json.dumps({"name": preset, "provenance": {"package": "clsim"}})
    )


@pytest.fixture
def artifact_dir(tmp_path):
    """Synthesizes a full artifact set matching the clsim CSV schemas."""
    d = tmp_path / "data"
    d.mkdir()
    for preset in ("fig1b", "fig1c"):
        for p in ("0", "1"):
            write_spectrum(d / f"{preset}_spectrum_p{p}.csv")
        write_spectrum(d / f"{preset}_interference.csv", value_name="abs_diff")
        write_spectrum(d / f"{preset}_relative_intensity.csv", value_name="ratio")
        write_sidecar(d, preset)
    for state in ("ground", "super01", "equal0", "equalpi"):
        for p in ("0", "1"):
            write_spectrum(d / f"fig2-initial-states_{state}_spectrum_p{p}.csv")
    write_sidecar(d, "fig2-initial-states")
    for rate in ("0.5", "1", "5"):
        for p in ("0", "1"):
            write_spectrum(d / f"fig2-excitation-rates_r{rate}_spectrum_p{p}.csv")
    write_sidecar(d, "fig2-excitation-rates")
    for case in ("I", "II", "III"):
        write_trajectory(d / f"fig3_case{case}_trajectory_p1.csv")
        write_coherence_ratio(d / f"fig3_case{case}_coherence_ratio_p1.csv")
    write_sidecar(d, "fig3")
    return d
