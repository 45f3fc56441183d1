"""Command-line experiment runner.

Subcommands::

    clsim run <preset|config.json> [--out DIR] [--workers N] [--step H] [--quiet]
    clsim validate <config.json>
    clsim show-preset <name>

`run` executes every job in the configuration (the product of the case,
initial-state, and excitation-rate axes), writing per-job CSV artifacts and
one JSON sidecar per run.  Outputs are a pure function of the configuration:
two runs of the same document produce byte-identical files.

Exit codes: 0 success, 2 configuration or validation failure, 3 numerical
failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys

import numpy as np

from .config import ExperimentConfig, parse_config_dict, parse_config_file, validate_semantics
from .correlations import two_time_correlations
from .dynamics import propagate
from .errors import ClsimError, ConfigParse, IllConditionedEigenbasis, ValidationFailed
from .model import build_liouvillian, initial_state
from .presets import PRESETS, preset_document, preset_names
from .spectrum import (
    SpectrumConfig,
    interference_contribution,
    relative_intensity,
    spectrum_eigen,
    spectrum_quadrature,
)

ENV_OUT_DIR = "CLSIM_OUT"
FMT = "%.12e"


def _fmt_row(values) -> str:
    return ",".join(FMT % v for v in values)


def _pair_labels(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def trajectory_csv(traj, n_excited: int) -> str:
    pairs = _pair_labels(n_excited)
    header = (
        ["t"]
        + [f"rho_{i}{i}" for i in range(n_excited + 1)]
        + [f"abs_rho_{i}{j}" for (i, j) in pairs]
    )
    cols = [traj.times]
    cols += [traj.population(i) for i in range(n_excited + 1)]
    cols += [traj.coherence_abs(i, j) for (i, j) in pairs]
    data = np.column_stack(cols)
    lines = [",".join(header)]
    lines += [_fmt_row(row) for row in data]
    return "\n".join(lines) + "\n"


def coherence_ratio_csv(traj, n_excited: int) -> str:
    from .spectrum import coherence_ratio

    pairs = _pair_labels(n_excited)
    header = ["t"] + [f"C_{i}{j}" for (i, j) in pairs]
    cols = [traj.times] + [coherence_ratio(traj, i, j) for (i, j) in pairs]
    data = np.column_stack(cols)
    lines = [",".join(header)]
    lines += [_fmt_row(row) for row in data]
    return "\n".join(lines) + "\n"


def spectrum_csv(grid, value_name: str = "S") -> str:
    lines = [f"t,omega_detuning,{value_name}"]
    for k, t in enumerate(grid.times):
        for w_i, w in enumerate(grid.omega):
            lines.append(_fmt_row((t, w, grid.values[k, w_i])))
    return "\n".join(lines) + "\n"


def compute_spectrum(cfg: ExperimentConfig, emitter, generator, psi0, *, quiet=True):
    section = cfg.spectrum
    h = section.step
    t_grid = section.t_grid()
    steps = int(round(t_grid.max() / h))
    traj = propagate(generator, psi0, np.arange(steps + 1) * h)
    spec_cfg = SpectrumConfig(
        omega_grid=section.omega_grid(),
        t_grid=t_grid,
        filter_bandwidth=section.filter_bandwidth,
        step=h,
        p_values=cfg.p_values,
    )
    if section.method == "eigen":
        try:
            return spectrum_eigen(traj, generator, spec_cfg, emitter)
        except IllConditionedEigenbasis as exc:
            if not quiet:
                print(f"  eigen route unavailable ({exc}); using quadrature")
    comps = [(i, 0) for i in range(1, emitter.n_excited + 1)]
    slices = [
        two_time_correlations(generator, traj, j, traj.times, components=comps)
        for j in range(1, emitter.n_excited + 1)
    ]
    return spectrum_quadrature(slices, spec_cfg, emitter)


def run_job(doc: dict, job: dict, out_dir: str, quiet: bool = True) -> list[str]:
    """Execute one job (all p values) and write its artifacts."""
    cfg = parse_config_dict(doc)
    state_spec = cfg.initial_states[job["state_idx"]]
    outputs: list[tuple[str, str]] = []
    spectra = {}
    for p in cfg.p_values:
        pstr = "%g" % p
        emitter = cfg.build_emitter(p, case=job["case"], excitation=job["excitation"])
        generator = build_liouvillian(emitter)
        psi0 = initial_state(emitter, state_spec)
        if cfg.needs_dynamics_files():
            traj = propagate(generator, psi0, cfg.dynamics_grid())
            outputs.append((f"{job['tag']}_trajectory_p{pstr}.csv",
                            trajectory_csv(traj, emitter.n_excited)))
            outputs.append((f"{job['tag']}_coherence_ratio_p{pstr}.csv",
                            coherence_ratio_csv(traj, emitter.n_excited)))
        if cfg.needs_spectrum():
            grid = compute_spectrum(cfg, emitter, generator, psi0, quiet=quiet)
            spectra[p] = grid
            if cfg.mode in ("spectrum", "all"):
                outputs.append((f"{job['tag']}_spectrum_p{pstr}.csv",
                                spectrum_csv(grid)))
    if cfg.needs_derived():
        p_main = max(p for p in cfg.p_values if p != 0.0)
        diff = interference_contribution(spectra[p_main], spectra[0.0])
        ratio = relative_intensity(spectra[p_main], spectra[0.0])
        outputs.append((f"{job['tag']}_interference.csv",
                        spectrum_csv(diff, "abs_diff")))
        outputs.append((f"{job['tag']}_relative_intensity.csv",
                        spectrum_csv(ratio, "ratio")))

    written = []
    for fname, content in outputs:
        path = os.path.join(out_dir, fname)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        written.append(path)
    return written


def _resolve_document(target: str) -> dict:
    if target in PRESETS:
        return preset_document(target)
    if os.path.exists(target):
        try:
            with open(target, "r", encoding="utf-8") as fh:
                return json.loads(fh.read())
        except json.JSONDecodeError as exc:
            raise ConfigParse(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from None
        except OSError as exc:
            raise ConfigParse(f"cannot read {target}: {exc.strerror}") from None
    raise ConfigParse(
        f"{target!r} is neither a preset ({', '.join(preset_names())}) "
        "nor a readable config file"
    )


def cmd_run(args) -> int:
    doc = _resolve_document(args.target)
    if args.step is not None:
        doc.setdefault("spectrum", {})["step"] = args.step
    cfg = parse_config_dict(doc)
    out_dir = (
        args.out
        or cfg.out_dir
        or os.environ.get(ENV_OUT_DIR)
        or "clsim-out"
    )
    os.makedirs(out_dir, exist_ok=True)
    doc_resolved = cfg.to_dict()  # sidecar never carries the output location

    jobs = cfg.jobs()
    if not args.quiet:
        print(f"run {cfg.name}: {len(jobs)} job(s), mode {cfg.mode} -> {out_dir}")
    workers = args.workers or os.cpu_count() or 1
    written: list[str] = []
    if workers <= 1 or len(jobs) == 1:
        for job in jobs:
            written += run_job(doc_resolved, job, out_dir, quiet=args.quiet)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_job, doc_resolved, job, out_dir, True)
                for job in jobs
            ]
            for fut in futures:
                written += fut.result()

    sidecar = os.path.join(out_dir, f"{cfg.name}.json")
    with open(sidecar, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(cfg.sidecar_document(), indent=2, sort_keys=True))
        fh.write("\n")
    written.append(sidecar)
    if not args.quiet:
        for path in written:
            print(f"wrote {path}")
    return 0


def cmd_validate(args) -> int:
    cfg = parse_config_file(args.target)
    for line in validate_semantics(cfg):
        print(line)
    return 0


def cmd_show_preset(args) -> int:
    try:
        doc = preset_document(args.name)
    except KeyError:
        raise ConfigParse(
            f"unknown preset {args.name!r}; available: {', '.join(preset_names())}"
        ) from None
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clsim",
        description="Emitter dynamics and time-dependent emission spectra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a preset or config file")
    run_p.add_argument("target", help="preset name or path to a JSON config")
    run_p.add_argument("--out", help=f"output directory (or ${ENV_OUT_DIR})")
    run_p.add_argument("--workers", type=int, default=None,
                       help="parallel jobs (default: logical cores)")
    run_p.add_argument("--step", type=float, default=None,
                       help="override the spectrum quadrature step")
    run_p.add_argument("--quiet", action="store_true")
    run_p.set_defaults(func=cmd_run)

    val_p = sub.add_parser("validate", help="validate a config file")
    val_p.add_argument("target", help="path to a JSON config")
    val_p.set_defaults(func=cmd_validate)

    show_p = sub.add_parser("show-preset", help="print a preset document")
    show_p.add_argument("name")
    show_p.set_defaults(func=cmd_show_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigParse, ValidationFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ClsimError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
