"""Experiment configuration: a single self-contained JSON document.

Schema (unknown keys are rejected everywhere)::

    {
      "name": "fig1b",                  # run name, used in artifact names
      "mode": "all",                    # dynamics | spectrum | derived | all
      "model": {
        "n_excited": 3,
        "omega": [-0.05, 0.0, 0.05],
        "gamma_rad": [1.0, 1.0, 1.0],
        "excitation": [5.0, 5.0, 5.0],
        "gamma_nr": 3.0,
        "nr_channels": [[3, 1], [3, 2], [2, 1]]
      },
      "p_values": [0.0, 1.0],           # interference parameters to run
      "initial_states": ["ground"],     # names or {"coefficients", "phases"}
      "excitation_values": null,        # optional uniform-rate sweep
      "cases": null,                    # optional [{"label", ...model keys}]
      "dynamics": {"t_max": 5.0, "num_times": 501},
      "spectrum": {
        "filter_bandwidth": 0.1,
        "omega_min": -20.0, "omega_max": 20.0, "num_omega": 161,
        "t_max": 5.0, "num_t": 26,      # or "t_values": [...]
        "step": 0.004,
        "method": "eigen"               # eigen | quadrature
      },
      "out_dir": null                   # optional; CLI --out wins
    }

Every run writes a JSON sidecar holding the fully resolved document (plus a
provenance block); re-running from the sidecar reproduces the artifacts.
The output directory is intentionally not part of the sidecar.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import ConfigParse, ValidationFailed, ClsimError
from .model import EmitterModel, build_model

MODES = ("dynamics", "spectrum", "derived", "all")
METHODS = ("eigen", "quadrature")

MODEL_KEYS = {"n_excited", "omega", "gamma_rad", "excitation", "gamma_nr",
              "nr_channels", "nr_rates"}
SPECTRUM_KEYS = {"filter_bandwidth", "omega_min", "omega_max", "num_omega",
                 "t_max", "num_t", "t_values", "step", "method"}
DYNAMICS_KEYS = {"t_max", "num_times"}
TOP_KEYS = {"name", "mode", "model", "p_values", "initial_states",
            "excitation_values", "cases", "dynamics", "spectrum", "out_dir",
            "provenance"}
STATE_KEYS = {"name", "coefficients", "phases"}


def _reject_unknown(section: dict, allowed: set, path: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ValidationFailed(f"{path}: unknown keys {unknown}")


def _require(section: dict, key: str, path: str):
    if key not in section or section[key] is None:
        raise ValidationFailed(f"{path}.{key}: required field missing")
    return section[key]


@dataclass(frozen=True)
class SpectrumSection:
    filter_bandwidth: float
    omega_min: float
    omega_max: float
    num_omega: int
    step: float
    method: str
    t_max: float | None = None
    num_t: int | None = None
    t_values: tuple[float, ...] | None = None

    def omega_grid(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.num_omega)

    def t_grid(self) -> np.ndarray:
        if self.t_values is not None:
            ts = np.asarray(self.t_values, dtype=float)
        else:
            ts = np.linspace(0.0, self.t_max, self.num_t)
            # snap interior points onto step multiples
            ts = np.unique(np.rint(ts / self.step) * self.step)
        return ts

    def to_dict(self) -> dict:
        out = {
            "filter_bandwidth": self.filter_bandwidth,
            "omega_min": self.omega_min,
            "omega_max": self.omega_max,
            "num_omega": self.num_omega,
            "step": self.step,
            "method": self.method,
        }
        if self.t_values is not None:
            out["t_values"] = list(self.t_values)
        else:
            out["t_max"] = self.t_max
            out["num_t"] = self.num_t
        return out


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    mode: str
    model: dict
    p_values: tuple[float, ...]
    initial_states: tuple[object, ...]
    excitation_values: tuple[float, ...] | None
    cases: tuple[dict, ...] | None
    dynamics_t_max: float
    dynamics_num_times: int
    spectrum: SpectrumSection
    out_dir: str | None = None

    def needs_spectrum(self) -> bool:
        return self.mode in ("spectrum", "derived", "all")

    def needs_dynamics_files(self) -> bool:
        return self.mode in ("dynamics", "all")

    def needs_derived(self) -> bool:
        return self.mode in ("derived", "all")

    def dynamics_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.dynamics_t_max, self.dynamics_num_times)

    def state_label(self, idx: int) -> str:
        spec = self.initial_states[idx]
        if isinstance(spec, str):
            return spec
        if isinstance(spec, dict) and "name" in spec:
            return str(spec["name"])
        return f"state{idx}"

    def case_model_dict(self, case: dict | None) -> dict:
        merged = dict(self.model)
        if case:
            for key, value in case.items():
                if key != "label":
                    merged[key] = value
        return merged

    def build_emitter(self, p: float, case: dict | None = None,
                      excitation: float | None = None) -> EmitterModel:
        params = self.case_model_dict(case)
        if excitation is not None:
            params["excitation"] = [excitation] * int(params["n_excited"])
        channels = [tuple(c) for c in params.get("nr_channels", [])]
        return build_model(
            n_excited=int(params["n_excited"]),
            omega=params["omega"],
            gamma_rad=params["gamma_rad"],
            excitation=params["excitation"],
            p_interf=p,
            gamma_nr=float(params.get("gamma_nr", 0.0)),
            nr_channels=channels,
            nr_rates=params.get("nr_rates", ()),
        )

    def jobs(self) -> list[dict]:
        """Expand the sweep axes into independent job descriptors."""
        cases = list(self.cases) if self.cases else [None]
        rates = (
            list(self.excitation_values)
            if self.excitation_values is not None
            else [None]
        )
        out = []
        for case in cases:
            for s_idx in range(len(self.initial_states)):
                for rate in rates:
                    parts = [self.name]
                    if self.cases:
                        parts.append("case%s" % case.get("label", "?"))
                    if len(self.initial_states) > 1:
                        parts.append(self.state_label(s_idx))
                    if self.excitation_values is not None:
                        parts.append("r%g" % rate)
                    out.append({
                        "tag": "_".join(parts),
                        "case": case,
                        "state_idx": s_idx,
                        "excitation": rate,
                    })
        return out

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "mode": self.mode,
            "model": dict(self.model),
            "p_values": list(self.p_values),
            "initial_states": [
                s if isinstance(s, str) else dict(s) for s in self.initial_states
            ],
            "excitation_values": (
                list(self.excitation_values)
                if self.excitation_values is not None else None
            ),
            "cases": [dict(c) for c in self.cases] if self.cases else None,
            "dynamics": {
                "t_max": self.dynamics_t_max,
                "num_times": self.dynamics_num_times,
            },
            "spectrum": self.spectrum.to_dict(),
        }
        return out

    def sidecar_document(self) -> dict:
        doc = self.to_dict()
        doc["provenance"] = {"package": "clsim", "version": __version__}
        return doc


def parse_config_text(text: str) -> ExperimentConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParse(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return parse_config_dict(doc)


def parse_config_file(path) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigParse(f"cannot read {path}: {exc.strerror}") from None
    return parse_config_text(text)


def parse_config_dict(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ValidationFailed("top-level document must be a JSON object")
    _reject_unknown(doc, TOP_KEYS, "document")

    name = str(_require(doc, "name", "document"))
    mode = str(doc.get("mode", "all"))
    if mode not in MODES:
        raise ValidationFailed(f"mode: {mode!r} not one of {MODES}")

    model = _require(doc, "model", "document")
    if not isinstance(model, dict):
        raise ValidationFailed("model: must be an object")
    _reject_unknown(model, MODEL_KEYS, "model")
    for key in ("n_excited", "omega", "gamma_rad", "excitation"):
        _require(model, key, "model")

    p_values = doc.get("p_values", [0.0, 1.0])
    if not isinstance(p_values, list) or not p_values:
        raise ValidationFailed("p_values: must be a nonempty list")
    p_values = tuple(float(p) for p in p_values)

    states = doc.get("initial_states", ["ground"])
    if not isinstance(states, list) or not states:
        raise ValidationFailed("initial_states: must be a nonempty list")
    parsed_states = []
    for k, spec in enumerate(states):
        if isinstance(spec, str):
            parsed_states.append(spec)
        elif isinstance(spec, dict):
            _reject_unknown(spec, STATE_KEYS, f"initial_states[{k}]")
            parsed_states.append(dict(spec))
        else:
            raise ValidationFailed(
                f"initial_states[{k}]: must be a name or an object"
            )

    rates = doc.get("excitation_values")
    if rates is not None:
        if not isinstance(rates, list) or not rates:
            raise ValidationFailed("excitation_values: must be a nonempty list")
        rates = tuple(float(r) for r in rates)

    cases = doc.get("cases")
    if cases is not None:
        if not isinstance(cases, list) or not cases:
            raise ValidationFailed("cases: must be a nonempty list")
        allowed = MODEL_KEYS | {"label"}
        parsed_cases = []
        for k, case in enumerate(cases):
            if not isinstance(case, dict) or "label" not in case:
                raise ValidationFailed(f"cases[{k}]: must be an object with a label")
            _reject_unknown(case, allowed, f"cases[{k}]")
            parsed_cases.append(dict(case))
        cases = tuple(parsed_cases)

    dyn = doc.get("dynamics", {"t_max": 5.0, "num_times": 501})
    _reject_unknown(dyn, DYNAMICS_KEYS, "dynamics")
    t_max = float(dyn.get("t_max", 5.0))
    num_times = int(dyn.get("num_times", 501))
    if t_max <= 0 or num_times < 2:
        raise ValidationFailed("dynamics: t_max must be > 0 and num_times >= 2")

    spec_doc = doc.get("spectrum", {})
    _reject_unknown(spec_doc, SPECTRUM_KEYS, "spectrum")
    method = str(spec_doc.get("method", "eigen"))
    if method not in METHODS:
        raise ValidationFailed(f"spectrum.method: {method!r} not one of {METHODS}")
    t_values = spec_doc.get("t_values")
    section = SpectrumSection(
        filter_bandwidth=float(spec_doc.get("filter_bandwidth", 0.1)),
        omega_min=float(spec_doc.get("omega_min", -20.0)),
        omega_max=float(spec_doc.get("omega_max", 20.0)),
        num_omega=int(spec_doc.get("num_omega", 161)),
        step=float(spec_doc.get("step", 0.002)),
        method=method,
        t_max=(float(spec_doc["t_max"]) if "t_max" in spec_doc else None),
        num_t=(int(spec_doc["num_t"]) if "num_t" in spec_doc else None),
        t_values=(tuple(float(t) for t in t_values) if t_values else None),
    )
    if section.t_values is None and (section.t_max is None or section.num_t is None):
        section = dataclasses.replace(
            section,
            t_max=section.t_max if section.t_max is not None else 5.0,
            num_t=section.num_t if section.num_t is not None else 26,
        )
    if section.filter_bandwidth <= 0 or section.step <= 0:
        raise ValidationFailed("spectrum: filter_bandwidth and step must be > 0")
    if section.omega_max <= section.omega_min or section.num_omega < 2:
        raise ValidationFailed("spectrum: omega grid is empty or inverted")

    out_dir = doc.get("out_dir")
    cfg = ExperimentConfig(
        name=name,
        mode=mode,
        model=dict(model),
        p_values=p_values,
        initial_states=tuple(parsed_states),
        excitation_values=rates,
        cases=cases,
        dynamics_t_max=t_max,
        dynamics_num_times=num_times,
        spectrum=section,
        out_dir=str(out_dir) if out_dir is not None else None,
    )
    validate_semantics(cfg)
    return cfg


def validate_semantics(cfg: ExperimentConfig) -> list[str]:
    """Cross-field checks; returns human-readable report lines."""
    lines = []
    if cfg.needs_derived():
        if 0.0 not in cfg.p_values or all(p == 0.0 for p in cfg.p_values):
            raise ValidationFailed(
                "derived observables need p_values containing 0 and a nonzero p"
            )
    from .model import initial_state  # local import to avoid cycle

    dim = None
    for job in cfg.jobs():
        for p in cfg.p_values:
            try:
                emitter = cfg.build_emitter(
                    p, case=job["case"], excitation=job["excitation"]
                )
                initial_state(emitter, cfg.initial_states[job["state_idx"]])
            except ClsimError as exc:
                raise ValidationFailed(
                    f"model (job {job['tag']}, p={p:g}): {exc}"
                ) from None
            dim = (emitter.n_excited + 1) ** 2
    if cfg.needs_spectrum():
        ts = cfg.spectrum.t_grid()
        h = cfg.spectrum.step
        bad = [t for t in ts if abs(round(t / h) * h - t) > 1e-9 * max(1.0, t)]
        if bad:
            raise ValidationFailed(
                f"spectrum: observation times {bad} are not multiples of step {h:g}"
            )
    p_list = ", ".join("%g" % p for p in cfg.p_values)
    lines.append(f"valid; {dim}-dim Liouvillian; p in {{{p_list}}}")
    lines.append(
        f"mode {cfg.mode}; {len(cfg.jobs())} job(s); "
        f"states: {', '.join(cfg.state_label(i) for i in range(len(cfg.initial_states)))}"
    )
    if cfg.needs_spectrum():
        s = cfg.spectrum
        lines.append(
            f"spectrum: omega [{s.omega_min:g}, {s.omega_max:g}] x {s.num_omega}, "
            f"{cfg.spectrum.t_grid().size} time(s), step {s.step:g}, {s.method} route"
        )
    return lines
