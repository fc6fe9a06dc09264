"""Experiment configuration: schema validation and family construction.

A path enters the CLI either as a closed-form family block (baer, circle,
random, glue) or as a sampled list of (t, matrix) pairs interpolated
linearly; both forms round-trip through JSON.
"""

from __future__ import annotations

import json
from dataclasses import fields
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .components import build_distinct_paths, default_component_setup
from .errors import SpectralFlowError
from .families import (
    DEFAULT_BACKGROUND,
    BaerFamilySpec,
    baer_family,
    circle_family,
    random_family,
)
from .flow import FlowOptions
from .gluing import GluingSpec, Spectrum, glue
from .operators import SelfAdjointOperator
from .paths import OperatorPath

__all__ = [
    "ConfigError",
    "load_schema",
    "validate_config",
    "load_config_file",
    "merge_config",
    "flow_options_from_config",
    "build_family_path",
    "sampled_path",
    "path_samples_to_json",
    "components_from_config",
    "DEFAULT_GLUE_BASE",
    "DEFAULT_GLUE_EPSILON",
]

DEFAULT_GLUE_BASE = (-7.0, -3.0, 3.0, 7.0)
DEFAULT_GLUE_EPSILON = 0.4


class ConfigError(SpectralFlowError):
    """Configuration file or flags failed validation."""


def load_schema(name: str) -> dict:
    """Load one of the shipped JSON schemas by stem name."""
    text = resources.files("specflow.schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_config(config: dict) -> None:
    try:
        jsonschema.validate(config, load_schema("experiment-config"))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc


def load_config_file(path: str | Path) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        config = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    validate_config(config)
    return config


def merge_config(base: dict, overlay: dict) -> dict:
    """Overlay CLI flags onto a config dict (one level of nesting)."""
    merged = {k: (dict(v) if isinstance(v, dict) else v) for k, v in base.items()}
    for key, value in overlay.items():
        if value is None:
            continue
        if isinstance(value, dict):
            slot = merged.setdefault(key, {})
            for k2, v2 in value.items():
                if v2 is not None:
                    slot[k2] = v2
        else:
            merged[key] = value
    return merged


def flow_options_from_config(config: dict) -> FlowOptions:
    block = config.get("flow_options", {})
    known = {f.name for f in fields(FlowOptions)}
    unknown = set(block) - known
    if unknown:
        raise ConfigError(f"unknown flow options: {sorted(unknown)}")
    return FlowOptions(**block)


def _matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict):
        real = np.asarray(obj["real"], dtype=np.float64)
        imag = np.asarray(obj["imag"], dtype=np.float64)
        return real + 1j * imag
    return np.asarray(obj, dtype=np.float64)


def _matrix_to_json(entries: np.ndarray):
    if np.iscomplexobj(entries):
        return {"real": entries.real.tolist(), "imag": entries.imag.tolist()}
    return entries.tolist()


def sampled_path(samples: list[tuple[float, np.ndarray]]) -> OperatorPath:
    """Path through sampled operators with linear interpolation.

    Sample times must be strictly increasing and cover [0, 1].
    """
    if len(samples) < 2:
        raise ConfigError("sampled path needs at least two samples")
    ts = np.array([float(t) for t, _ in samples])
    if not np.all(np.diff(ts) > 0):
        raise ConfigError("sample times must be strictly increasing")
    if abs(ts[0]) > 1e-12 or abs(ts[-1] - 1.0) > 1e-12:
        raise ConfigError("sampled path must cover t=0 and t=1")
    mats = [SelfAdjointOperator(m).entries for _, m in samples]
    dim = mats[0].shape[0]
    if any(m.shape[0] != dim for m in mats):
        raise ConfigError("all sampled matrices must share one dimension")

    def ev(t: float) -> SelfAdjointOperator:
        j = int(np.searchsorted(ts, t, side="right") - 1)
        j = min(max(j, 0), len(mats) - 2)
        u = (t - ts[j]) / (ts[j + 1] - ts[j])
        return SelfAdjointOperator((1.0 - u) * mats[j] + u * mats[j + 1])

    lip = max(
        float(np.linalg.norm(q - p, 2)) / (t1 - t0)
        for (t0, p), (t1, q) in zip(zip(ts[:-1], mats[:-1]), zip(ts[1:], mats[1:]))
    )
    return OperatorPath(dim, ev, lipschitz=lip)


def path_samples_to_json(path: OperatorPath, grid: int) -> dict:
    """Serialize a path as a sampled family block (the JSON round-trip form)."""
    ts = np.linspace(0.0, 1.0, grid)
    return {
        "kind": "sampled",
        "samples": [
            {"t": float(t), "matrix": _matrix_to_json(path.at(float(t)).entries)} for t in ts
        ],
    }


def build_family_path(family: dict, default_seed: int = 0) -> OperatorPath:
    """Construct the operator path described by a validated family block."""
    kind = family.get("kind")
    if kind == "baer":
        spec = BaerFamilySpec(
            m=family["m"],
            background=tuple(family.get("background", DEFAULT_BACKGROUND)),
        )
        return baer_family(spec)
    if kind == "circle":
        return circle_family(
            modes=family["modes"],
            winding=family["winding"],
            spin_shift=float(family.get("shift", 0.5)),
        )
    if kind == "random":
        return random_family(
            dim=family["dim"],
            seed=family.get("seed", default_seed),
            invertible_ends=family.get("invertible_ends", False),
        )
    if kind == "glue":
        spec = GluingSpec(
            base=Spectrum(family.get("base_spectrum", DEFAULT_GLUE_BASE)),
            sphere_family=BaerFamilySpec(
                m=family["m"],
                background=tuple(family.get("background", DEFAULT_BACKGROUND)),
            ),
            epsilon=float(family.get("epsilon", DEFAULT_GLUE_EPSILON)),
            seed=family.get("seed", default_seed),
        )
        return glue(spec).path
    if kind == "sampled":
        samples = [(s["t"], _matrix_from_json(s["matrix"])) for s in family["samples"]]
        return sampled_path(samples)
    raise ConfigError(f"unknown family kind {kind!r}")


def components_from_config(config: dict, options: FlowOptions):
    """Run the distinct-components induction described by the config."""
    block = dict(config.get("components", {}))
    k = block.get("k")
    if k is None:
        raise ConfigError("components command needs k >= 1")
    basepoint, generator = default_component_setup(
        ambient_dim=block.get("ambient_dim", 24),
        epsilon=block.get("epsilon", 0.25),
        seed=block.get("seed", config.get("seed", 0)),
    )
    return build_distinct_paths(k, generator, basepoint, options)
