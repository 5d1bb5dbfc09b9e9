"""JSON job configuration: schema, model and path construction."""

import hashlib
import json

import jsonschema
import numpy as np

from . import paths as P
from .errors import ConfigError
from .families import clock_family, linear_hermitian_family
from .frames import Permutation
from .spin import preset_paths, spin_family

SCHEMA_VERSION = 1

_point = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_perm = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_matrix = {
    "type": "object",
    "properties": {
        "real": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "imag": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    },
    "required": ["real"],
    "additionalProperties": False,
}
_samples = {"type": "integer", "minimum": 2}

PATH_SCHEMA = {
    "type": "object",
    "minProperties": 1,
    "maxProperties": 2,
    "properties": {
        "preset": {"enum": ["C_a", "C_a'", "C_c"]},
        "samples": _samples,
        "points": {"type": "array", "items": _point, "minItems": 2},
        "line": {
            "type": "object",
            "properties": {"start": _point, "end": _point, "samples": _samples},
            "required": ["start", "end"],
            "additionalProperties": False,
        },
        "constant": {
            "type": "object",
            "properties": {"point": _point, "samples": _samples},
            "required": ["point"],
            "additionalProperties": False,
        },
        "circle": {
            "type": "object",
            "properties": {
                "center": _point, "radius": {"type": "number", "exclusiveMinimum": 0},
                "start_angle": {"type": "number"}, "turns": {"type": "integer"},
                "samples": _samples,
            },
            "required": ["radius"],
            "additionalProperties": False,
        },
        "arc": {
            "type": "object",
            "properties": {
                "center": _point, "radius": {"type": "number", "exclusiveMinimum": 0},
                "start_angle": {"type": "number"}, "end_angle": {"type": "number"},
                "samples": _samples,
            },
            "required": ["radius", "start_angle", "end_angle"],
            "additionalProperties": False,
        },
        "concat": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "reverse": {"type": "string"},
    },
    "additionalProperties": False,
}

_check = {
    "type": "object",
    "properties": {
        "path": {"type": "string"},
        "punctures": {"type": "array", "items": _point},
        "generators": {"type": "array", "items": _perm},
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "model": {
            "type": "object",
            "properties": {
                "type": {"enum": ["spin", "linear_hermitian", "clock"]},
                "matrices": {"type": "array", "items": _matrix, "minItems": 2},
                "punctures": {"type": "array", "items": _point},
                "levels": {"type": "integer", "minimum": 2},
            },
            "required": ["type"],
            "additionalProperties": False,
        },
        "gap_min": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer", "minimum": 0},
        "paths": {"type": "object", "additionalProperties": PATH_SCHEMA},
        "decompose": {
            "type": "object",
            "properties": {"points": {"type": "array", "items": _point}},
            "additionalProperties": False,
        },
        "lift": {
            "type": "object",
            "properties": {"path": {"type": "string"}, "order": _perm},
            "additionalProperties": False,
        },
        "monodromy": {**_check, "additionalProperties": False},
        "compare": {
            "type": "object",
            "properties": {
                "c1": {"type": "string"}, "c2": {"type": "string"},
                "punctures": _check["properties"]["punctures"],
                "generators": _check["properties"]["generators"],
            },
            "additionalProperties": False,
        },
        "verify": {
            "type": "object",
            "properties": {
                "path": {"type": "string"},
                "slot": {"type": "integer", "minimum": 0},
                "periods": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                "max_infidelity": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        "sweep": {
            "type": "object",
            "properties": {
                "loops": {"type": "integer", "minimum": 0},
                "max_winding": {"type": "integer", "minimum": 0},
                "samples": _samples,
                "r_min": {"type": "number", "exclusiveMinimum": 0},
                "r_max": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
    },
    "required": ["schema_version"],
    "additionalProperties": False,
}

DEFAULT_CONFIG = {"schema_version": SCHEMA_VERSION, "model": {"type": "spin"}}


def load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return validate(cfg)


def validate(cfg):
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc
    return cfg


def config_hash(cfg):
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _matrix_from(spec):
    real = np.asarray(spec["real"], dtype=float)
    imag = np.asarray(spec.get("imag", np.zeros_like(real)), dtype=float)
    if real.shape != imag.shape or real.ndim != 2:
        raise ConfigError("matrix real/imag parts must be equal-shaped 2-d arrays")
    return real + 1j * imag


def build_model(cfg):
    """Return ``(family, punctures, generators)`` for the configured model.

    ``generators`` are the default monodromy generators of the punctures,
    one per puncture, used when a command does not list its own.
    """
    model = cfg.get("model", {"type": "spin"})
    kind = model["type"]
    if kind == "spin":
        family = spin_family()
        return family, [(0.0, 0.0)], [Permutation((1, 0))]
    if kind == "clock":
        n = model.get("levels", 3)
        return clock_family(n), [(0.0, 0.0)], [Permutation.cycle(n)]
    if "matrices" not in model:
        raise ConfigError("linear_hermitian model needs 'matrices'")
    mats = [_matrix_from(m) for m in model["matrices"]]
    punctures = [tuple(p) for p in model.get("punctures", [])]
    try:
        family = linear_hermitian_family(mats, punctures=punctures)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    # real eigenvalue ordering cannot change along a gapped loop
    generators = [Permutation.identity(mats[0].shape[0]) for _ in punctures]
    return family, punctures, generators


def build_paths(cfg):
    """Resolve every named path in the config, plus the three presets."""
    specs = dict(cfg.get("paths", {}))
    resolved = {}
    presets_cache = {}

    def preset(name, n):
        if n not in presets_cache:
            presets_cache[n] = preset_paths(n)
        return presets_cache[n][name]

    def resolve(name, stack=()):
        if name in resolved:
            return resolved[name]
        if name in stack:
            raise ConfigError(f"path {name!r} is defined in terms of itself")
        if name not in specs:
            if name in ("C_a", "C_a'", "C_c"):
                return preset(name, 256)
            raise ConfigError(f"unknown path {name!r}")
        spec = specs[name]
        try:
            path = _build(name, spec, lambda other: resolve(other, stack + (name,)), preset)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"path {name!r}: {exc}") from exc
        resolved[name] = path
        return path

    for name in specs:
        resolve(name)
    return resolve


def _build(name, spec, resolve, preset):
    n_keys = set(spec) - {"samples"}
    if len(n_keys) != 1:
        raise ConfigError(f"path {name!r} must have exactly one constructor")
    (key,) = n_keys
    if "samples" in spec and key != "preset":
        raise ConfigError(f"path {name!r}: 'samples' goes inside the constructor")
    if key == "preset":
        p = preset(spec["preset"], spec.get("samples", 256))
        return P.Path(p.samples, name=name)
    if key == "points":
        return P.Path(spec["points"], name=name)
    if key == "line":
        s = spec["line"]
        return P.line(s["start"], s["end"], s.get("samples", 2), name=name)
    if key == "constant":
        s = spec["constant"]
        return P.Path([s["point"]] * s.get("samples", 2), name=name)
    if key == "circle":
        s = spec["circle"]
        return P.circle(s["radius"], s.get("samples", 256), s.get("center", (0.0, 0.0)),
                        s.get("start_angle", 0.0), s.get("turns", 1), name=name)
    if key == "arc":
        s = spec["arc"]
        return P.arc(s["radius"], s["start_angle"], s["end_angle"], s.get("samples", 256),
                     s.get("center", (0.0, 0.0)), name=name)
    if key == "reverse":
        return P.reverse(resolve(spec["reverse"]), name=name)
    parts = [resolve(p) for p in spec["concat"]]
    out = parts[0]
    for part in parts[1:]:
        out = P.concat(out, part)
    return P.Path(out.samples, name=name)


def generators_from(section, default):
    if "generators" not in section:
        return default
    try:
        return [Permutation(tuple(g)) for g in section["generators"]]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
