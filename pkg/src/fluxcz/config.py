"""Experiment configuration: defaults, YAML files, and key=value overrides.

A configuration is a small key-value tree.  Defaults reproduce the
reference two-qubit parameter set (E_C/h = 1.5 and 1.2 GHz, E_J/h = 5.5 and
5.7 GHz, E_L/h = 1 GHz, both qubits biased at phi_ext = pi).  A YAML file
overrides the defaults and ``--set section.key=value`` flags override the
file.  The fully resolved tree is what experiments echo into their sidecar
metadata, so a run can always be reproduced from its outputs.
"""

import copy
import math
from dataclasses import dataclass
from pathlib import Path

import yaml

from .circuit import FluxoniumParams
from .coupling import CouplingSpec, coupling_from_elements
from .errors import ConfigError

SWEEP_VARIABLES = ("coupling_strength", "t_g")
DRIVE_TARGETS = ("t11_21", "t10_02")

DEFAULT_CONFIG = {
    "qubit_a": {"e_c": 1.5, "e_l": 1.0, "e_j": 5.5, "phi_ext": math.pi},
    "qubit_b": {"e_c": 1.2, "e_l": 1.0, "e_j": 5.7, "phi_ext": math.pi},
    "coupling": {"kind": "capacitive", "strength": 0.2, "elements": None},
    "drive": {
        "t_g": 50.0,
        "eta_a": 0.0,
        "eta_b": 1.0,
        "target": "t11_21",
        "window_mhz": 15.0,
    },
    "sweep": {"variable": "coupling_strength", "start": 0.0, "stop": 0.3, "points": 25},
    "numerics": {
        "basis_size": 120,
        "n_keep": 5,
        "step_divisor": 80,
        "workers": 0,
        "freq_points": 31,
        "amp_points": 5,
        "refine": True,
    },
    "output": {"path": "experiment.csv"},
}

_ELEMENT_KEYS = {
    "capacitive": ("c_m_ff", "c_a_ff", "c_b_ff"),
    "inductive": ("l_m_nh", "l_a_nh", "l_b_nh"),
}


@dataclass(frozen=True)
class DriveSettings:
    t_g: float
    eta_a: float
    eta_b: float
    target: str
    window_mhz: float


@dataclass(frozen=True)
class SweepSettings:
    variable: str
    start: float
    stop: float
    points: int


@dataclass(frozen=True)
class NumericsSettings:
    basis_size: int
    n_keep: int
    step_divisor: int
    workers: int
    freq_points: int
    amp_points: int
    refine: bool


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully validated configuration plus the resolved raw tree."""

    qubit_a: FluxoniumParams
    qubit_b: FluxoniumParams
    coupling: CouplingSpec
    drive: DriveSettings
    sweep: SweepSettings
    numerics: NumericsSettings
    output_path: str
    resolved: dict


def _merge(base: dict, update: dict, path: str = "") -> dict:
    merged = copy.deepcopy(base)
    for key, value in update.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config key '{where}'")
        if isinstance(base[key], dict) and base[key] is not None:
            if not isinstance(value, dict):
                raise ConfigError(f"'{where}' must be a mapping")
            merged[key] = _merge(base[key], value, where)
        else:
            merged[key] = value
    return merged


def _apply_override(tree: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"override '{assignment}' is not of the form section.key=value")
    dotted, raw_value = assignment.split("=", 1)
    keys = dotted.strip().split(".")
    try:
        value = yaml.safe_load(raw_value)
    except yaml.YAMLError:
        value = raw_value
    node = tree
    for key in keys[:-1]:
        if not isinstance(node, dict) or key not in node:
            raise ConfigError(f"unknown config key '{dotted}'")
        if node[key] is None:
            node[key] = {}
        node = node[key]
    leaf = keys[-1]
    if not isinstance(node, dict) or (leaf not in node and dotted != "coupling.elements" and not dotted.startswith("coupling.elements.")):
        raise ConfigError(f"unknown config key '{dotted}'")
    node[leaf] = value


def _require(tree: dict, section: str, key: str, kind, positive: bool = False):
    value = tree[section][key]
    where = f"{section}.{key}"
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"'{where}' must be a number, got {value!r}")
        value = float(value)
    elif kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"'{where}' must be an integer, got {value!r}")
    elif kind is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"'{where}' must be true or false, got {value!r}")
    elif kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"'{where}' must be a string, got {value!r}")
    if positive and value <= 0:
        raise ConfigError(f"'{where}' must be positive, got {value}")
    return value


def _build_coupling(tree: dict) -> CouplingSpec:
    kind = _require(tree, "coupling", "kind", str)
    if kind not in _ELEMENT_KEYS:
        raise ConfigError(f"'coupling.kind' must be 'capacitive' or 'inductive', got {kind!r}")
    elements = tree["coupling"]["elements"]
    strength = tree["coupling"]["strength"]
    if elements is not None:
        if not isinstance(elements, dict):
            raise ConfigError("'coupling.elements' must be a mapping of element values")
        if strength is not None:
            raise ConfigError(
                "'coupling.strength' and 'coupling.elements' are mutually exclusive"
            )
        expected = _ELEMENT_KEYS[kind]
        unknown = sorted(set(elements) - set(expected))
        if unknown:
            raise ConfigError(
                f"'coupling.elements' for {kind} coupling accepts {list(expected)}, "
                f"got unknown keys {unknown}"
            )
        try:
            return coupling_from_elements(kind, **{k: elements.get(k) for k in expected})
        except ValueError as exc:
            raise ConfigError(f"'coupling.elements': {exc}") from exc
    if strength is None:
        raise ConfigError("one of 'coupling.strength' or 'coupling.elements' is required")
    if not isinstance(strength, (int, float)) or isinstance(strength, bool):
        raise ConfigError(f"'coupling.strength' must be a number, got {strength!r}")
    try:
        return CouplingSpec(kind=kind, strength=float(strength))
    except ValueError as exc:
        raise ConfigError(f"'coupling.strength': {exc}") from exc


def _build_qubit(tree: dict, section: str) -> FluxoniumParams:
    kwargs = {key: _require(tree, section, key, float) for key in ("e_c", "e_l", "e_j", "phi_ext")}
    try:
        return FluxoniumParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"'{section}': {exc}") from exc


def load_config(path: str | Path | None = None, overrides: list | None = None) -> ExperimentConfig:
    """Resolve defaults, an optional YAML file, and override assignments."""
    tree = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            loaded = yaml.safe_load(path.read_text())
        except yaml.YAMLError as exc:
            raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file {path} must hold a mapping at the top level")
        tree = _merge(tree, loaded)
    for assignment in overrides or []:
        _apply_override(tree, assignment)

    qubit_a = _build_qubit(tree, "qubit_a")
    qubit_b = _build_qubit(tree, "qubit_b")
    coupling = _build_coupling(tree)

    target = _require(tree, "drive", "target", str)
    if target not in DRIVE_TARGETS:
        raise ConfigError(f"'drive.target' must be one of {list(DRIVE_TARGETS)}, got {target!r}")
    drive = DriveSettings(
        t_g=_require(tree, "drive", "t_g", float, positive=True),
        eta_a=_require(tree, "drive", "eta_a", float),
        eta_b=_require(tree, "drive", "eta_b", float),
        target=target,
        window_mhz=_require(tree, "drive", "window_mhz", float, positive=True),
    )

    variable = _require(tree, "sweep", "variable", str)
    if variable not in SWEEP_VARIABLES:
        raise ConfigError(
            f"'sweep.variable' must be one of {list(SWEEP_VARIABLES)}, got {variable!r}"
        )
    points = _require(tree, "sweep", "points", int, positive=True)
    sweep = SweepSettings(
        variable=variable,
        start=_require(tree, "sweep", "start", float),
        stop=_require(tree, "sweep", "stop", float),
        points=points,
    )
    if sweep.start > sweep.stop:
        raise ConfigError(f"'sweep.start' ({sweep.start}) must not exceed 'sweep.stop' ({sweep.stop})")

    numerics = NumericsSettings(
        basis_size=_require(tree, "numerics", "basis_size", int, positive=True),
        n_keep=_require(tree, "numerics", "n_keep", int, positive=True),
        step_divisor=_require(tree, "numerics", "step_divisor", int, positive=True),
        workers=_require(tree, "numerics", "workers", int),
        freq_points=_require(tree, "numerics", "freq_points", int, positive=True),
        amp_points=_require(tree, "numerics", "amp_points", int, positive=True),
        refine=_require(tree, "numerics", "refine", bool),
    )
    if numerics.step_divisor < 40:
        raise ConfigError(
            f"'numerics.step_divisor' must be at least 40 to resolve the drive "
            f"carrier, got {numerics.step_divisor}"
        )
    if numerics.n_keep > numerics.basis_size / 4:
        raise ConfigError(
            f"'numerics.n_keep'={numerics.n_keep} needs 'numerics.basis_size' "
            f">= {4 * numerics.n_keep}, got {numerics.basis_size}"
        )
    if numerics.workers < 0:
        raise ConfigError(f"'numerics.workers' must be >= 0, got {numerics.workers}")

    output_path = _require(tree, "output", "path", str)
    resolved = copy.deepcopy(tree)
    resolved["coupling"]["derived_strength"] = coupling.strength
    return ExperimentConfig(
        qubit_a=qubit_a,
        qubit_b=qubit_b,
        coupling=coupling,
        drive=drive,
        sweep=sweep,
        numerics=numerics,
        output_path=output_path,
        resolved=resolved,
    )
