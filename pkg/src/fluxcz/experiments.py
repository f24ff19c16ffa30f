"""Named experiments reproducing the figure panels, with CSV output.

Every experiment writes one RFC-4180 CSV (header row, 12 significant
digits) plus a YAML sidecar ``<output>.meta.yaml`` holding the fully
resolved configuration, so identical configs produce byte-identical output
and any CSV can be regenerated from its sidecar alone.
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from ._kernels import BACKEND
from .circuit import diagonalize
from .config import ExperimentConfig
from .coupling import CouplingSpec, assemble, dressed_matrix_element, figures_of_merit
from .dynamics import DrivePulse, propagate
from .errors import ConfigError
from .metrics import fidelity, leakage, optimize, project

EXPERIMENT_KINDS = (
    "spectrum",
    "coupled-spectrum",
    "fom-sweep",
    "gate-vs-time",
    "gate-vs-coupling",
)

# Matrix elements tabulated by fom-sweep; the transitions whose interplay
# sets the gate error for both coupling schemes.
_SWEEP_ELEMENTS = (
    ("n_a", (1, 0), (2, 0)),
    ("n_a", (1, 1), (2, 1)),
    ("n_b", (1, 0), (2, 0)),
    ("n_b", (1, 1), (2, 1)),
    ("n_b", (1, 0), (0, 2)),
    ("n_b", (0, 1), (0, 2)),
)

COUPLED_SPECTRUM_STATES = 9


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.11e}"


def _write_csv(path: Path, header: list, rows: list) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(value) for value in row])


def _write_sidecar(path: Path, kind: str, config: ExperimentConfig, header: list) -> Path:
    sidecar = Path(str(path) + ".meta.yaml")
    payload = {
        "experiment": kind,
        "package": {"name": "fluxcz", "version": __version__, "kernel_backend": BACKEND},
        "columns": list(header),
        "config": config.resolved,
    }
    sidecar.write_text(yaml.safe_dump(payload, sort_keys=False))
    return sidecar


def _eigensystems(config: ExperimentConfig):
    num = config.numerics
    qubit_a = diagonalize(config.qubit_a, num.n_keep, num.basis_size)
    qubit_b = diagonalize(config.qubit_b, num.n_keep, num.basis_size)
    return qubit_a, qubit_b


def _map_points(func, points, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, points))
    return [func(point) for point in points]


def _spectrum_rows(config: ExperimentConfig) -> tuple:
    header = ["qubit", "i", "f", "energy_i_GHz", "energy_f_GHz", "omega_GHz", "n_abs", "phi_abs"]
    rows = []
    for name, sys in zip(("a", "b"), _eigensystems(config)):
        for i in range(sys.n_keep):
            for f in range(i + 1, sys.n_keep):
                rows.append(
                    [
                        name,
                        i,
                        f,
                        sys.energies[i],
                        sys.energies[f],
                        sys.energies[f] - sys.energies[i],
                        abs(sys.n_op[i, f]),
                        abs(sys.phi_op[i, f]),
                    ]
                )
    return header, rows


def _coupled_spectrum_rows(config: ExperimentConfig) -> tuple:
    header = [
        "from_k",
        "from_l",
        "to_k",
        "to_l",
        "omega_GHz",
        "n_a_abs",
        "n_b_abs",
        "phi_a_abs",
        "phi_b_abs",
    ]
    qubit_a, qubit_b = _eigensystems(config)
    sys = assemble(qubit_a, qubit_b, config.coupling)
    rows = []
    for d1 in range(COUPLED_SPECTRUM_STATES):
        for d2 in range(d1 + 1, COUPLED_SPECTRUM_STATES):
            frm, to = sys.labels[d1], sys.labels[d2]
            rows.append(
                [
                    frm[0],
                    frm[1],
                    to[0],
                    to[1],
                    sys.dressed_energies[d2] - sys.dressed_energies[d1],
                    dressed_matrix_element(sys, "n_a", frm, to),
                    dressed_matrix_element(sys, "n_b", frm, to),
                    dressed_matrix_element(sys, "phi_a", frm, to),
                    dressed_matrix_element(sys, "phi_b", frm, to),
                ]
            )
    return header, rows


def _element_column_name(op: str, frm: tuple, to: tuple) -> str:
    return f"{op}_{frm[0]}{frm[1]}_{to[0]}{to[1]}"


def _fom_sweep_rows(config: ExperimentConfig) -> tuple:
    if config.sweep.variable != "coupling_strength":
        raise ConfigError("fom-sweep requires sweep.variable = coupling_strength")
    header = ["J_over_h_GHz", "delta_omega_GHz", "delta_c_GHz", "delta_GHz"]
    header += [_element_column_name(*spec) for spec in _SWEEP_ELEMENTS]
    qubit_a, qubit_b = _eigensystems(config)
    strengths = np.linspace(config.sweep.start, config.sweep.stop, config.sweep.points)

    def one_point(strength: float) -> list:
        sys = assemble(qubit_a, qubit_b, CouplingSpec(config.coupling.kind, float(strength)))
        fom = figures_of_merit(sys)
        row = [strength, fom.delta_omega, fom.delta_c, fom.delta]
        row += [dressed_matrix_element(sys, op, frm, to) for op, frm, to in _SWEEP_ELEMENTS]
        return row

    rows = _map_points(one_point, strengths, config.numerics.workers)
    return header, rows


def _gate_row(sys, t_g: float, config: ExperimentConfig) -> list:
    num = config.numerics
    outcome = optimize(
        sys,
        t_g,
        target_transition=config.drive.target,
        weights=(config.drive.eta_a, config.drive.eta_b),
        window_ghz=config.drive.window_mhz * 1e-3,
        freq_points=num.freq_points,
        amp_points=num.amp_points,
        step_divisor=num.step_divisor,
        refine=num.refine,
        workers=num.workers or None,
    )
    pulse = outcome.best_pulse
    evolution = project(propagate(sys, pulse, 1.0 / (num.step_divisor * pulse.omega_d)), sys)
    report = fidelity(evolution)
    return [
        pulse.amplitude,
        pulse.omega_d,
        outcome.best_fidelity,
        1.0 - outcome.best_fidelity,
        leakage(evolution),
        report.conditional_phase,
    ]


def _gate_vs_time_rows(config: ExperimentConfig) -> tuple:
    if config.sweep.variable != "t_g":
        raise ConfigError("gate-vs-time requires sweep.variable = t_g")
    header = [
        "t_g_ns",
        "amplitude_GHz",
        "omega_d_GHz",
        "fidelity",
        "error",
        "leakage",
        "conditional_phase_rad",
    ]
    qubit_a, qubit_b = _eigensystems(config)
    sys = assemble(qubit_a, qubit_b, config.coupling)
    times = np.linspace(config.sweep.start, config.sweep.stop, config.sweep.points)
    rows = [[t_g] + _gate_row(sys, float(t_g), config) for t_g in times]
    return header, rows


def _gate_vs_coupling_rows(config: ExperimentConfig) -> tuple:
    if config.sweep.variable != "coupling_strength":
        raise ConfigError("gate-vs-coupling requires sweep.variable = coupling_strength")
    header = [
        "J_over_h_GHz",
        "amplitude_GHz",
        "omega_d_GHz",
        "fidelity",
        "error",
        "leakage",
        "conditional_phase_rad",
    ]
    qubit_a, qubit_b = _eigensystems(config)
    strengths = np.linspace(config.sweep.start, config.sweep.stop, config.sweep.points)
    rows = []
    for strength in strengths:
        sys = assemble(qubit_a, qubit_b, CouplingSpec(config.coupling.kind, float(strength)))
        rows.append([strength] + _gate_row(sys, config.drive.t_g, config))
    return header, rows


_BUILDERS = {
    "spectrum": _spectrum_rows,
    "coupled-spectrum": _coupled_spectrum_rows,
    "fom-sweep": _fom_sweep_rows,
    "gate-vs-time": _gate_vs_time_rows,
    "gate-vs-coupling": _gate_vs_coupling_rows,
}


def run_experiment(kind: str, config: ExperimentConfig, out_path=None) -> Path:
    """Run one named experiment; returns the CSV path it wrote."""
    if kind not in _BUILDERS:
        raise ConfigError(f"unknown experiment kind {kind!r}; expected one of {EXPERIMENT_KINDS}")
    header, rows = _BUILDERS[kind](config)
    path = Path(out_path) if out_path is not None else Path(config.output_path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(path, header, rows)
    _write_sidecar(path, kind, config, header)
    return path
