"""Simulator for the microwave-activated controlled-Z gate between two
fixed-frequency fluxonium qubits.

The pipeline: quantize each fluxonium circuit (:mod:`fluxcz.circuit`),
assemble and label the coupled two-qubit spectrum (:mod:`fluxcz.coupling`),
integrate the driven Schrodinger equation (:mod:`fluxcz.dynamics`), and
score/optimize the gate (:mod:`fluxcz.metrics`).  Named experiments with
CSV output live in :mod:`fluxcz.experiments`, driven by the ``fluxcz`` CLI.
"""

__version__ = "0.1.0"

from .circuit import FluxoniumParams, QubitEigensystem, build_hamiltonian, diagonalize, transition
from .coupling import (
    CoupledSystem,
    CouplingSpec,
    GateFiguresOfMerit,
    assemble,
    coupling_from_elements,
    dressed_matrix_element,
    figures_of_merit,
)
from .dynamics import DrivePulse, PropagationResult, envelope, propagate, propagate_states
from .errors import (
    ConfigError,
    ConvergenceError,
    CouplerLimitWarning,
    FluxczError,
    IntegratorError,
    LabelingError,
    OptimizerError,
)
from .metrics import (
    ComputationalEvolution,
    FidelityReport,
    OptimizationOutcome,
    fidelity,
    leakage,
    optimize,
    project,
    rabi_cycle_amplitude,
)
from .units import charging_energy_ghz, inductive_energy_ghz

__all__ = [
    "FluxoniumParams",
    "QubitEigensystem",
    "build_hamiltonian",
    "diagonalize",
    "transition",
    "CouplingSpec",
    "CoupledSystem",
    "GateFiguresOfMerit",
    "assemble",
    "figures_of_merit",
    "dressed_matrix_element",
    "coupling_from_elements",
    "DrivePulse",
    "PropagationResult",
    "envelope",
    "propagate",
    "propagate_states",
    "ComputationalEvolution",
    "FidelityReport",
    "OptimizationOutcome",
    "project",
    "fidelity",
    "leakage",
    "optimize",
    "rabi_cycle_amplitude",
    "charging_energy_ghz",
    "inductive_energy_ghz",
    "FluxczError",
    "ConfigError",
    "ConvergenceError",
    "LabelingError",
    "IntegratorError",
    "OptimizerError",
    "CouplerLimitWarning",
    "__version__",
]
