"""Interacting two-fluxonium system and its spectroscopic figures of merit.

The two qubits interact either through their charges (+J_C n_A n_B, from a
shared capacitance) or through their fluxes (-J_L phi_A phi_B, from a mutual
inductance).  The coupled Hamiltonian is assembled in the bare product basis
of the truncated single-qubit eigensystems, diagonalized, and the dressed
eigenstates are labeled by the bare product state they connect to at zero
coupling (maximum squared overlap, assigned greedily with bijectivity
enforced).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .circuit import QubitEigensystem, transition
from .errors import CouplerLimitWarning, LabelingError
from .units import E_CHARGE, HBAR, PLANCK_H

CAPACITIVE = "capacitive"
INDUCTIVE = "inductive"

# Minimum squared overlap with a bare product state for an unambiguous label.
LABEL_OVERLAP_FLOOR = 0.5

# C_M/C (or L_M/L) ratios: warn above the first, refuse above the second.
COUPLER_RATIO_WARN = 0.1
COUPLER_RATIO_MAX = 0.3


@dataclass(frozen=True)
class CouplingSpec:
    """Coupling scheme and strength J/h in GHz.

    ``kind`` is ``"capacitive"`` (+J n_A n_B) or ``"inductive"``
    (-J phi_A phi_B); the signs follow the circuit derivation and matter for
    signed spectra, not for the magnitudes of the figures of merit.
    """

    kind: str
    strength: float

    def __post_init__(self):
        if self.kind not in (CAPACITIVE, INDUCTIVE):
            raise ValueError(
                f"coupling kind must be '{CAPACITIVE}' or '{INDUCTIVE}', got {self.kind!r}"
            )
        if self.strength < 0.0:
            raise ValueError(f"coupling strength must be non-negative, got {self.strength}")


@dataclass(frozen=True)
class GateFiguresOfMerit:
    """Spectroscopic quantities controlling the conditional gate (GHz).

    delta_omega : frequency mismatch w(11->21) - w(10->20), the resource
        that makes the drive state-selective.
    delta_c : crosstalk w(00->01) - w(10->11) inside the computational
        subspace.
    delta : bare detuning |w_A(1->2) - w_B(1->2)| between the two qubits.
    """

    delta_omega: float
    delta_c: float
    delta: float


@dataclass(frozen=True)
class CoupledSystem:
    """Dressed two-qubit eigensystem with bare-product-state labels.

    ``dressed_energies`` ascend and are indexed by dressed index; ``labels``
    maps each dressed index to its bare label ``(k, l)`` where ``k`` counts
    qubit-A levels and ``l`` qubit-B levels.  The four operators are in the
    dressed basis.
    """

    qubit_a: QubitEigensystem
    qubit_b: QubitEigensystem
    coupling: CouplingSpec
    dressed_energies: np.ndarray
    labels: dict = field(repr=False)
    n_a: np.ndarray = field(repr=False)
    n_b: np.ndarray = field(repr=False)
    phi_a: np.ndarray = field(repr=False)
    phi_b: np.ndarray = field(repr=False)
    index_of: dict = field(repr=False)

    @property
    def n_keep(self) -> int:
        return self.qubit_a.n_keep

    def energy(self, label: tuple) -> float:
        """Dressed energy of the state labeled ``(k, l)``, GHz."""
        return float(self.dressed_energies[self.index(label)])

    def index(self, label: tuple) -> int:
        """Dressed index carrying the bare label ``(k, l)``."""
        key = (int(label[0]), int(label[1]))
        if key not in self.index_of:
            raise LabelingError(f"no dressed state labeled {key}")
        return self.index_of[key]

    def transition(self, frm: tuple, to: tuple) -> float:
        """Dressed transition frequency w(frm -> to) in GHz."""
        return self.energy(to) - self.energy(frm)

    def operator(self, name: str) -> np.ndarray:
        ops = {"n_a": self.n_a, "n_b": self.n_b, "phi_a": self.phi_a, "phi_b": self.phi_b}
        if name not in ops:
            raise ValueError(f"operator must be one of {sorted(ops)}, got {name!r}")
        return ops[name]


def _label_by_overlap(vecs: np.ndarray, n_keep: int) -> dict:
    """Greedy maximum-overlap assignment of bare labels to dressed states.

    Pairs (dressed, bare) are visited in descending squared overlap; each
    side is used once, which enforces bijectivity.  If any dressed state
    ends up with squared overlap below LABEL_OVERLAP_FLOOR the connection
    to a bare state is ambiguous and we refuse to guess.
    """
    overlaps = np.abs(vecs) ** 2  # [bare, dressed]
    dim = vecs.shape[0]
    order = np.argsort(overlaps, axis=None)[::-1]
    labels = {}
    used_bare = set()
    for flat in order:
        bare, dressed = divmod(int(flat), dim)
        if dressed in labels or bare in used_bare:
            continue
        if overlaps[bare, dressed] < LABEL_OVERLAP_FLOOR:
            raise LabelingError(
                f"dressed state {dressed} has best available bare overlap "
                f"{overlaps[bare, dressed]:.3f} < {LABEL_OVERLAP_FLOOR}; "
                "the adiabatic connection is ambiguous at this coupling"
            )
        labels[dressed] = (bare // n_keep, bare % n_keep)
        used_bare.add(bare)
        if len(labels) == dim:
            break
    return labels


def assemble(
    qubit_a: QubitEigensystem,
    qubit_b: QubitEigensystem,
    coupling: CouplingSpec,
) -> CoupledSystem:
    """Build and diagonalize the interacting two-qubit Hamiltonian.

    The Hamiltonian is H_A x 1 + 1 x H_B + V in the bare product basis
    (qubit-A index major).  Dressed states are labeled by maximum overlap
    with the bare product states and the single-qubit operators are rotated
    into the dressed basis.
    """
    if qubit_a.n_keep != qubit_b.n_keep:
        raise ValueError(
            f"both qubits must keep the same level count, got "
            f"{qubit_a.n_keep} and {qubit_b.n_keep}"
        )
    n_keep = qubit_a.n_keep
    eye = np.eye(n_keep)
    h = np.kron(np.diag(qubit_a.energies), eye) + np.kron(eye, np.diag(qubit_b.energies))
    if coupling.kind == CAPACITIVE:
        h = h + coupling.strength * np.kron(qubit_a.n_op, qubit_b.n_op)
    else:
        h = h - coupling.strength * np.kron(qubit_a.phi_op, qubit_b.phi_op)
    h = 0.5 * (h + h.conj().T)

    evals, vecs = np.linalg.eigh(h)
    idx = np.argmax(np.abs(vecs), axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    vecs = vecs * (np.abs(pivots) / pivots)

    labels = _label_by_overlap(vecs, n_keep)
    index_of = {lab: dressed for dressed, lab in labels.items()}

    def dress(op: np.ndarray) -> np.ndarray:
        return vecs.conj().T @ op @ vecs

    return CoupledSystem(
        qubit_a=qubit_a,
        qubit_b=qubit_b,
        coupling=coupling,
        dressed_energies=evals,
        labels=labels,
        index_of=index_of,
        n_a=dress(np.kron(qubit_a.n_op, eye)),
        n_b=dress(np.kron(eye, qubit_b.n_op)),
        phi_a=dress(np.kron(qubit_a.phi_op, eye)),
        phi_b=dress(np.kron(eye, qubit_b.phi_op)),
    )


def figures_of_merit(sys: CoupledSystem) -> GateFiguresOfMerit:
    """Frequency mismatch, crosstalk and bare detuning of a coupled system."""
    delta_omega = sys.transition((1, 1), (2, 1)) - sys.transition((1, 0), (2, 0))
    delta_c = sys.transition((0, 0), (0, 1)) - sys.transition((1, 0), (1, 1))
    delta = abs(transition(sys.qubit_a, 1, 2) - transition(sys.qubit_b, 1, 2))
    return GateFiguresOfMerit(delta_omega=delta_omega, delta_c=delta_c, delta=delta)


def dressed_matrix_element(sys: CoupledSystem, op: str, frm: tuple, to: tuple) -> float:
    """|<to| O |frm>| in the dressed basis for O in {n_a, n_b, phi_a, phi_b}."""
    matrix = sys.operator(op)
    return float(abs(matrix[sys.index(to), sys.index(frm)]))


def coupling_from_elements(kind: str, **elements) -> CouplingSpec:
    """Coupling strength from physical circuit elements.

    Capacitive: pass ``c_m_ff``, ``c_a_ff``, ``c_b_ff`` (fF); then
    J_C = 4 e^2 C_M / (C_A C_B).  Inductive: pass ``l_m_nh``, ``l_a_nh``,
    ``l_b_nh`` (nH); then J_L = (hbar/2e)^2 L_M / (L_A L_B).  Both formulas
    assume the coupler element is small: ratios above
    ``COUPLER_RATIO_WARN`` warn, above ``COUPLER_RATIO_MAX`` raise.
    """
    if kind == CAPACITIVE:
        expected = ("c_m_ff", "c_a_ff", "c_b_ff")
        scale = 1e-15
        prefactor = 4.0 * E_CHARGE**2
    elif kind == INDUCTIVE:
        expected = ("l_m_nh", "l_a_nh", "l_b_nh")
        scale = 1e-9
        prefactor = (HBAR / (2.0 * E_CHARGE)) ** 2
    else:
        raise ValueError(f"coupling kind must be '{CAPACITIVE}' or '{INDUCTIVE}', got {kind!r}")

    missing = [name for name in expected if elements.get(name) is None]
    extra = sorted(set(elements) - set(expected))
    if missing or extra:
        raise ValueError(
            f"{kind} coupling needs exactly the elements {expected}; "
            f"missing {missing}, unexpected {extra}"
        )
    mutual, elem_a, elem_b = (float(elements[name]) * scale for name in expected)
    if elem_a <= 0.0 or elem_b <= 0.0 or mutual < 0.0:
        raise ValueError("qubit elements must be positive and the coupler non-negative")

    ratio = max(mutual / elem_a, mutual / elem_b)
    if ratio > COUPLER_RATIO_MAX:
        raise ValueError(
            f"coupler/qubit element ratio {ratio:.3f} exceeds {COUPLER_RATIO_MAX}; "
            "the weak-coupler expressions for J do not apply"
        )
    if ratio > COUPLER_RATIO_WARN:
        warnings.warn(
            f"coupler/qubit element ratio {ratio:.3f} above {COUPLER_RATIO_WARN}; "
            "J is only accurate to leading order in this ratio",
            CouplerLimitWarning,
            stacklevel=2,
        )
    strength = prefactor * mutual / (elem_a * elem_b) / PLANCK_H / 1e9
    return CouplingSpec(kind=kind, strength=strength)
