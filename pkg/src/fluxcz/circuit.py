"""Single-fluxonium circuit quantization.

A fluxonium is described by three energy scales (all as E/h in GHz) and an
external flux phase:

    H = 4 E_C n^2 + (1/2) E_L phi^2 - E_J cos(phi - phi_ext)

The Hamiltonian is represented in the harmonic-oscillator basis of the LC
sub-circuit and diagonalized exactly; the charge and flux operators are
returned in the truncated eigenbasis, which is all the coupled two-qubit
machinery needs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .units import TWO_PI

DEFAULT_BASIS_SIZE = 120
DEFAULT_N_KEEP = 5

# Lowest eigenvalues must be stable at this level against a 1.5x larger basis.
CONVERGENCE_TOL_GHZ = 1e-9


@dataclass(frozen=True)
class FluxoniumParams:
    """Circuit energies (GHz, as E/h) and external flux phase (radians).

    ``phi_ext`` is normalized into [0, 2*pi); the flux sweet spot sits at
    ``phi_ext = pi``.
    """

    e_c: float
    e_l: float
    e_j: float
    phi_ext: float = math.pi

    def __post_init__(self):
        if self.e_c <= 0.0:
            raise ValueError(f"e_c must be positive, got {self.e_c}")
        if self.e_l <= 0.0:
            raise ValueError(f"e_l must be positive, got {self.e_l}")
        if self.e_j < 0.0:
            raise ValueError(f"e_j must be non-negative, got {self.e_j}")
        object.__setattr__(self, "phi_ext", self.phi_ext % TWO_PI)

    @property
    def oscillator_frequency(self) -> float:
        """Level spacing sqrt(8 E_C E_L) of the bare LC circuit, GHz."""
        return math.sqrt(8.0 * self.e_c * self.e_l)

    @property
    def phi_zpf(self) -> float:
        """Zero-point flux fluctuation (2 E_C / E_L)^(1/4) of the LC mode."""
        return (2.0 * self.e_c / self.e_l) ** 0.25


@dataclass(frozen=True)
class QubitEigensystem:
    """Truncated eigensystem of one fluxonium.

    ``energies`` are the lowest ``n_keep`` eigenenergies in GHz, shifted so
    that ``energies[0] == 0``.  ``n_op`` and ``phi_op`` are the charge and
    flux operators in the eigenbasis (complex, ``n_keep x n_keep``).  The
    eigenvector phase convention (largest-magnitude component real positive)
    makes the signed matrix elements reproducible across runs.
    """

    params: FluxoniumParams
    n_keep: int
    energies: np.ndarray
    n_op: np.ndarray
    phi_op: np.ndarray


def _lc_operators(params: FluxoniumParams, basis_size: int):
    """Flux and charge operators in the LC oscillator basis."""
    phi_zpf = params.phi_zpf
    ladder = np.sqrt(np.arange(1.0, basis_size))
    phi = np.zeros((basis_size, basis_size))
    phi[np.arange(basis_size - 1), np.arange(1, basis_size)] = ladder
    phi = phi_zpf * (phi + phi.T)
    n = np.zeros((basis_size, basis_size), dtype=complex)
    n[np.arange(basis_size - 1), np.arange(1, basis_size)] = ladder
    n = 1j / (2.0 * phi_zpf) * (n.T - n)
    return phi, n


def build_hamiltonian(params: FluxoniumParams, basis_size: int = DEFAULT_BASIS_SIZE) -> np.ndarray:
    """Fluxonium Hamiltonian in the LC oscillator basis, in GHz.

    The cosine is evaluated exactly: phi is eigendecomposed (it is real
    symmetric tridiagonal) and cos(phi - phi_ext) is assembled from
    cos(phi) and sin(phi), with no series truncation.

    Parameters
    ----------
    params : FluxoniumParams
        Circuit energies and external flux.
    basis_size : int
        Number of oscillator states; at least 20.

    Returns
    -------
    np.ndarray
        Real symmetric ``basis_size x basis_size`` matrix.
    """
    if basis_size < 20:
        raise ValueError(
            f"basis_size={basis_size} is too small to support a truncated "
            "eigensystem; need at least 20 oscillator states"
        )
    phi, n = _lc_operators(params, basis_size)
    lam, v = np.linalg.eigh(phi)
    cos_phi = (v * np.cos(lam)) @ v.T
    sin_phi = (v * np.sin(lam)) @ v.T
    cos_shifted = math.cos(params.phi_ext) * cos_phi + math.sin(params.phi_ext) * sin_phi
    h = (
        4.0 * params.e_c * (n @ n).real
        + 0.5 * params.e_l * (phi @ phi)
        - params.e_j * cos_shifted
    )
    return 0.5 * (h + h.T)


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude component real positive."""
    idx = np.argmax(np.abs(vecs), axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    return vecs * (np.abs(pivots) / pivots)


def diagonalize(
    params: FluxoniumParams,
    n_keep: int = DEFAULT_N_KEEP,
    basis_size: int = DEFAULT_BASIS_SIZE,
    convergence_tol: float = CONVERGENCE_TOL_GHZ,
) -> QubitEigensystem:
    """Diagonalize one fluxonium and project its operators onto the lowest levels.

    The result is checked for basis convergence by re-diagonalizing at
    1.5x the basis size; a shift of the kept eigenvalues above
    ``convergence_tol`` (GHz) raises :class:`ConvergenceError`.
    """
    if n_keep < 2:
        raise ValueError(f"n_keep must be at least 2, got {n_keep}")
    if n_keep > basis_size / 4:
        raise ValueError(
            f"n_keep={n_keep} needs basis_size >= {4 * n_keep} for a "
            f"convergence margin, got basis_size={basis_size}"
        )

    h = build_hamiltonian(params, basis_size)
    evals, vecs = np.linalg.eigh(h)
    energies = evals[:n_keep] - evals[0]

    h_big = build_hamiltonian(params, int(math.ceil(1.5 * basis_size)))
    evals_big = np.linalg.eigvalsh(h_big)
    shift = np.max(np.abs((evals_big[:n_keep] - evals_big[0]) - energies))
    if shift > convergence_tol:
        raise ConvergenceError(
            f"lowest {n_keep} eigenvalues moved by {shift:.3e} GHz when the "
            f"basis grew from {basis_size} to {int(math.ceil(1.5 * basis_size))}; "
            "increase basis_size"
        )

    kept = _fix_phases(vecs[:, :n_keep])
    phi, n = _lc_operators(params, basis_size)
    n_op = kept.conj().T @ n @ kept
    phi_op = (kept.T @ phi @ kept).astype(complex)
    return QubitEigensystem(
        params=params,
        n_keep=n_keep,
        energies=energies,
        n_op=n_op,
        phi_op=phi_op,
    )


def transition(sys: QubitEigensystem, i: int, f: int) -> float:
    """Transition frequency from level ``i`` to level ``f`` in GHz.

    Positive when ``f`` lies above ``i``; antisymmetric under swapping the
    two levels.
    """
    n = len(sys.energies)
    if not (0 <= i < n and 0 <= f < n):
        raise IndexError(f"levels ({i}, {f}) outside the kept range 0..{n - 1}")
    return float(sys.energies[f] - sys.energies[i])
