import math

import numpy as np
import pytest

from conftest import QUBIT_A_PARAMS, QUBIT_B_PARAMS
from fluxcz import (
    ConvergenceError,
    FluxoniumParams,
    build_hamiltonian,
    charging_energy_ghz,
    diagonalize,
    inductive_energy_ghz,
    transition,
)
from oracles import grid_eigensystem

# Flux-grid oracle values (regenerate with `python tests/oracles.py`).
GRID_ENERGIES_A = np.array([0.0, 0.605954692565, 5.620319818152, 8.864818018484, 13.2741412537])
GRID_ENERGIES_B = np.array([0.0, 0.354325243174, 5.120682933767, 7.638559758697, 11.552931389135])
GRID_N01_A, GRID_N12_A = 0.118890751, 0.556116586
GRID_PHI01_A, GRID_PHI12_A = 2.354448325, 1.330856222

# Constants arithmetic with exact SI values e = 1.602176634e-19 C and
# h = 6.62607015e-34 J s: C = e^2/(2 h E_C) at E_C/h = 1.5 GHz and
# L = (hbar/2e)^2/(h E_L) at E_L/h = 1 GHz.
CAP_FOR_1P5_GHZ_FF = 12.913486216
IND_FOR_1_GHZ_NH = 163.46151281


class TestFluxoniumParams:
    def test_rejects_nonpositive_energies(self):
        with pytest.raises(ValueError):
            FluxoniumParams(e_c=0.0, e_l=1.0, e_j=5.5)
        with pytest.raises(ValueError):
            FluxoniumParams(e_c=1.5, e_l=-1.0, e_j=5.5)
        with pytest.raises(ValueError):
            FluxoniumParams(e_c=1.5, e_l=1.0, e_j=-0.1)

    def test_flux_normalized_to_2pi_window(self):
        params = FluxoniumParams(1.5, 1.0, 5.5, phi_ext=2.0 * math.pi + 1.0)
        assert params.phi_ext == pytest.approx(1.0, abs=1e-12)
        assert FluxoniumParams(1.5, 1.0, 5.5, -math.pi).phi_ext == pytest.approx(math.pi)


class TestBuildHamiltonian:
    def test_harmonic_limit_has_sqrt_8ecel_spacing(self):
        h = build_hamiltonian(FluxoniumParams(0.5, 1.0, 0.0, 0.0), basis_size=40)
        evals = np.linalg.eigvalsh(h)
        np.testing.assert_allclose(np.diff(evals[:10]), 2.0, atol=1e-12)

    def test_hermitian(self):
        h = build_hamiltonian(QUBIT_A_PARAMS)
        assert np.linalg.norm(h - h.conj().T) <= 1e-12 * np.linalg.norm(h)

    def test_rejects_tiny_basis(self):
        with pytest.raises(ValueError, match="basis_size"):
            build_hamiltonian(QUBIT_A_PARAMS, basis_size=10)


class TestDiagonalize:
    def test_energies_match_flux_grid_oracle(self, qubit_a, qubit_b):
        np.testing.assert_allclose(qubit_a.energies, GRID_ENERGIES_A, atol=1e-6)
        np.testing.assert_allclose(qubit_b.energies, GRID_ENERGIES_B, atol=1e-6)

    def test_qubit_splitting_near_half_ghz(self, qubit_a, qubit_b):
        assert 0.3 < transition(qubit_a, 0, 1) < 0.7
        assert 0.3 < transition(qubit_b, 0, 1) < 0.7

    def test_one_two_transition_near_5_ghz(self, qubit_a):
        assert 4.0 < transition(qubit_a, 1, 2) < 6.0

    def test_detuning_between_qubits_is_248_mhz(self, qubit_a, qubit_b):
        delta = abs(transition(qubit_a, 1, 2) - transition(qubit_b, 1, 2))
        assert delta == pytest.approx(0.248, abs=1e-3)

    def test_matrix_elements_match_grid_oracle(self, qubit_a):
        assert abs(qubit_a.n_op[0, 1]) == pytest.approx(GRID_N01_A, abs=1e-6)
        assert abs(qubit_a.n_op[1, 2]) == pytest.approx(GRID_N12_A, abs=1e-6)
        assert abs(qubit_a.phi_op[0, 1]) == pytest.approx(GRID_PHI01_A, abs=1e-6)
        assert abs(qubit_a.phi_op[1, 2]) == pytest.approx(GRID_PHI12_A, abs=1e-6)

    def test_charge_hierarchy_n12_much_larger_than_n01(self, qubit_a):
        ratio = abs(qubit_a.n_op[1, 2]) / abs(qubit_a.n_op[0, 1])
        assert ratio == pytest.approx(GRID_N12_A / GRID_N01_A, rel=1e-6)
        assert ratio > 4.0

    def test_harmonic_charge_operator_is_single_ladder(self):
        sys = diagonalize(FluxoniumParams(0.5, 1.0, 0.0, 0.0), n_keep=5, basis_size=40)
        off_first = np.diag(sys.n_op, 1)
        mask = np.ones_like(sys.n_op, dtype=bool)
        np.fill_diagonal(mask[:, 1:], False)
        np.fill_diagonal(mask[1:, :], False)
        assert np.all(np.abs(off_first) > 1e-3)
        assert np.max(np.abs(sys.n_op[mask])) < 1e-10

    def test_operators_hermitian(self, qubit_a):
        for op in (qubit_a.n_op, qubit_a.phi_op):
            assert np.linalg.norm(op - op.conj().T) <= 1e-12 * np.linalg.norm(op)

    def test_commutator_identity_links_charge_and_flux_elements(self, qubit_a, qubit_b):
        # w_if * |phi_if| = 8 E_C * |n_if| for every pair of levels
        for sys in (qubit_a, qubit_b):
            e_c = sys.params.e_c
            for i in range(sys.n_keep):
                for f in range(sys.n_keep):
                    if i == f:
                        continue
                    lhs = abs(transition(sys, i, f)) * abs(sys.phi_op[i, f])
                    rhs = 8.0 * e_c * abs(sys.n_op[i, f])
                    if rhs > 1e-12:
                        assert lhs == pytest.approx(rhs, rel=1e-6)

    def test_parity_selection_rule_at_sweet_spot(self, qubit_a):
        # same-parity levels are not connected by charge or flux at phi_ext=pi;
        # the flux diagonal carries the gauge offset and is excluded
        for op in (qubit_a.n_op, qubit_a.phi_op):
            scale = np.max(np.abs(op))
            for i in range(qubit_a.n_keep):
                for f in range(qubit_a.n_keep):
                    if i != f and (i + f) % 2 == 0:
                        assert abs(op[i, f]) < 1e-8 * scale

    def test_basis_convergence_120_to_180(self):
        e120 = diagonalize(QUBIT_A_PARAMS, basis_size=120).energies
        e180 = diagonalize(QUBIT_A_PARAMS, basis_size=180).energies
        assert np.max(np.abs(e120 - e180)) < 1e-9

    def test_runs_are_bit_reproducible(self):
        first = diagonalize(QUBIT_A_PARAMS)
        second = diagonalize(QUBIT_A_PARAMS)
        assert np.array_equal(first.n_op, second.n_op)
        assert np.array_equal(first.phi_op, second.phi_op)

    def test_rejects_insufficient_convergence_margin(self):
        with pytest.raises(ValueError, match="n_keep"):
            diagonalize(QUBIT_A_PARAMS, n_keep=10, basis_size=24)

    def test_unconverged_basis_raises(self):
        with pytest.raises(ConvergenceError):
            diagonalize(QUBIT_A_PARAMS, n_keep=5, basis_size=20)


class TestTransition:
    def test_same_level_is_zero(self, qubit_a):
        assert transition(qubit_a, 0, 0) == 0.0

    def test_antisymmetric(self, qubit_a):
        assert transition(qubit_a, 0, 2) == -transition(qubit_a, 2, 0)

    def test_out_of_range_raises(self, qubit_a):
        with pytest.raises(IndexError):
            transition(qubit_a, 0, 5)


class TestElementConversions:
    def test_capacitance_round_trip(self):
        assert charging_energy_ghz(CAP_FOR_1P5_GHZ_FF) == pytest.approx(1.5, rel=1e-9)

    def test_inductance_round_trip(self):
        assert inductive_energy_ghz(IND_FOR_1_GHZ_NH) == pytest.approx(1.0, rel=1e-9)

    def test_doubling_capacitance_halves_charging_energy(self):
        assert charging_energy_ghz(20.0) == pytest.approx(charging_energy_ghz(10.0) / 2.0, rel=1e-14)

    def test_large_capacitance_limit(self):
        values = [charging_energy_ghz(c) for c in (10.0, 100.0, 1000.0, 10000.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-2

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            charging_energy_ghz(0.0)
        with pytest.raises(ValueError):
            inductive_energy_ghz(-1.0)
