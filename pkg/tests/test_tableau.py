"""Tableau conjugation tested against dense-matrix conjugation."""

from __future__ import annotations

import numpy as np
import pytest

from ppmsched import (
    CliffordGate,
    CliffordTableau,
    DimensionError,
    GateCircuit,
    PauliString,
    ValidationError,
    commutes,
)
from ppmsched.oracle import circuit_unitary, pauli_matrix

from conftest import ONE_QUBIT, TWO_QUBIT, rand_clifford_gate, rand_pauli

P = PauliString.from_letters


class TestCliffordGate:
    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            CliffordGate("T", (0,))

    def test_wrong_arity(self):
        with pytest.raises(ValidationError):
            CliffordGate("CX", (0,))
        with pytest.raises(ValidationError):
            CliffordGate("H", (0, 1))

    def test_duplicate_targets(self):
        with pytest.raises(ValidationError):
            CliffordGate("CZ", (1, 1))


class TestIdentityTableau:
    def test_single_qubit(self):
        t = CliffordTableau.identity(1)
        assert t.image_of_x(0) == P("X")
        assert t.image_of_z(0) == P("Z")

    def test_three_qubits(self):
        t = CliffordTableau.identity(3)
        for j in range(3):
            assert t.image_of_x(j) == PauliString.single(3, j, "X")
            assert t.image_of_z(j) == PauliString.single(3, j, "Z")

    def test_identity_law(self):
        rng = np.random.default_rng(30)
        t = CliffordTableau.identity(4)
        for _ in range(50):
            p = rand_pauli(rng, 4)
            assert t.conjugate(p) == p


class TestAppendGate:
    def test_hadamard_exchange(self):
        t = CliffordTableau.identity(1).appended(CliffordGate("H", (0,)))
        assert t.image_of_x(0) == P("Z")
        assert t.image_of_z(0) == P("X")

    def test_phase_gate_action(self):
        t = CliffordTableau.identity(1).appended(CliffordGate("S", (0,)))
        assert t.image_of_x(0) == P("Y")
        assert t.image_of_z(0) == P("Z")

    def test_sdg_action(self):
        t = CliffordTableau.identity(1).appended(CliffordGate("Sdg", (0,)))
        assert t.image_of_x(0) == P("-Y")

    def test_h_then_cx_propagates_z(self):
        """Stored image of Z0 walks through H then CX to X0X1."""
        t = CliffordTableau.identity(2)
        t = t.appended(CliffordGate("H", (0,)))
        t = t.appended(CliffordGate("CX", (0, 1)))
        assert t.image_of_z(0) == P("XX")
        # the images are forward conjugates: C P Cdg
        circuit = GateCircuit(
            2, (CliffordGate("H", (0,)), CliffordGate("CX", (0, 1)))
        )
        c = circuit_unitary(circuit)
        want = c @ pauli_matrix(P("ZI")) @ c.conj().T
        assert np.max(np.abs(pauli_matrix(t.image_of_z(0)) - want)) < 1e-12

    def test_out_of_range_target(self):
        with pytest.raises(ValidationError):
            CliffordTableau.identity(2).appended(CliffordGate("H", (5,)))

    @pytest.mark.parametrize("kind", ONE_QUBIT + TWO_QUBIT)
    def test_gate_inverse_restores_tableau(self, kind):
        rng = np.random.default_rng(31)
        n = 3
        t = CliffordTableau.identity(n)
        for _ in range(8):
            t = t.appended(rand_clifford_gate(rng, n))
        if kind in TWO_QUBIT:
            gate = CliffordGate(kind, (0, 2))
        else:
            gate = CliffordGate(kind, (1,))
        assert t.appended(gate).appended(gate.inverse()) == t

    def test_symplectic_condition_after_many_random_gates(self):
        """The pairing structure survives 10^4 random gate applications."""
        rng = np.random.default_rng(32)
        t = CliffordTableau.identity(4)
        for _ in range(10_000):
            t = t.appended(rand_clifford_gate(rng, 4))
            assert t.is_symplectic()

    def test_forward_images_match_dense(self):
        rng = np.random.default_rng(33)
        for _ in range(30):
            n = int(rng.integers(1, 4))
            gates = [rand_clifford_gate(rng, n) for _ in range(8)]
            t = CliffordTableau.identity(n)
            for g in gates:
                t = t.appended(g)
            c = circuit_unitary(GateCircuit(n, tuple(gates)))
            for j in range(n):
                for image, base in (
                    (t.image_of_x(j), PauliString.single(n, j, "X")),
                    (t.image_of_z(j), PauliString.single(n, j, "Z")),
                ):
                    want = c @ pauli_matrix(base) @ c.conj().T
                    assert np.max(np.abs(pauli_matrix(image) - want)) < 1e-12


class TestConjugate:
    def test_cnot_weight_expansion(self):
        t = CliffordTableau.identity(2).appended(CliffordGate("CX", (0, 1)))
        assert t.conjugate(P("XI")) == P("XX")

    def test_random_word_matches_dense(self):
        """conjugate returns Cdg P C exactly, signs included, up to 5 qubits."""
        rng = np.random.default_rng(34)
        for trial in range(40):
            n = int(rng.integers(1, 6)) if trial else 3
            gates = [rand_clifford_gate(rng, n) for _ in range(10)]
            t = CliffordTableau.identity(n)
            for g in gates:
                t = t.appended(g)
            c = circuit_unitary(GateCircuit(n, tuple(gates)))
            p = rand_pauli(rng, n)
            got = pauli_matrix(t.conjugate(p))
            want = c.conj().T @ pauli_matrix(p) @ c
            assert np.max(np.abs(got - want)) < 1e-12

    def test_preserves_commutation(self):
        rng = np.random.default_rng(35)
        for _ in range(100):
            n = int(rng.integers(2, 5))
            t = CliffordTableau.identity(n)
            for _ in range(12):
                t = t.appended(rand_clifford_gate(rng, n))
            p, q = rand_pauli(rng, n), rand_pauli(rng, n)
            assert commutes(p, q) == commutes(t.conjugate(p), t.conjugate(q))

    def test_hermitian_stays_hermitian(self):
        rng = np.random.default_rng(36)
        t = CliffordTableau.identity(4)
        for _ in range(20):
            t = t.appended(rand_clifford_gate(rng, 4))
        for _ in range(50):
            p = rand_pauli(rng, 4, hermitian=True)
            assert t.conjugate(p).is_hermitian

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            CliffordTableau.identity(2).conjugate(P("XXX"))
