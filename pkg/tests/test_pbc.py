"""Compilation to rotations/measurements, verified against dense unitaries."""

from __future__ import annotations

import math

import numpy as np
import pytest

from ppmsched import (
    CliffordGate,
    CliffordTableau,
    GateCircuit,
    Measure,
    NonCliffordRotation,
    PauliString,
    Ppr,
    RotationAngle,
    UnsupportedError,
    attach_resource_states,
    commutes,
    compile_to_pprs,
    parse_qasm_subset,
)
from ppmsched.oracle import circuit_unitary, equal_up_to_phase, ppr_unitary

from conftest import rand_clifford_gate, rand_gate_circuit

P = PauliString.from_letters
HEADER = "OPENQASM 2.0;\n"


def recomposed_unitary(circuit: GateCircuit, pprs: list[Ppr]) -> np.ndarray:
    """final Clifford times the emitted rotations, first emitted rightmost."""
    clifford_ops = tuple(op for op in circuit.ops if isinstance(op, CliffordGate))
    u = circuit_unitary(GateCircuit(circuit.n_qubits, clifford_ops))
    for ppr in reversed(pprs):
        u = u @ ppr_unitary(ppr)
    return u


class TestCompileToPprs:
    def test_clifford_only_circuit(self):
        gates = (CliffordGate("H", (0,)), CliffordGate("CX", (0, 1)))
        pprs, frame, terminal = compile_to_pprs(GateCircuit(2, gates))
        assert pprs == []
        assert terminal == []
        expected = CliffordTableau.identity(2)
        for g in gates:
            expected = expected.appended(g)
        assert frame == expected

    def test_lone_t_gate(self):
        circuit = parse_qasm_subset(HEADER + "qreg q[1];\nt q[0];\n")
        pprs, frame, _ = compile_to_pprs(circuit)
        assert pprs == [Ppr(P("Z"), RotationAngle.t())]
        assert frame == CliffordTableau.identity(1)

    def test_hadamard_conjugates_t(self):
        circuit = parse_qasm_subset(HEADER + "qreg q[1];\nh q[0];\nt q[0];\n")
        pprs, frame, _ = compile_to_pprs(circuit)
        assert pprs == [Ppr(P("X"), RotationAngle.t())]
        assert frame == CliffordTableau.identity(1).appended(CliffordGate("H", (0,)))

    def test_sign_folds_into_angle(self):
        # X Z X = -Z, so a T behind an X gate becomes a Tdg rotation about Z
        circuit = GateCircuit(
            1,
            (CliffordGate("X", (0,)), NonCliffordRotation(0, RotationAngle.t())),
        )
        pprs, _, _ = compile_to_pprs(circuit)
        assert pprs == [Ppr(P("Z"), RotationAngle.tdg())]

    def test_ppr_count_matches_rotations(self):
        rng = np.random.default_rng(50)
        for _ in range(30):
            circuit = rand_gate_circuit(rng, int(rng.integers(1, 5)), 25)
            rotations = sum(
                isinstance(op, NonCliffordRotation) for op in circuit.ops
            )
            pprs, _, _ = compile_to_pprs(circuit)
            assert len(pprs) == rotations

    def test_semantic_equivalence_random(self):
        rng = np.random.default_rng(51)
        for _ in range(20):
            n = int(rng.integers(1, 5))
            circuit = rand_gate_circuit(rng, n, 30)
            pprs, _, _ = compile_to_pprs(circuit)
            assert equal_up_to_phase(
                circuit_unitary(circuit), recomposed_unitary(circuit, pprs), 1e-9
            )

    def test_commutation_structure_invariant_under_inverse_pairs(self):
        rng = np.random.default_rng(52)
        for _ in range(20):
            n = 3
            circuit = rand_gate_circuit(rng, n, 15)
            gate = rand_clifford_gate(rng, n)
            where = int(rng.integers(len(circuit.ops) + 1))
            padded = GateCircuit(
                n,
                circuit.ops[:where] + (gate, gate.inverse()) + circuit.ops[where:],
            )
            base, _, _ = compile_to_pprs(circuit)
            alt, _, _ = compile_to_pprs(padded)
            assert len(base) == len(alt)
            for i in range(len(base)):
                for j in range(len(base)):
                    assert commutes(base[i].pauli, base[j].pauli) == commutes(
                        alt[i].pauli, alt[j].pauli
                    )

    def test_terminal_measurements_conjugated(self):
        circuit = GateCircuit(
            1, (CliffordGate("X", (0,)), Measure(0))
        )
        _, _, terminal = compile_to_pprs(circuit)
        assert terminal == [P("-Z")]

    def test_mid_circuit_measurement_rejected(self):
        circuit = GateCircuit(1, (Measure(0), CliffordGate("H", (0,))))
        with pytest.raises(UnsupportedError):
            compile_to_pprs(circuit)

    def test_rz_angle_preserved(self):
        circuit = parse_qasm_subset(HEADER + "qreg q[1];\nrz(pi/2) q[0];\n")
        pprs, _, _ = compile_to_pprs(circuit)
        assert pprs[0].angle.theta == pytest.approx(math.pi / 4)


class TestAttachResourceStates:
    def test_terminals_only(self):
        circuit = attach_resource_states([], [P("ZI"), P("IZ")])
        assert circuit.n_resource_qubits == 0
        assert len(circuit) == 2

    def test_three_rotations_get_dense_tails(self):
        pprs = [
            Ppr(P("XI"), RotationAngle.t()),
            Ppr(P("IZ"), RotationAngle.t()),
            Ppr(P("YY"), RotationAngle.t()),
        ]
        circuit = attach_resource_states(pprs, [])
        assert circuit.n_resource_qubits == 3
        for i, ppm in enumerate(circuit.ppms):
            assert ppm.resource_index == i
            tail = ppm.pauli.z_bits >> circuit.n_program_qubits
            assert tail == 1 << i
            assert ppm.pauli.x_bits >> circuit.n_program_qubits == 0

    def test_weight_grows_by_one(self):
        rng = np.random.default_rng(53)
        for _ in range(100):
            n = int(rng.integers(1, 6))
            circuit = rand_gate_circuit(rng, n, 20)
            pprs, _, terminal = compile_to_pprs(circuit)
            attached = attach_resource_states(pprs, terminal, n)
            for i, ppr in enumerate(pprs):
                assert attached.ppms[i].pauli.weight() == ppr.pauli.weight() + 1

    def test_empty_inputs_need_explicit_width(self):
        with pytest.raises(ValueError):
            attach_resource_states([], [])
        circuit = attach_resource_states([], [], n_program_qubits=3)
        assert circuit.n_program_qubits == 3
        assert len(circuit) == 0

    def test_terminal_signs_preserved(self):
        circuit = attach_resource_states(
            [Ppr(P("X"), RotationAngle.t())], [P("-Z")]
        )
        assert circuit.ppms[1].pauli.phase_exp == 2
