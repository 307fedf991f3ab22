"""Lowering gate circuits to Pauli product rotations and measurements.

Scanning the circuit in time order with an accumulated Clifford frame C:
a Clifford gate grows the frame, a rotation about Z_q is re-expressed as a
rotation about C!Z_qC emitted *before* the frame (R_P C = C R_{C!PC}), and a
terminal measurement of Z_q becomes a measurement of C!Z_qC. The frame
itself is never executed; it is returned so callers can verify equivalence
or absorb it into whatever consumes the program.

Each rotation then consumes one resource state: the rotation operator P
becomes the joint measurement P (x) Z on a fresh resource column.
"""

from __future__ import annotations

from .errors import UnsupportedError
from .ir import GateCircuit, Measure, NonCliffordRotation, Ppm, PpmCircuit, Ppr
from .pauli import PauliString
from .tableau import CliffordGate, CliffordTableau


def compile_to_pprs(
    circuit: GateCircuit,
) -> tuple[list[Ppr], CliffordTableau, list[PauliString]]:
    """Commute all Cliffords to the end of the circuit.

    Returns the emitted rotations (in execution order), the final Clifford
    frame, and the conjugated terminal measurement operators. The original
    unitary equals ``final_clifford ∘ (rotations in emission order)`` up to
    global phase; measurements must form a trailing suffix of the input.
    """
    frame = CliffordTableau.identity(circuit.n_qubits)
    pprs: list[Ppr] = []
    terminal: list[PauliString] = []

    for op in circuit.ops:
        if isinstance(op, Measure):
            z_q = PauliString.single(circuit.n_qubits, op.qubit, "Z")
            terminal.append(frame.conjugate(z_q))
        elif terminal:
            raise UnsupportedError(
                "mid-circuit measurement: measurements must come last"
            )
        elif isinstance(op, CliffordGate):
            frame = frame.appended(op)
        elif isinstance(op, NonCliffordRotation):
            z_q = PauliString.single(circuit.n_qubits, op.qubit, "Z")
            conj = frame.conjugate(z_q)
            angle = op.angle if conj.sign > 0 else op.angle.negated()
            pprs.append(Ppr(conj.unsigned(), angle))
        else:
            raise TypeError(f"unknown op {op!r}")

    return pprs, frame, terminal


def attach_resource_states(
    pprs: list[Ppr],
    terminal: list[PauliString],
    n_program_qubits: int | None = None,
) -> PpmCircuit:
    """Turn rotations into measurements by consuming one resource state each.

    Rotation i becomes the joint measurement of its operator with a Z on
    resource column i; terminal measurement operators follow unchanged, with
    an identity resource tail. The qubit count is inferred from the inputs
    unless given explicitly (required when both lists are empty).
    """
    if n_program_qubits is None:
        if pprs:
            n_program_qubits = pprs[0].pauli.n_qubits
        elif terminal:
            n_program_qubits = terminal[0].n_qubits
        else:
            raise ValueError("cannot infer qubit count from empty inputs")

    n_res = len(pprs)
    n_total = n_program_qubits + n_res
    ppms: list[Ppm] = []
    for i, ppr in enumerate(pprs):
        p = ppr.pauli
        ppms.append(
            Ppm(
                PauliString(n_total, p.x_bits, p.z_bits | (1 << (n_program_qubits + i)), 0),
                resource_index=i,
            )
        )
    for meas in terminal:
        ppms.append(Ppm(PauliString(n_total, meas.x_bits, meas.z_bits, meas.phase_exp)))
    return PpmCircuit(n_program_qubits, n_res, tuple(ppms))
