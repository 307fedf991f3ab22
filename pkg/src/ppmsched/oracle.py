"""Dense-matrix reference implementations for small instances.

Everything here exists to cross-check the bit-level algebra and the
compilation pass on instances small enough for 2^n x 2^n arithmetic. The
hard cap of 10 qubits keeps every call sub-second; it is an argument check,
not a performance guarantee. None of this runs in the optimization path.

Qubit j maps to the j-th Kronecker factor, so qubit 0 is the most
significant bit of the state index.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeLimitError, UnsupportedError, ValidationError
from .ir import GateCircuit, Measure, NonCliffordRotation, Ppr
from .pauli import PauliString
from .tableau import CliffordGate

SIZE_CAP = 10

_I2 = np.eye(2, dtype=complex)
_LETTER_MATRIX = {
    "I": _I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_GATE_MATRIX = {
    "H": _H,
    "S": _S,
    "Sdg": _S.conj().T,
    "X": _LETTER_MATRIX["X"],
    "Y": _LETTER_MATRIX["Y"],
    "Z": _LETTER_MATRIX["Z"],
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def _check_size(n: int) -> None:
    if n > SIZE_CAP:
        raise SizeLimitError(f"{n} qubits exceeds the dense-matrix cap of {SIZE_CAP}")


def pauli_matrix(p: PauliString) -> np.ndarray:
    """2^n x 2^n matrix of the signed Pauli string."""
    _check_size(p.n_qubits)
    m = np.array([[1]], dtype=complex)
    for j in range(p.n_qubits):
        m = np.kron(m, _LETTER_MATRIX[p.letter_at(j)])
    return (1j ** p.phase_exp) * m


def ppr_unitary(r: Ppr) -> np.ndarray:
    """exp(-i*theta*P) = cos(theta)*I - i*sin(theta)*P, exact since P^2 = I."""
    _check_size(r.pauli.n_qubits)
    theta = r.angle.theta
    dim = 1 << r.pauli.n_qubits
    return np.cos(theta) * np.eye(dim, dtype=complex) - 1j * np.sin(theta) * pauli_matrix(
        r.pauli
    )


def embed_gate(u: np.ndarray, qubits: tuple[int, ...], n_qubits: int) -> np.ndarray:
    """Expand a 1- or 2-qubit matrix to the full register."""
    dim = 1 << n_qubits
    k = len(qubits)
    full = np.zeros((dim, dim), dtype=complex)
    # qubit j occupies state-index bit (n-1-j)
    shifts = [n_qubits - 1 - q for q in qubits]
    clear = ~sum(1 << s for s in shifts) & (dim - 1)
    for col in range(dim):
        sub_col = 0
        for pos, s in enumerate(shifts):
            sub_col |= ((col >> s) & 1) << (k - 1 - pos)
        base = col & clear
        for sub_row in range(1 << k):
            amp = u[sub_row, sub_col]
            if amp == 0:
                continue
            row = base
            for pos, s in enumerate(shifts):
                row |= ((sub_row >> (k - 1 - pos)) & 1) << s
            full[row, col] += amp
    return full


def circuit_unitary(circuit: GateCircuit) -> np.ndarray:
    """Ordered product of the gate matrices (time order right to left)."""
    _check_size(circuit.n_qubits)
    dim = 1 << circuit.n_qubits
    u = np.eye(dim, dtype=complex)
    for op in circuit.ops:
        if isinstance(op, Measure):
            raise UnsupportedError("circuit_unitary cannot include measurements")
        if isinstance(op, CliffordGate):
            g = embed_gate(_GATE_MATRIX[op.kind], op.targets, circuit.n_qubits)
        elif isinstance(op, NonCliffordRotation):
            g = ppr_unitary(
                Ppr(PauliString.single(circuit.n_qubits, op.qubit, "Z"), op.angle)
            )
        else:
            raise TypeError(f"unknown op {op!r}")
        u = g @ u
    return u


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """True iff a = lambda*b for some unit scalar, within tol in max norm.

    The scalar is fixed from the largest-magnitude entry of b, which keeps
    the comparison robust against zero entries.
    """
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch {a.shape} vs {b.shape}")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0:
        return bool(np.max(np.abs(a)) <= tol)
    lam = a[idx] / b[idx]
    if abs(lam) == 0:
        return bool(np.max(np.abs(a - b)) <= tol)
    lam /= abs(lam)
    return bool(np.max(np.abs(a - lam * b)) <= tol)
