"""Shared randomized-instance helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from ppmsched import (
    CliffordGate,
    GateCircuit,
    NonCliffordRotation,
    PauliString,
    Ppm,
    PpmCircuit,
    RotationAngle,
)

ONE_QUBIT = ("H", "S", "Sdg", "X", "Y", "Z")
TWO_QUBIT = ("CX", "CZ", "SWAP")


def rand_pauli(rng: np.random.Generator, n: int, hermitian: bool = False) -> PauliString:
    phase = int(rng.integers(2)) * 2 if hermitian else int(rng.integers(4))
    return PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), phase)


def rand_clifford_gate(rng: np.random.Generator, n: int) -> CliffordGate:
    if n >= 2 and rng.random() < 0.4:
        a, b = rng.choice(n, size=2, replace=False)
        return CliffordGate(TWO_QUBIT[int(rng.integers(3))], (int(a), int(b)))
    return CliffordGate(ONE_QUBIT[int(rng.integers(6))], (int(rng.integers(n)),))


def rand_gate_circuit(
    rng: np.random.Generator, n: int, n_ops: int, rotation_prob: float = 0.3
) -> GateCircuit:
    ops = []
    for _ in range(n_ops):
        if rng.random() < rotation_prob:
            q = int(rng.integers(n))
            kind = rng.random()
            if kind < 0.4:
                angle = RotationAngle.t()
            elif kind < 0.6:
                angle = RotationAngle.tdg()
            else:
                angle = RotationAngle.rz(float(rng.uniform(-3.0, 3.0)))
            ops.append(NonCliffordRotation(q, angle))
        else:
            ops.append(rand_clifford_gate(rng, n))
    return GateCircuit(n, tuple(ops))


def congested_instance() -> PpmCircuit:
    """Four commuting tailed measurements, three X-ports on qubit 2, one Z.

    Under the surface-code budget the third X forces a second group;
    multiplying the first two members cancels their shared X on qubit 2 and
    the whole group fits in a single step.
    """
    program = ("XIXI", "IXXI", "IIXX", "ZZZZ")
    ppms = []
    for i, letters in enumerate(program):
        p = PauliString.from_letters(letters)
        full = PauliString(8, p.x_bits, p.z_bits | (1 << (4 + i)), 0)
        ppms.append(Ppm(full, resource_index=i))
    return PpmCircuit(4, 4, tuple(ppms))


@pytest.fixture
def fig_instance() -> PpmCircuit:
    return congested_instance()
