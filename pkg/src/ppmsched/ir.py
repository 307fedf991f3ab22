"""Intermediate representations: gate circuits, Pauli rotations, measurements.

Three levels, lowered in order:

* :class:`GateCircuit` - Clifford gates, Z-axis non-Clifford rotations, and
  terminal single-qubit measurements, as parsed from a QASM file.
* :class:`Ppr` - a Pauli product rotation exp(-i * theta * P) over the
  program qubits.
* :class:`Ppm` / :class:`PpmCircuit` - Pauli product measurements over
  program qubits plus resource-state columns; the unit everything downstream
  schedules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .pauli import PauliString
from .tableau import CliffordGate

ANGLE_TAGS = ("T", "Tdg", "Rz")


@dataclass(frozen=True, slots=True)
class RotationAngle:
    """Rotation angle theta of exp(-i*theta*P), tagged by its origin gate."""

    tag: str
    theta: float

    def __post_init__(self):
        if self.tag not in ANGLE_TAGS:
            raise ValidationError(f"unknown rotation tag {self.tag!r}")
        if self.tag == "T" and self.theta != math.pi / 8:
            raise ValidationError("T carries the fixed angle pi/8")
        if self.tag == "Tdg" and self.theta != -math.pi / 8:
            raise ValidationError("Tdg carries the fixed angle -pi/8")
        if not math.isfinite(self.theta):
            raise ValidationError(f"non-finite rotation angle {self.theta}")

    @classmethod
    def t(cls) -> "RotationAngle":
        return cls("T", math.pi / 8)

    @classmethod
    def tdg(cls) -> "RotationAngle":
        return cls("Tdg", -math.pi / 8)

    @classmethod
    def rz(cls, theta: float) -> "RotationAngle":
        """theta is already halved relative to the rz(lambda) gate argument."""
        return cls("Rz", theta)

    def negated(self) -> "RotationAngle":
        if self.tag == "T":
            return self.tdg()
        if self.tag == "Tdg":
            return self.t()
        return self.rz(-self.theta)


@dataclass(frozen=True, slots=True)
class NonCliffordRotation:
    """Gate-level rotation exp(-i*theta*Z) on a single qubit."""

    qubit: int
    angle: RotationAngle


@dataclass(frozen=True, slots=True)
class Measure:
    qubit: int


GateOp = CliffordGate | NonCliffordRotation | Measure


@dataclass(frozen=True, slots=True)
class GateCircuit:
    n_qubits: int
    ops: tuple[GateOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if isinstance(op, CliffordGate):
                targets = op.targets
            else:
                targets = (op.qubit,)
            for t in targets:
                if not 0 <= t < self.n_qubits:
                    raise ValidationError(
                        f"qubit {t} out of range for {self.n_qubits} declared qubits"
                    )


@dataclass(frozen=True, slots=True)
class Ppr:
    """Pauli product rotation. Signs live in the angle, not the operator."""

    pauli: PauliString
    angle: RotationAngle

    def __post_init__(self):
        if self.pauli.is_identity:
            raise ValidationError("rotation about the identity is a global phase")
        if self.pauli.phase_exp != 0:
            raise ValidationError(
                "rotation operators are stored unsigned; fold the sign into the angle"
            )


@dataclass(frozen=True, slots=True)
class Ppm:
    """Pauli product measurement over program + resource columns.

    ``resource_index`` marks rotation-derived measurements, which consume one
    resource state via a Z on their own resource column. Terminal
    measurements carry no resource index.
    """

    pauli: PauliString
    resource_index: int | None = None

    def __post_init__(self):
        if not self.pauli.is_hermitian:
            raise ValidationError("a measurement operator must be Hermitian (+/- sign)")


@dataclass(frozen=True, slots=True)
class PpmCircuit:
    n_program_qubits: int
    n_resource_qubits: int
    ppms: tuple[Ppm, ...]

    def __post_init__(self):
        object.__setattr__(self, "ppms", tuple(self.ppms))
        n_total = self.n_program_qubits + self.n_resource_qubits
        tail_mask = ((1 << n_total) - 1) ^ ((1 << self.n_program_qubits) - 1)
        seen: set[int] = set()
        for k, ppm in enumerate(self.ppms):
            p = ppm.pauli
            if p.n_qubits != n_total:
                raise ValidationError(
                    f"ppm {k} acts on {p.n_qubits} qubits, circuit declares {n_total}"
                )
            if ppm.resource_index is None:
                if (p.x_bits | p.z_bits) & tail_mask:
                    raise ValidationError(
                        f"ppm {k} has no resource index but touches resource columns"
                    )
                continue
            r = ppm.resource_index
            if not 0 <= r < self.n_resource_qubits:
                raise ValidationError(f"ppm {k} resource index {r} out of range")
            if r in seen:
                raise ValidationError(f"resource index {r} used twice")
            seen.add(r)
            col = 1 << (self.n_program_qubits + r)
            if p.x_bits & tail_mask or (p.z_bits & tail_mask) != col:
                raise ValidationError(
                    f"ppm {k} must have exactly one Z on its own resource column"
                )
        if seen != set(range(self.n_resource_qubits)):
            raise ValidationError("resource indices must be dense in [0, n_resource)")

    def paulis(self) -> list[PauliString]:
        """The scheduling sequence: one signed string per measurement."""
        return [ppm.pauli for ppm in self.ppms]

    def __len__(self) -> int:
        return len(self.ppms)
