"""Clifford frames as tableaux of Pauli images.

A :class:`CliffordTableau` represents an accumulated Clifford circuit C by
storing the forward images

    row j       = C X_j C!         (dagger written ! here)
    row n + j   = C Z_j C!

as signed Pauli strings. Appending a gate g - later in time, so the frame
becomes g*C - rewrites every row locally at g's target columns using the
standard conjugation rules (H: X<->Z, S: X->Y, CX: X_c->X_cX_t, ...).

:meth:`conjugate` pulls an operator the other way through the frame and
returns C! P C. That direction is the one needed to move a rotation past
the Cliffords that come after it: R_P * C = C * R_{C! P C}. Because
conjugation preserves the symplectic pairing, the coefficients of P over
the stored rows are plain symplectic products, and the sign drops out of
multiplying the selected rows together.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, ValidationError
from .pauli import PauliString

ONE_QUBIT_KINDS = frozenset({"H", "S", "Sdg", "X", "Y", "Z"})
TWO_QUBIT_KINDS = frozenset({"CX", "CZ", "SWAP"})

_INVERSE_KIND = {"S": "Sdg", "Sdg": "S"}


@dataclass(frozen=True, slots=True)
class CliffordGate:
    """One gate from the fixed Clifford set, with its target qubits."""

    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        if self.kind in ONE_QUBIT_KINDS:
            arity = 1
        elif self.kind in TWO_QUBIT_KINDS:
            arity = 2
        else:
            raise ValidationError(f"unknown Clifford gate kind {self.kind!r}")
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != arity:
            raise ValidationError(
                f"{self.kind} takes {arity} target(s), got {len(self.targets)}"
            )
        if any(t < 0 for t in self.targets):
            raise ValidationError(f"negative target in {self.targets}")
        if arity == 2 and self.targets[0] == self.targets[1]:
            raise ValidationError(f"{self.kind} targets must be distinct")

    def inverse(self) -> "CliffordGate":
        return CliffordGate(_INVERSE_KIND.get(self.kind, self.kind), self.targets)


class CliffordTableau:
    """Value-semantic Clifford frame; ``appended`` returns a new tableau."""

    __slots__ = ("n_qubits", "_x", "_z", "_phase")

    def __init__(self, n_qubits: int):
        if n_qubits < 1:
            raise ValueError(f"tableau needs at least one qubit, got {n_qubits}")
        self.n_qubits = n_qubits
        # rows 0..n-1: images of X_j; rows n..2n-1: images of Z_j
        self._x = [1 << j for j in range(n_qubits)] + [0] * n_qubits
        self._z = [0] * n_qubits + [1 << j for j in range(n_qubits)]
        self._phase = [0] * (2 * n_qubits)

    @classmethod
    def identity(cls, n_qubits: int) -> "CliffordTableau":
        return cls(n_qubits)

    def copy(self) -> "CliffordTableau":
        dup = CliffordTableau.__new__(CliffordTableau)
        dup.n_qubits = self.n_qubits
        dup._x = list(self._x)
        dup._z = list(self._z)
        dup._phase = list(self._phase)
        return dup

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (
            self.n_qubits == other.n_qubits
            and self._x == other._x
            and self._z == other._z
            and self._phase == other._phase
        )

    def image_of_x(self, qubit: int) -> PauliString:
        """C X_j C-dagger as a signed Pauli string."""
        return PauliString(
            self.n_qubits, self._x[qubit], self._z[qubit], self._phase[qubit]
        )

    def image_of_z(self, qubit: int) -> PauliString:
        r = self.n_qubits + qubit
        return PauliString(self.n_qubits, self._x[r], self._z[r], self._phase[r])

    # ------------------------------------------------------------------
    # Gate application
    # ------------------------------------------------------------------

    def appended(self, gate: CliffordGate) -> "CliffordTableau":
        """Tableau of (gate applied after this frame's circuit)."""
        if any(t >= self.n_qubits for t in gate.targets):
            raise ValidationError(
                f"gate target {gate.targets} out of range for {self.n_qubits} qubits"
            )
        out = self.copy()
        out._apply_inplace(gate)
        return out

    def _apply_inplace(self, gate: CliffordGate) -> None:
        xs, zs, phases = self._x, self._z, self._phase
        kind = gate.kind
        if kind in ONE_QUBIT_KINDS:
            mask = 1 << gate.targets[0]
            for r in range(len(xs)):
                x, z = xs[r], zs[r]
                if kind == "H":
                    if x & z & mask:
                        phases[r] = (phases[r] + 2) % 4
                    xb, zb = x & mask, z & mask
                    xs[r] = (x & ~mask) | zb
                    zs[r] = (z & ~mask) | xb
                elif kind == "S":
                    if x & z & mask:
                        phases[r] = (phases[r] + 2) % 4
                    zs[r] = z ^ (x & mask)
                elif kind == "Sdg":
                    if x & mask & ~z:
                        phases[r] = (phases[r] + 2) % 4
                    zs[r] = z ^ (x & mask)
                elif kind == "X":
                    if z & mask:
                        phases[r] = (phases[r] + 2) % 4
                elif kind == "Y":
                    if (x ^ z) & mask:
                        phases[r] = (phases[r] + 2) % 4
                else:  # Z
                    if x & mask:
                        phases[r] = (phases[r] + 2) % 4
            return

        c, t = gate.targets
        mc, mt = 1 << c, 1 << t
        for r in range(len(xs)):
            x, z = xs[r], zs[r]
            xc, xt = bool(x & mc), bool(x & mt)
            zc, zt = bool(z & mc), bool(z & mt)
            if kind == "CX":
                if xc and zt and (xt == zc):
                    phases[r] = (phases[r] + 2) % 4
                if xc:
                    x ^= mt
                if zt:
                    z ^= mc
            elif kind == "CZ":
                if xc and xt and (zc != zt):
                    phases[r] = (phases[r] + 2) % 4
                if xc:
                    z ^= mt
                if xt:
                    z ^= mc
            else:  # SWAP
                if xc != xt:
                    x ^= mc | mt
                if zc != zt:
                    z ^= mc | mt
            xs[r], zs[r] = x, z

    # ------------------------------------------------------------------
    # Conjugation
    # ------------------------------------------------------------------

    def conjugate(self, p: PauliString) -> PauliString:
        """Pull ``p`` back through the frame: returns C-dagger P C, signed."""
        if p.n_qubits != self.n_qubits:
            raise DimensionError(
                f"operator on {p.n_qubits} qubits, tableau on {self.n_qubits}"
            )
        n = self.n_qubits
        # Coefficient of image_of_x(j) in p is the pairing with image_of_z(j)
        # and vice versa: only the symplectic partner anticommutes.
        a = b = 0
        for j in range(n):
            if self._pairs_with(p, n + j):
                a |= 1 << j
            if self._pairs_with(p, j):
                b |= 1 << j
        # Chain-multiply the selected rows (X-row before Z-row per qubit) to
        # recover the phase of p relative to the row product.
        qx = qz = qp = 0
        for j in range(n):
            if a >> j & 1:
                qx, qz, qp = _mul_bits(qx, qz, qp, self._x[j], self._z[j], self._phase[j])
            if b >> j & 1:
                r = n + j
                qx, qz, qp = _mul_bits(qx, qz, qp, self._x[r], self._z[r], self._phase[r])
        if qx != p.x_bits or qz != p.z_bits:
            raise AssertionError("tableau rows are not a symplectic basis")
        phase = (p.phase_exp - qp - (a & b).bit_count()) % 4
        return PauliString(n, a, b, phase)

    def _pairs_with(self, p: PauliString, row: int) -> bool:
        return (
            (p.x_bits & self._z[row]).bit_count()
            + (p.z_bits & self._x[row]).bit_count()
        ) % 2 == 1

    def is_symplectic(self) -> bool:
        """Check the pairing structure of all rows (a validity invariant)."""
        n = self.n_qubits
        for i in range(2 * n):
            for j in range(i, 2 * n):
                anti = (
                    (self._x[i] & self._z[j]).bit_count()
                    + (self._z[i] & self._x[j]).bit_count()
                ) % 2
                expected = 1 if abs(i - j) == n else 0
                if anti != expected:
                    return False
        return True


def _mul_bits(
    x1: int, z1: int, p1: int, x2: int, z2: int, p2: int
) -> tuple[int, int, int]:
    """Raw-integer version of Pauli multiplication (see pauli.multiply)."""
    x = x1 ^ x2
    z = z1 ^ z2
    phase = (
        p1
        + p2
        + (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x & z).bit_count()
    ) % 4
    return x, z, phase
