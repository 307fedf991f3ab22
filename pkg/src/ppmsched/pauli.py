"""Signed Pauli strings over GF(2) symplectic bit-vectors.

An n-qubit Pauli operator is stored as two n-bit integers ``x_bits`` and
``z_bits`` (bit j belongs to qubit j) plus a global phase exponent k, the
operator being

    i^k * (L_0 tensor L_1 tensor ... tensor L_{n-1})

where the literal letter on qubit j is selected by its bit pair:

    (x, z) = (0, 0) -> I    (1, 0) -> X    (0, 1) -> Z    (1, 1) -> Y

Phases follow the standard convention XZ = -iY. Commutation is the GF(2)
symplectic product of the bit-vectors and never depends on phases. Integers
double as dense bit-vectors here because XOR/AND/popcount over them dominate
every inner loop of the partitioners.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, NonCommutingError

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {bits: letter for letter, bits in _LETTER_TO_BITS.items()}
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class PauliString:
    """Immutable signed Pauli operator on ``n_qubits`` qubits."""

    n_qubits: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise ValueError(f"negative qubit count {self.n_qubits}")
        limit = 1 << self.n_qubits
        if not (0 <= self.x_bits < limit and 0 <= self.z_bits < limit):
            raise ValueError("bit-vector exceeds the declared qubit count")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def from_letters(cls, text: str, phase_exp: int = 0) -> "PauliString":
        """Build from letters with an optional +/- sign prefix, e.g. ``-XIZY``."""
        text = text.strip()
        if text.startswith("+"):
            text = text[1:]
        elif text.startswith("-"):
            phase_exp += 2
            text = text[1:]
        x = z = 0
        for j, letter in enumerate(text):
            try:
                xb, zb = _LETTER_TO_BITS[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            x |= xb << j
            z |= zb << j
        return cls(len(text), x, z, phase_exp)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str, phase_exp: int = 0) -> "PauliString":
        """A single non-identity letter at ``qubit``, identity elsewhere."""
        if not 0 <= qubit < n_qubits:
            raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
        xb, zb = _LETTER_TO_BITS[letter]
        return cls(n_qubits, xb << qubit, zb << qubit, phase_exp)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def letter_at(self, qubit: int) -> str:
        return _BITS_TO_LETTER[(self.x_bits >> qubit & 1, self.z_bits >> qubit & 1)]

    def letters(self) -> str:
        return "".join(self.letter_at(j) for j in range(self.n_qubits))

    def weight(self, up_to: int | None = None) -> int:
        """Number of non-identity positions among the first ``up_to`` qubits.

        ``up_to=None`` counts the whole string. Passing the program-qubit
        count restricts the weight to program columns, ignoring any
        resource-state tail.
        """
        support = self.x_bits | self.z_bits
        if up_to is not None:
            support &= (1 << up_to) - 1
        return support.bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def is_hermitian(self) -> bool:
        """True when the global phase is +1 or -1 (a measurable observable)."""
        return self.phase_exp % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian strings."""
        if not self.is_hermitian:
            raise ValueError("string with an imaginary phase has no real sign")
        return 1 if self.phase_exp == 0 else -1

    def unsigned(self) -> "PauliString":
        """Same letters with phase +1."""
        return PauliString(self.n_qubits, self.x_bits, self.z_bits, 0)

    def negated(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x_bits, self.z_bits, self.phase_exp + 2)

    def __str__(self) -> str:
        return _PHASE_PREFIX[self.phase_exp] + self.letters()

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)


def _check_same_size(p: PauliString, q: PauliString) -> None:
    if p.n_qubits != q.n_qubits:
        raise DimensionError(
            f"Pauli strings act on {p.n_qubits} and {q.n_qubits} qubits"
        )


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff p and q commute; the GF(2) symplectic product, phase-blind."""
    _check_same_size(p, q)
    return (
        (p.x_bits & q.z_bits).bit_count() + (p.z_bits & q.x_bits).bit_count()
    ) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Operator product p*q with exact i^k phase tracking.

    Bitwise this is the XOR of the components; the phase is accumulated by
    converting each operand to X^x Z^z form (one factor of i per Y), picking
    up (-1) for every Z-past-X transposition, and converting back.
    """
    _check_same_size(p, q)
    x = p.x_bits ^ q.x_bits
    z = p.z_bits ^ q.z_bits
    phase = (
        p.phase_exp
        + q.phase_exp
        + (p.x_bits & p.z_bits).bit_count()
        + (q.x_bits & q.z_bits).bit_count()
        + 2 * (p.z_bits & q.x_bits).bit_count()
        - (x & z).bit_count()
    ) % 4
    return PauliString(p.n_qubits, x, z, phase)


def multiply_all(strings: Iterable[PauliString], n_qubits: int) -> PauliString:
    """Product of a collection of strings, left to right."""
    acc = PauliString.identity(n_qubits)
    for s in strings:
        acc = multiply(acc, s)
    return acc


def mutually_commuting(strings: Sequence[PauliString]) -> bool:
    return all(
        commutes(strings[i], strings[j])
        for i in range(len(strings))
        for j in range(i + 1, len(strings))
    )


class SymplecticBasis:
    """Reduced row-echelon GF(2) basis of Pauli symplectic vectors.

    Rows pack (x | z) into a single 2n-bit integer. Every row remembers which
    inserted generators XOR together to produce it, so any vector in the span
    can be decomposed back into a product of the original generators - signs
    included, by actually multiplying them out.
    """

    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self._rows: list[int] = []        # decreasing pivot order
        self._witness: list[int] = []     # generator-index masks, parallel to rows
        self._generators: list[PauliString] = []
        # Set when a dependent insert disagrees in sign with its witness
        # product: the generated group then contains -identity and every
        # spanned vector occurs with both signs.
        self.sign_inconsistent = False

    def _pack(self, p: PauliString) -> int:
        if p.n_qubits != self.n_qubits:
            raise DimensionError(
                f"string on {p.n_qubits} qubits inserted into basis on {self.n_qubits}"
            )
        return p.x_bits | (p.z_bits << self.n_qubits)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> list[int]:
        return list(self._rows)

    def insert(self, p: PauliString) -> bool:
        """Add a generator; returns False when its vector is already spanned."""
        vec = self._pack(p)
        wit = 1 << len(self._generators)
        self._generators.append(p)
        vec, wit = self._reduce(vec, wit)
        if vec == 0:
            if self.reconstruct(wit ^ (1 << (len(self._generators) - 1))) != p:
                self.sign_inconsistent = True
            return False
        pivot = vec.bit_length()
        pos = 0
        while pos < len(self._rows) and self._rows[pos].bit_length() > pivot:
            pos += 1
        self._rows.insert(pos, vec)
        self._witness.insert(pos, wit)
        # back-eliminate to keep rows fully reduced
        pivot_bit = 1 << (pivot - 1)
        for r in range(pos):
            if self._rows[r] & pivot_bit:
                self._rows[r] ^= vec
                self._witness[r] ^= wit
        return True

    def decompose(self, p: PauliString) -> int | None:
        """Mask over inserted generators whose XOR matches p's bits, else None."""
        vec, wit = self._reduce(self._pack(p), 0)
        return wit if vec == 0 else None

    def reconstruct(self, witness_mask: int) -> PauliString:
        """Signed product of the inserted generators selected by the mask."""
        return multiply_all(
            (self._generators[i] for i in iter_bits(witness_mask)), self.n_qubits
        )

    def _reduce(self, vec: int, wit: int) -> tuple[int, int]:
        for row, row_wit in zip(self._rows, self._witness):
            if vec & (1 << (row.bit_length() - 1)):
                vec ^= row
                wit ^= row_wit
        return vec, wit


def span_equal(a: Sequence[PauliString], b: Sequence[PauliString]) -> bool:
    """Whether two commuting generator lists generate the same signed group.

    True iff the GF(2) spans of the symplectic vectors coincide and every
    generator of ``b``, rebuilt as the product of its decomposition over
    ``a``, reproduces ``b``'s phase exactly. For commuting Hermitian inputs
    that phase agreement is a +/-1 sign check.
    """
    for name, group in (("first", a), ("second", b)):
        if not mutually_commuting(group):
            raise NonCommutingError(f"{name} generator list is not mutually commuting")
    n_values = {p.n_qubits for p in a} | {p.n_qubits for p in b}
    if len(n_values) > 1:
        raise DimensionError(f"mixed qubit counts {sorted(n_values)}")
    if not n_values:
        return True
    n = n_values.pop()

    basis_a = SymplecticBasis(n)
    for p in a:
        basis_a.insert(p)
    basis_b = SymplecticBasis(n)
    for q in b:
        basis_b.insert(q)
    if basis_a.rank != basis_b.rank:
        return False
    # A sign-inconsistent list generates -identity, doubling the group; both
    # sides must agree on that before signs can be compared at all.
    if basis_a.sign_inconsistent != basis_b.sign_inconsistent:
        return False
    # span containment both ways, then sign agreement of b over a
    if any(basis_b.decompose(p) is None for p in a):
        return False
    for q in b:
        wit = basis_a.decompose(q)
        if wit is None:
            return False
        phase_gap = (basis_a.reconstruct(wit).phase_exp - q.phase_exp) % 4
        if phase_gap == 0:
            continue
        if phase_gap == 2 and basis_a.sign_inconsistent:
            continue
        return False
    return True
