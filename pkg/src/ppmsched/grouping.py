"""Port accounting and the greedy partitioners.

A measurement touching qubit q needs an X-type port (letter X), a Z-type
port (letter Z), or both (letter Y). Hardware exposes a fixed number of
simultaneous ports of each type per qubit - two of each on a surface-code
patch - so a mutually commuting group is executable in one step only while
every column's demand stays within the :class:`PortBudget`.

Three partitioners, all left-to-right and order preserving:

* :func:`greedy_cliques` - split only on anticommutation. Greedy is optimal
  in group count for a fixed order because group feasibility is hereditary.
* :func:`hw_greedy` - split on anticommutation or on either port budget.
* :func:`clique_then_split` - form commuting cliques first, then split each
  clique by ports independently; clique boundaries are never re-opened, so
  this can be deeper than hw_greedy on the same order. This is the
  non-reordering comparison baseline.

Budgets apply to program and resource columns alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, ValidationError
from .ir import PpmCircuit
from .pauli import PauliString, commutes, iter_bits


@dataclass(frozen=True, slots=True)
class PortBudget:
    """Per-qubit maxima for simultaneous X-type and Z-type port use."""

    bx: int | float
    bz: int | float

    def __post_init__(self):
        if self.bx < 1 or self.bz < 1:
            raise ValidationError(f"port budgets must be at least 1, got {self}")

    @classmethod
    def surface_code(cls) -> "PortBudget":
        return cls(2, 2)

    @classmethod
    def unlimited(cls) -> "PortBudget":
        return cls(float("inf"), float("inf"))


@dataclass(frozen=True, slots=True)
class PortDemand:
    """Per-column simultaneous port counts for a set of strings."""

    dx: tuple[int, ...]
    dz: tuple[int, ...]

    def fits(self, budget: PortBudget) -> bool:
        return all(d <= budget.bx for d in self.dx) and all(
            d <= budget.bz for d in self.dz
        )


@dataclass(frozen=True, slots=True)
class Grouping:
    """Ordered partition of sequence positions into executable groups."""

    groups: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.groups)

    def all_indices(self) -> list[int]:
        return [i for group in self.groups for i in group]


@dataclass(frozen=True, slots=True)
class GroupingMetrics:
    depth: int
    total_weight_program: int
    total_weight_all: int


def _uniform_width(strings: Sequence[PauliString]) -> int:
    widths = {p.n_qubits for p in strings}
    if len(widths) > 1:
        raise DimensionError(f"mixed string widths {sorted(widths)}")
    return widths.pop() if widths else 0


def port_demand(group: Sequence[PauliString]) -> PortDemand:
    """Column-wise demand sums; a Y letter contributes to both types."""
    n = _uniform_width(group)
    dx = [0] * n
    dz = [0] * n
    for p in group:
        for q in iter_bits(p.x_bits):
            dx[q] += 1
        for q in iter_bits(p.z_bits):
            dz[q] += 1
    return PortDemand(tuple(dx), tuple(dz))


def fits_budget(
    group: Sequence[PauliString], candidate: PauliString, budget: PortBudget
) -> bool:
    """Whether adding ``candidate`` keeps every column within the budget.

    Commutation is not checked here; that is the caller's concern.
    """
    return port_demand(list(group) + [candidate]).fits(budget)


class _DemandTracker:
    """Running per-column demand of an open group."""

    __slots__ = ("bx", "bz", "dx", "dz")

    def __init__(self, n_cols: int, budget: PortBudget):
        self.bx = budget.bx
        self.bz = budget.bz
        self.dx = [0] * n_cols
        self.dz = [0] * n_cols

    def fits(self, p: PauliString) -> bool:
        for q in iter_bits(p.x_bits):
            if self.dx[q] + 1 > self.bx:
                return False
        for q in iter_bits(p.z_bits):
            if self.dz[q] + 1 > self.bz:
                return False
        return True

    def add(self, p: PauliString) -> None:
        for q in iter_bits(p.x_bits):
            self.dx[q] += 1
        for q in iter_bits(p.z_bits):
            self.dz[q] += 1

    def clear(self) -> None:
        for q in range(len(self.dx)):
            self.dx[q] = 0
            self.dz[q] = 0


def greedy_cliques(seq: Sequence[PauliString]) -> Grouping:
    """Partition on anticommutation only (no hardware constraints)."""
    _uniform_width(seq)
    groups: list[tuple[int, ...]] = []
    current: list[int] = []
    members: list[PauliString] = []
    for idx, p in enumerate(seq):
        if members and not all(commutes(p, m) for m in members):
            groups.append(tuple(current))
            current = []
            members = []
        current.append(idx)
        members.append(p)
    if current:
        groups.append(tuple(current))
    return Grouping(tuple(groups))


def hw_greedy(seq: Sequence[PauliString], budget: PortBudget) -> Grouping:
    """Partition on anticommutation or on exhausting either port type."""
    n = _uniform_width(seq)
    tracker = _DemandTracker(n, budget)
    groups: list[tuple[int, ...]] = []
    current: list[int] = []
    members: list[PauliString] = []
    for idx, p in enumerate(seq):
        if members and (
            not all(commutes(p, m) for m in members) or not tracker.fits(p)
        ):
            groups.append(tuple(current))
            current = []
            members = []
            tracker.clear()
        current.append(idx)
        members.append(p)
        tracker.add(p)
    if current:
        groups.append(tuple(current))
    return Grouping(tuple(groups))


def clique_then_split(seq: Sequence[PauliString], budget: PortBudget) -> Grouping:
    """Commuting cliques first, then per-clique port splits, order kept."""
    n = _uniform_width(seq)
    cliques = greedy_cliques(seq)
    tracker = _DemandTracker(n, budget)
    groups: list[tuple[int, ...]] = []
    for clique in cliques.groups:
        tracker.clear()
        current: list[int] = []
        for idx in clique:
            p = seq[idx]
            if current and not tracker.fits(p):
                groups.append(tuple(current))
                current = []
                tracker.clear()
            current.append(idx)
            tracker.add(p)
        if current:
            groups.append(tuple(current))
    return Grouping(tuple(groups))


def baseline_grouping(circuit: PpmCircuit, budget: PortBudget) -> Grouping:
    """The non-reordering baseline applied to a measurement circuit."""
    return clique_then_split(circuit.paulis(), budget)


def metrics(
    circuit: PpmCircuit,
    grouping: Grouping,
    sequence: Sequence[PauliString] | None = None,
) -> GroupingMetrics:
    """Depth and weight totals of a grouped (possibly restructured) sequence."""
    seq = list(sequence) if sequence is not None else circuit.paulis()
    for idx in grouping.all_indices():
        if not 0 <= idx < len(seq):
            raise ValidationError(f"grouping index {idx} out of range")
    n_prog = circuit.n_program_qubits
    return GroupingMetrics(
        depth=grouping.depth,
        total_weight_program=sum(p.weight(n_prog) for p in seq),
        total_weight_all=sum(p.weight() for p in seq),
    )
