"""Depth-reduction heuristics and the strategy driver.

Two complementary moves shrink the hardware-limited depth of a measurement
sequence without changing its semantics:

* *Clique reshuffling* sweeps the sequence and swaps adjacent commuting
  pairs at random. Anticommuting pairs never cross, so every reordering is
  equivalent; regrouping a reshuffled order can land on fewer groups.
* *Generator restructuring* rewrites one mutually commuting group as an
  equivalent generating set: replacing a member P_i by P_i*P_j cancels the
  letters they share, relieving overloaded columns. Each member may take
  part in at most one replacement, in either role, which caps every
  resource column's Z demand at two - one budget's worth on surface-code
  defaults. Multipliers are always original, untouched members.

The driver evaluates candidate orders (the original plus a chain of
reshuffles), optionally restructures every clique of each candidate, maps
each result with the configured partitioner, and keeps the shallowest
outcome. The original un-restructured order is always a candidate, so the
combined strategy can never lose to the baseline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NonCommutingError, SizeLimitError, ValidationError
from .grouping import (
    Grouping,
    GroupingMetrics,
    PortBudget,
    _DemandTracker,
    clique_then_split,
    greedy_cliques,
    hw_greedy,
    metrics,
)
from .ir import PpmCircuit
from .pauli import PauliString, commutes, iter_bits, multiply, mutually_commuting

STRATEGIES = ("baseline", "greedy-restructure", "reshuffle", "combined")
MAPPERS = ("hw-greedy", "clique-split")


@dataclass(frozen=True, slots=True)
class StrategyConfig:
    strategy: str = "combined"
    passes: int = 3
    seed: int = 0
    budget: PortBudget = field(default_factory=PortBudget.surface_code)
    mapper: str = "hw-greedy"
    chain_passes: bool = True  # False samples each pass from the original order

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValidationError(f"unknown strategy {self.strategy!r}")
        if self.mapper not in MAPPERS:
            raise ValidationError(f"unknown mapper {self.mapper!r}")
        if self.passes < 0:
            raise ValidationError("passes must be non-negative")


@dataclass(frozen=True, slots=True)
class RestructurePlan:
    """(target, multiplier) index pairs applied within one clique."""

    moves: tuple[tuple[int, int], ...]

    def __post_init__(self):
        used = [i for move in self.moves for i in move]
        if len(used) != len(set(used)):
            raise ValidationError("each member may appear in at most one move")


def reshuffle_pass(
    seq: Sequence[PauliString], rng: np.random.Generator
) -> list[PauliString]:
    """One left-to-right sweep of probability-1/2 commuting adjacent swaps.

    Decisions are drawn from ``rng`` in index order, one per commuting pair,
    so a fixed generator state makes the sweep reproducible. Anticommuting
    neighbours keep their relative order, which preserves semantics.
    """
    out = list(seq)
    for i in range(len(out) - 1):
        if commutes(out[i], out[i + 1]) and rng.integers(2) == 1:
            out[i], out[i + 1] = out[i + 1], out[i]
    return out


def _excess_masks(
    dx: list[int], dz: list[int], budget: PortBudget
) -> tuple[int, int, int, int]:
    """Bitmasks of overloaded (>b) and saturated (>=b) columns per type."""
    over_x = at_x = over_z = at_z = 0
    for q, d in enumerate(dx):
        if d > budget.bx:
            over_x |= 1 << q
        if d >= budget.bx:
            at_x |= 1 << q
    for q, d in enumerate(dz):
        if d > budget.bz:
            over_z |= 1 << q
        if d >= budget.bz:
            at_z |= 1 << q
    return over_x, at_x, over_z, at_z


def restructure_clique(
    clique: Sequence[PauliString], budget: PortBudget
) -> tuple[list[PauliString], RestructurePlan]:
    """Greedily rewrite a commuting group to relieve overloaded columns.

    The objective is the total excess E = sum_q max(0, dx(q)-bx) +
    max(0, dz(q)-bz) over all columns. Each step scans every legal move
    (i, j) - both members untouched so far - that replaces member i with
    member_i * member_j, and applies the move with the largest strict drop
    in E; ties prefer the larger total-weight drop, then the smallest (i, j).
    The loop stops when no move strictly decreases E, so residual excess is
    possible. The output generates the same signed group and stays mutually
    commuting.
    """
    members = list(clique)
    if not mutually_commuting(members):
        raise NonCommutingError("restructuring needs a mutually commuting group")
    if len(members) < 2:
        return members, RestructurePlan(())
    n = members[0].n_qubits

    dx = [0] * n
    dz = [0] * n
    for p in members:
        for q in iter_bits(p.x_bits):
            dx[q] += 1
        for q in iter_bits(p.z_bits):
            dz[q] += 1

    untouched = list(range(len(members)))
    moves: list[tuple[int, int]] = []

    while True:
        over_x, at_x, over_z, at_z = _excess_masks(dx, dz, budget)
        if not over_x and not over_z:
            break
        best_key: tuple[int, int] | None = None
        best_move: tuple[int, int] | None = None
        for i in untouched:
            xi, zi = members[i].x_bits, members[i].z_bits
            wi = (xi | zi).bit_count()
            for j in untouched:
                if j == i:
                    continue
                xj, zj = members[j].x_bits, members[j].z_bits
                delta = (
                    -(xi & xj & over_x).bit_count()
                    + (xj & ~xi & at_x).bit_count()
                    - (zi & zj & over_z).bit_count()
                    + (zj & ~zi & at_z).bit_count()
                )
                if delta >= 0:
                    continue
                w_new = ((xi ^ xj) | (zi ^ zj)).bit_count()
                key = (delta, w_new - wi)
                if best_key is None or key < best_key:
                    best_key = key
                    best_move = (i, j)
        if best_move is None:
            break
        i, j = best_move
        target, multiplier = members[i], members[j]
        replacement = multiply(target, multiplier)
        for q in iter_bits(multiplier.x_bits):
            dx[q] += 1 if replacement.x_bits >> q & 1 else -1
        for q in iter_bits(multiplier.z_bits):
            dz[q] += 1 if replacement.z_bits >> q & 1 else -1
        members[i] = replacement
        untouched.remove(i)
        untouched.remove(j)
        moves.append((i, j))
        if len(untouched) < 2:
            break

    return members, RestructurePlan(tuple(moves))


def _orientated_matchings(indices: tuple[int, ...]) -> Iterable[tuple[tuple[int, int], ...]]:
    """All plans: partial matchings with a chosen (target, multiplier) order."""
    if len(indices) < 2:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    # plans that leave `first` untouched
    for plan in _orientated_matchings(rest):
        yield plan
    # plans that pair `first` with some other member, in either role
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for plan in _orientated_matchings(remaining):
            yield ((first, partner),) + plan
            yield ((partner, first),) + plan


def brute_force_restructure(
    clique: Sequence[PauliString], budget: PortBudget
) -> int:
    """Minimal hardware depth over every plan and every member ordering.

    Exhaustive test oracle; refuses cliques larger than 6 because the plan
    and permutation spaces explode combinatorially.
    """
    members = list(clique)
    if len(members) > 6:
        raise SizeLimitError("brute-force restructuring is capped at 6 members")
    if not mutually_commuting(members):
        raise NonCommutingError("brute force needs a mutually commuting group")
    if not members:
        return 0
    n = members[0].n_qubits

    variants: list[list[PauliString]] = []
    for plan in _orientated_matchings(tuple(range(len(members)))):
        variant = list(members)
        for i, j in plan:
            variant[i] = multiply(members[i], members[j])
        variants.append(variant)

    # A variant fitting one group in full is depth 1 for any ordering.
    tracker = _DemandTracker(n, budget)
    for variant in variants:
        if _fits_single(variant, tracker):
            return 1

    best = len(members)
    for variant in variants:
        floor_hit = False
        for order in itertools.permutations(variant):
            depth = hw_greedy(order, budget).depth
            if depth < best:
                best = depth
                if best <= 2:
                    floor_hit = True
                    break
        if floor_hit:
            break
    return best


def _fits_single(variant: list[PauliString], tracker: _DemandTracker) -> bool:
    tracker.clear()
    for p in variant:
        if not tracker.fits(p):
            return False
        tracker.add(p)
    return True


def _mapper(cfg: StrategyConfig):
    if cfg.mapper == "hw-greedy":
        return lambda seq: hw_greedy(seq, cfg.budget)
    return lambda seq: clique_then_split(seq, cfg.budget)


def _restructured_sequence(
    seq: list[PauliString], budget: PortBudget
) -> list[PauliString]:
    out: list[PauliString] = []
    for clique in greedy_cliques(seq).groups:
        rewritten, _ = restructure_clique([seq[i] for i in clique], budget)
        out.extend(rewritten)
    return out


def _candidate_orders(
    seq: list[PauliString], cfg: StrategyConfig
) -> Iterable[list[PauliString]]:
    yield seq
    if cfg.passes == 0:
        return
    if cfg.chain_passes:
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(cfg.seed)))
        current = seq
        for _ in range(cfg.passes):
            current = reshuffle_pass(current, rng)
            yield current
    else:
        for t in range(cfg.passes):
            rng = np.random.Generator(
                np.random.Philox(np.random.SeedSequence((cfg.seed, t)))
            )
            yield reshuffle_pass(seq, rng)


def run_strategy(
    circuit: PpmCircuit, cfg: StrategyConfig
) -> tuple[Grouping, list[PauliString], GroupingMetrics]:
    """Schedule a measurement circuit and return the best grouping found.

    Returns the grouping, the working sequence its indices refer to, and
    the depth/weight metrics of that sequence.
    """
    seq0 = circuit.paulis()
    if cfg.strategy == "baseline":
        grouping = clique_then_split(seq0, cfg.budget)
        return grouping, seq0, metrics(circuit, grouping, seq0)

    mapper = _mapper(cfg)
    restructure = cfg.strategy in ("greedy-restructure", "combined")
    if cfg.strategy == "greedy-restructure":
        candidates: Iterable[list[PauliString]] = [seq0]
    else:
        candidates = _candidate_orders(seq0, cfg)

    best: tuple[Grouping, list[PauliString]] | None = None
    for candidate in candidates:
        grouping = mapper(candidate)
        chosen = (grouping, candidate)
        if restructure:
            rewritten = _restructured_sequence(candidate, cfg.budget)
            regrouped = mapper(rewritten)
            if regrouped.depth < grouping.depth:
                chosen = (regrouped, rewritten)
        if best is None or chosen[0].depth < best[0].depth:
            best = chosen
    assert best is not None
    grouping, seq = best
    return grouping, seq, metrics(circuit, grouping, seq)
