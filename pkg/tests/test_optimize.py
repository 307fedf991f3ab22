"""Reshuffling, generator restructuring and the strategy driver."""

from __future__ import annotations

import numpy as np
import pytest

from ppmsched import (
    NonCommutingError,
    PauliString,
    PortBudget,
    RandomSpec,
    RestructurePlan,
    SizeLimitError,
    StrategyConfig,
    ValidationError,
    baseline_grouping,
    brute_force_restructure,
    commutes,
    gen_random_ppms,
    greedy_cliques,
    hw_greedy,
    mutually_commuting,
    port_demand,
    reshuffle_pass,
    restructure_clique,
    run_strategy,
    span_equal,
)

from conftest import rand_pauli

P = PauliString.from_letters
SURFACE = PortBudget(2, 2)


class _ForcedRng:
    """Stub generator whose coin always lands on the given face."""

    def __init__(self, value: int):
        self.value = value

    def integers(self, _high):
        return self.value


def harvest_cliques(
    n_qubits: int,
    density: float,
    count: int,
    max_size: int,
    attach: bool = True,
    min_size: int = 2,
    start_seed: int = 0,
):
    cliques = []
    seed = start_seed
    while len(cliques) < count:
        circuit = gen_random_ppms(
            RandomSpec(
                n_qubits=n_qubits,
                n_ppms=40,
                density=density,
                seed=seed,
                attach_resources=attach,
            )
        )
        seq = circuit.paulis()
        for group in greedy_cliques(seq).groups:
            if len(group) >= min_size and len(cliques) < count:
                cliques.append([seq[i] for i in group[:max_size]])
        seed += 1
    return cliques


class TestReshufflePass:
    def test_anticommuting_neighbours_never_move(self):
        seq = [P("X"), P("Z"), P("X"), P("Z")]
        assert reshuffle_pass(seq, _ForcedRng(1)) == seq

    def test_forced_swap(self):
        seq = [P("XX"), P("ZZ")]
        assert reshuffle_pass(seq, _ForcedRng(1)) == [P("ZZ"), P("XX")]
        assert reshuffle_pass(seq, _ForcedRng(0)) == seq

    def test_multiset_and_anticommuting_order_preserved(self):
        rng = np.random.default_rng(80)
        for trial in range(500):
            n = int(rng.integers(2, 6))
            seq = [rand_pauli(rng, n, hermitian=True) for _ in range(15)]
            out = reshuffle_pass(seq, rng)
            assert sorted(map(str, out)) == sorted(map(str, seq))
            # anticommuting pairs keep their relative order
            positions = {id(p): i for i, p in enumerate(out)}
            for i in range(len(seq)):
                for j in range(i + 1, len(seq)):
                    if not commutes(seq[i], seq[j]):
                        assert positions[id(seq[i])] < positions[id(seq[j])], trial

    def test_reproducible_for_fixed_seed(self):
        seq = [rand_pauli(np.random.default_rng(81), 5, hermitian=True) for _ in range(30)]
        a = reshuffle_pass(seq, np.random.default_rng(7))
        b = reshuffle_pass(seq, np.random.default_rng(7))
        assert a == b


class TestRestructureClique:
    def test_within_budget_is_identity(self):
        clique = [P("XIZI"), P("IXIZ")]
        new, plan = restructure_clique(clique, SURFACE)
        assert new == clique
        assert plan.moves == ()

    def test_congested_instance_single_cancelling_move(self, fig_instance):
        seq = fig_instance.paulis()
        new, plan = restructure_clique(seq, SURFACE)
        assert plan.moves == ((0, 1),)
        demand = port_demand(new)
        assert max(demand.dx) <= 2 and max(demand.dz) <= 2
        assert hw_greedy(new, SURFACE).depth == 1
        assert span_equal(seq, new)

    def test_no_profitable_move(self):
        """Cancelling the shared column always overloads another one."""
        clique = [P("XXII"), P("XIXI"), P("XIIX")]
        budget = PortBudget(1, 1)
        new, plan = restructure_clique(clique, budget)
        assert plan.moves == ()
        assert new == clique

    def test_soundness_on_random_cliques(self):
        for clique in harvest_cliques(5, 0.35, 120, max_size=8):
            new, plan = restructure_clique(clique, SURFACE)
            assert mutually_commuting(new)
            assert span_equal(clique, new)
            used = [i for move in plan.moves for i in move]
            assert len(used) == len(set(used))

    def test_resource_tail_demand_capped(self):
        for clique in harvest_cliques(4, 0.5, 80, max_size=10):
            n_prog = 4
            new, _ = restructure_clique(clique, SURFACE)
            demand = port_demand(new)
            assert all(d <= 2 for d in demand.dz[n_prog:])
            assert all(d == 0 for d in demand.dx[n_prog:])

    def test_non_commuting_rejected(self):
        with pytest.raises(NonCommutingError):
            restructure_clique([P("X"), P("Z")], SURFACE)

    def test_unlimited_budget_no_moves(self):
        clique = harvest_cliques(4, 0.6, 1, max_size=10)[0]
        new, plan = restructure_clique(clique, PortBudget.unlimited())
        assert plan.moves == () and new == clique


class TestRestructurePlan:
    def test_distinct_roles_enforced(self):
        with pytest.raises(ValidationError):
            RestructurePlan(((0, 1), (1, 2)))


class TestBruteForce:
    def test_within_budget(self):
        assert brute_force_restructure([P("XI"), P("IZ")], SURFACE) == 1

    def test_congested_instance(self, fig_instance):
        assert brute_force_restructure(fig_instance.paulis(), SURFACE) == 1

    def test_size_refusal(self):
        clique = [PauliString.single(7, q, "X") for q in range(7)]
        with pytest.raises(SizeLimitError):
            brute_force_restructure(clique, SURFACE)

    def test_never_beaten_by_greedy(self):
        for clique in harvest_cliques(5, 0.35, 60, max_size=5, min_size=3):
            brute = brute_force_restructure(clique, SURFACE)
            unrestructured = hw_greedy(clique, SURFACE).depth
            new, _ = restructure_clique(clique, SURFACE)
            greedy = min(unrestructured, hw_greedy(new, SURFACE).depth)
            assert brute <= greedy <= unrestructured


class TestRunStrategy:
    def test_baseline_vs_combined_on_congested_instance(self, fig_instance):
        baseline, _, _ = run_strategy(
            fig_instance, StrategyConfig(strategy="baseline", budget=SURFACE)
        )
        combined, _, _ = run_strategy(
            fig_instance, StrategyConfig(strategy="combined", budget=SURFACE)
        )
        assert baseline.depth == 2
        assert combined.depth == 1

    def test_zero_passes_combined_equals_greedy_restructure(self):
        circuit = gen_random_ppms(RandomSpec(n_qubits=10, n_ppms=60, density=0.3, seed=3))
        cfg = StrategyConfig(strategy="combined", passes=0, seed=5, budget=SURFACE)
        alt = StrategyConfig(strategy="greedy-restructure", passes=0, seed=5, budget=SURFACE)
        g1, s1, m1 = run_strategy(circuit, cfg)
        g2, s2, m2 = run_strategy(circuit, alt)
        assert g1 == g2 and s1 == s2 and m1 == m2

    def test_combined_never_deeper_than_baseline(self):
        for seed in range(15):
            circuit = gen_random_ppms(
                RandomSpec(n_qubits=10, n_ppms=80, density=0.4, seed=seed)
            )
            base = baseline_grouping(circuit, SURFACE).depth
            combined, _, _ = run_strategy(
                circuit,
                StrategyConfig(strategy="combined", passes=3, seed=seed, budget=SURFACE),
            )
            assert combined.depth <= base

    def test_passes_monotone_for_fixed_seed(self):
        circuit = gen_random_ppms(RandomSpec(n_qubits=12, n_ppms=80, density=0.25, seed=4))
        depths = []
        for passes in range(7):
            grouping, _, _ = run_strategy(
                circuit,
                StrategyConfig(strategy="combined", passes=passes, seed=42, budget=SURFACE),
            )
            depths.append(grouping.depth)
        assert all(b <= a for a, b in zip(depths, depths[1:]))

    def test_reshuffle_strategy_valid_grouping(self):
        circuit = gen_random_ppms(RandomSpec(n_qubits=8, n_ppms=50, density=0.4, seed=9))
        grouping, seq, _ = run_strategy(
            circuit, StrategyConfig(strategy="reshuffle", passes=4, seed=1, budget=SURFACE)
        )
        assert sorted(grouping.all_indices()) == list(range(len(seq)))
        assert sorted(map(str, seq)) == sorted(map(str, circuit.paulis()))

    def test_restructured_sequence_spans_original_per_clique(self):
        circuit = gen_random_ppms(
            RandomSpec(n_qubits=6, n_ppms=40, density=0.3, seed=11, attach_resources=True)
        )
        grouping, seq, _ = run_strategy(
            circuit,
            StrategyConfig(strategy="greedy-restructure", budget=PortBudget(1, 1)),
        )
        for group in greedy_cliques(circuit.paulis()).groups:
            original = [circuit.paulis()[i] for i in group]
            rewritten = seq[group[0] : group[-1] + 1]
            assert span_equal(original, rewritten)

    def test_clique_split_mapper(self):
        circuit = gen_random_ppms(RandomSpec(n_qubits=8, n_ppms=50, density=0.4, seed=13))
        grouping, _, _ = run_strategy(
            circuit,
            StrategyConfig(strategy="combined", mapper="clique-split", budget=SURFACE),
        )
        assert grouping.depth <= baseline_grouping(circuit, SURFACE).depth

    def test_independent_pass_sampling(self):
        circuit = gen_random_ppms(RandomSpec(n_qubits=8, n_ppms=40, density=0.4, seed=14))
        cfg = StrategyConfig(
            strategy="combined", passes=3, seed=7, budget=SURFACE, chain_passes=False
        )
        grouping, _, _ = run_strategy(circuit, cfg)
        assert grouping.depth <= baseline_grouping(circuit, SURFACE).depth

    def test_deterministic_for_fixed_config(self):
        circuit = gen_random_ppms(RandomSpec(n_qubits=10, n_ppms=70, density=0.3, seed=15))
        cfg = StrategyConfig(strategy="combined", passes=3, seed=123, budget=SURFACE)
        first = run_strategy(circuit, cfg)
        second = run_strategy(circuit, cfg)
        assert first == second

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValidationError):
            StrategyConfig(strategy="anneal")

    def test_empty_circuit(self):
        from ppmsched import PpmCircuit

        circuit = PpmCircuit(3, 0, ())
        grouping, seq, m = run_strategy(circuit, StrategyConfig(strategy="combined"))
        assert grouping.depth == 0 and seq == [] and m.depth == 0
