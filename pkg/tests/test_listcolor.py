import random
from itertools import product

import pytest
from hypothesis import given, settings

from choosability.errors import BudgetExceededError
from choosability.graph import build_graph, cycle_graph, induced_subgraph
from choosability.listcolor import (ABParams, canonical_list_families,
                                    choice_violations, is_ab_choosable,
                                    is_ab_colorable, is_ab_free_choosable,
                                    solve_list_weight, verify_choice)

from conftest import brute_force_solvable, list_weight_instances

K2 = build_graph(2, [(0, 1)])
C3 = cycle_graph(3)
C4 = cycle_graph(4)
C5 = cycle_graph(5)
C6 = cycle_graph(6)


def fs(*xs):
    return frozenset(xs)


class TestVerifyChoice:
    def test_valid(self):
        assert verify_choice(K2, {0: fs(1, 2), 1: fs(1, 2)}, {0: 1, 1: 1},
                             {0: fs(1), 1: fs(2)})

    def test_edge_conflict(self):
        assert not verify_choice(K2, {0: fs(1, 2), 1: fs(1, 2)}, {0: 1, 1: 1},
                                 {0: fs(1), 1: fs(1)})

    def test_cardinality(self):
        g = build_graph(1, [])
        assert not verify_choice(g, {0: fs(1, 2)}, {0: 3}, {0: fs(1, 2)})

    def test_reason_codes(self):
        reasons = choice_violations(K2, {0: fs(1), 1: fs(2)}, {0: 1, 1: 1}, {0: fs(1)})
        assert any("no chosen set" in r for r in reasons)


class TestSolveListWeight:
    def test_k2(self):
        out = solve_list_weight(K2, {0: fs(1, 2), 1: fs(1, 2)}, {0: 1, 1: 1})
        assert verify_choice(K2, {0: fs(1, 2), 1: fs(1, 2)}, {0: 1, 1: 1}, out)

    def test_triangle_two_colors_unsolvable(self):
        lists = {v: fs(1, 2) for v in C3.vertices}
        assert solve_list_weight(C3, lists, {v: 1 for v in C3.vertices}) is None

    def test_c4_example(self):
        lists = {0: fs(1, 2), 1: fs(2, 3), 2: fs(3, 4), 3: fs(4, 1)}
        weights = {v: 1 for v in C4.vertices}
        assert brute_force_solvable(C4, lists, weights)  # independent oracle
        out = solve_list_weight(C4, lists, weights)
        assert out is not None and verify_choice(C4, lists, weights, out)

    def test_demand_above_list_size(self):
        assert solve_list_weight(K2, {0: fs(1), 1: fs(2)}, {0: 2, 1: 1}) is None

    @settings(max_examples=120, deadline=None)
    @given(list_weight_instances())
    def test_agrees_with_brute_force(self, inst):
        g, lists, weights = inst
        got = solve_list_weight(g, lists, weights)
        assert (got is not None) == brute_force_solvable(g, lists, weights)
        if got is not None:
            assert verify_choice(g, lists, weights, got)

    @settings(max_examples=60, deadline=None)
    @given(list_weight_instances())
    def test_color_renaming_invariance(self, inst):
        g, lists, weights = inst
        colors = sorted({c for l in lists.values() for c in l})
        rng = random.Random(17)
        renamed = {c: 100 + i for i, c in enumerate(rng.sample(colors, len(colors)))}
        lists2 = {v: frozenset(renamed[c] for c in l) for v, l in lists.items()}
        assert (solve_list_weight(g, lists, weights) is None) == \
               (solve_list_weight(g, lists2, weights) is None)

    @settings(max_examples=60, deadline=None)
    @given(list_weight_instances())
    def test_restriction_to_induced_subgraph(self, inst):
        g, lists, weights = inst
        full = solve_list_weight(g, lists, weights)
        if full is None:
            return
        keep = [v for v in g.vertices if v % 2 == 0]
        sub, mapping = induced_subgraph(g, keep)
        sub_lists = {mapping[v]: lists[v] for v in keep}
        sub_weights = {mapping[v]: weights[v] for v in keep}
        restricted = {mapping[v]: full[v] for v in keep}
        assert verify_choice(sub, sub_lists, sub_weights, restricted)
        assert solve_list_weight(sub, sub_lists, sub_weights) is not None


class TestColorable:
    def test_k2(self):
        holds, witness = is_ab_colorable(K2, ABParams(2, 1))
        assert holds and verify_choice(K2, {v: fs(0, 1) for v in K2.vertices},
                                       {v: 1 for v in K2.vertices}, witness)

    def test_c5_4_2_refuted_matches_enumeration(self):
        # independent oracle: all 2-subsets of a 4-set at every vertex
        from itertools import combinations
        subsets = [frozenset(c) for c in combinations(range(4), 2)]
        feasible = any(all(not dict(enumerate(pick))[u] & dict(enumerate(pick))[v]
                           for u, v in C5.edges)
                       for pick in product(subsets, repeat=5))
        assert not feasible
        assert is_ab_colorable(C5, ABParams(4, 2)) == (False, None)

    def test_c5_5_2_holds(self):
        holds, witness = is_ab_colorable(C5, ABParams(5, 2))
        assert holds
        assert verify_choice(C5, {v: fs(*range(5)) for v in C5.vertices},
                             {v: 2 for v in C5.vertices}, witness)


class TestCanonicalFamilies:
    def test_tiny_count(self):
        # two vertices, one color each: equal or distinct, nothing else
        fams = list(canonical_list_families([1, 1]))
        assert len(fams) == 2

    def test_coverage_respected(self):
        for fam in canonical_list_families([2, 3, 1]):
            assert [len(fam[v]) for v in range(3)] == [2, 3, 1]

    def test_budget_error(self):
        with pytest.raises(BudgetExceededError):
            list(canonical_list_families([5] * 6, budget=10))


class TestChoosable:
    def test_c4_2_1_exhaustive(self):
        assert is_ab_choosable(C4, ABParams(2, 1)).holds

    def test_c3_2_1_counterexample_is_constant(self):
        verdict = is_ab_choosable(C3, ABParams(2, 1))
        assert not verdict.holds
        lists = verdict.counterexample
        assert len(set(lists.values())) == 1 and len(next(iter(lists.values()))) == 2
        assert solve_list_weight(C3, lists, {v: 1 for v in C3.vertices}) is None

    def test_c6_5_2_sampled(self):
        verdict = is_ab_choosable(C6, ABParams(5, 2), mode="sampled", trials=1000, seed=1)
        assert verdict.holds and not verdict.is_proof
        assert verdict.trials == 1000 and verdict.seed == 1

    def test_sampled_reproducible(self):
        v1 = is_ab_choosable(C6, ABParams(5, 2), mode="sampled", trials=40, seed=11)
        v2 = is_ab_choosable(C6, ABParams(5, 2), mode="sampled", trials=40, seed=11)
        assert v1 == v2

    def test_budget_never_silently_falls_back(self):
        with pytest.raises(BudgetExceededError):
            is_ab_choosable(C6, ABParams(5, 2), budget=100)

    def test_exhaustive_choosable_implies_colorable(self):
        for g in (K2, C4, cycle_graph(6)):
            if is_ab_choosable(g, ABParams(2, 1)).holds:
                assert is_ab_colorable(g, ABParams(2, 1))[0]


class TestFreeChoosable:
    def test_k2(self):
        assert is_ab_free_choosable(K2, 0, ABParams(2, 1)).holds

    def test_c3_refuted_and_matches_direct_enumeration(self):
        # independent oracle over a concrete universe of size a*n
        from itertools import combinations
        universe = range(6)
        feasible_all = True
        for l0 in combinations(universe, 1):
            for l1 in combinations(universe, 2):
                for l2 in combinations(universe, 2):
                    lists = {0: frozenset(l0), 1: frozenset(l1), 2: frozenset(l2)}
                    if not brute_force_solvable(C3, lists, {v: 1 for v in C3.vertices}):
                        feasible_all = False
                        break
                if not feasible_all:
                    break
            if not feasible_all:
                break
        assert not feasible_all
        verdict = is_ab_free_choosable(C3, 0, ABParams(2, 1))
        assert not verdict.holds
        assert solve_list_weight(C3, verdict.counterexample,
                                 {v: 1 for v in C3.vertices}) is None

    def test_c6_sampled(self):
        verdict = is_ab_free_choosable(C6, 0, ABParams(5, 2), mode="sampled",
                                       trials=500, seed=7)
        assert verdict.holds and not verdict.is_proof
