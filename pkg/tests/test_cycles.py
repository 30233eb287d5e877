import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acyclic_chi._util import derive_seed
from acyclic_chi.cycles import (
    Cycle,
    count_cycles,
    cycle_census,
    enumerate_cycles,
    estimate_path_probability,
    find_path,
    has_path_of_length,
    lemma1_bound,
)
from acyclic_chi.exceptions import CapExceeded
from acyclic_chi.graph import (
    EdgeProbabilityModel,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    sample_graph,
)
from conftest import brute_force_cycles, small_random_graphs, to_nx


def kn_cycles(n, k):
    return math.perm(n, k) // (2 * k)


class TestCycle:
    def test_canonical_rotation_and_reflection(self):
        forms = {Cycle.from_sequence(s) for s in [(3, 1, 2, 0), (0, 3, 1, 2), (2, 1, 3, 0), (1, 3, 0, 2)]}
        assert forms == {Cycle((0, 2, 1, 3))}

    def test_rejects_short_or_repeated(self):
        with pytest.raises(ValueError):
            Cycle.from_sequence([0, 1])
        with pytest.raises(ValueError):
            Cycle.from_sequence([0, 1, 0])

    @given(st.permutations(list(range(7))))
    def test_canonical_form_is_unique(self, perm):
        cyc = Cycle.from_sequence(perm)
        assert cyc[0] == 0 and cyc[1] < cyc[-1]
        rev = Cycle.from_sequence(list(reversed(perm)))
        assert cyc == rev


class TestEnumerate:
    def test_triangle(self):
        assert enumerate_cycles(complete_graph(3), 3, 3) == [Cycle((0, 1, 2))]

    def test_k4(self):
        cyc = enumerate_cycles(complete_graph(4), 3, 4)
        assert len(cyc) == 7
        assert sum(len(c) == 3 for c in cyc) == 4

    def test_path_has_none(self):
        assert enumerate_cycles(path_graph(5), 3, 5) == []

    def test_sorted_output(self):
        cyc = enumerate_cycles(complete_graph(5))
        assert cyc == sorted(cyc)

    def test_cap(self):
        with pytest.raises(CapExceeded) as err:
            enumerate_cycles(complete_graph(6), cap=10)
        assert err.value.partial > 10

    def test_completeness_against_brute_force(self):
        graphs = small_random_graphs(200, seed=3)
        for g in graphs:
            got = enumerate_cycles(g)
            assert [tuple(c) for c in got] == brute_force_cycles(g)

    def test_length_window(self):
        g = complete_graph(6)
        got = enumerate_cycles(g, 4, 5)
        assert len(got) == kn_cycles(6, 4) + kn_cycles(6, 5)
        assert all(4 <= len(c) <= 5 for c in got)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_matches_networkx(self, seed):
        import networkx as nx

        g = sample_graph(EdgeProbabilityModel(9, p=0.4), seed)
        ours = {tuple(c) for c in enumerate_cycles(g)}
        theirs = {tuple(Cycle.from_sequence(c)) for c in nx.simple_cycles(to_nx(g))
                  if len(c) >= 3}
        assert ours == theirs

    def test_no_two_cycles_equivalent(self):
        for g in small_random_graphs(30, seed=8, n_range=(6, 8)):
            cyc = enumerate_cycles(g)
            keys = {frozenset(frozenset(e) for e in c.edges()) for c in cyc}
            assert len(keys) == len(cyc)
            assert all(c.is_in(g) for c in cyc)


class TestCount:
    def test_examples(self):
        assert count_cycles(complete_graph(5), 5) == 12
        assert count_cycles(cycle_graph(6), 6) == 1
        assert count_cycles(complete_bipartite_graph(2, 3), 3) == 0

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_trace_matches_enumeration(self, k):
        for seed in range(25):
            g = sample_graph(EdgeProbabilityModel(14, p=0.35), seed)
            assert count_cycles(g, k, method="trace") == count_cycles(g, k, method="enumerate")

    @pytest.mark.parametrize("n,k", [(6, 3), (6, 4), (6, 5), (7, 6), (7, 7)])
    def test_complete_graph_closed_form(self, n, k):
        assert count_cycles(complete_graph(n), k) == kn_cycles(n, k)

    def test_census(self):
        cen = cycle_census(complete_graph(4))
        assert cen.counts == {3: 4, 4: 3}
        assert cen.total == 7 and not cen.truncated
        assert cen.to_csv() == "length,count\n3,4\n4,3\n"
        assert cycle_census(complete_graph(6), cap=5).truncated


def _has_p4(adj):
    """Batch test for a 3-edge path: the P4-subgraph count is positive."""
    deg = adj.sum(axis=2)
    a3 = np.einsum("bij,bjk,bki->b", adj, adj, adj)
    tri = a3 // 6
    dm1 = deg - 1
    s = np.einsum("bij,bi,bj->b", adj, dm1, dm1) // 2
    return s - 3 * tri > 0


def _oracle_path3(n, p, trials, seed):
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    hits = 0
    done = 0
    while done < trials:
        b = min(5000, trials - done)
        adj = np.zeros((b, n, n), dtype=np.int64)
        bits = rng.random((b, len(iu[0]))) < p
        adj[:, iu[0], iu[1]] = bits
        adj = adj + adj.transpose(0, 2, 1)
        hits += int(_has_p4(adj).sum())
        done += b
    return hits / trials


class TestPaths:
    def test_p5(self):
        assert has_path_of_length(path_graph(5), 4) is True
        assert has_path_of_length(path_graph(5), 5) is False

    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_hamiltonian_in_complete(self, n):
        assert has_path_of_length(complete_graph(n), n - 1) is True

    def test_empty(self):
        assert has_path_of_length(empty_graph(5), 1) is False

    def test_unknown_when_budget_exhausted(self):
        # longest path in K_{3,9} has 6 edges; refuting 7 needs an exhaustive search
        g = complete_bipartite_graph(3, 9)
        assert has_path_of_length(g, 7, budget=50) is None
        assert has_path_of_length(g, 7) is False
        assert has_path_of_length(g, 6) is True

    def test_witness_is_a_path(self):
        for g in small_random_graphs(40, seed=5, n_range=(5, 9)):
            for k in range(1, g.n):
                path = find_path(g, k)
                if path is not None:
                    assert len(path) == k + 1 == len(set(path))
                    assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
                else:
                    assert not _brute_has_path(g, k)

    def test_p4_oracle_self_check(self):
        for g in small_random_graphs(60, seed=12, n_range=(4, 8), ps=(0.15, 0.3)):
            adj = g.adjacency_matrix(np.int64)[None]
            assert bool(_has_p4(adj)[0]) == (find_path(g, 3) is not None)


def _brute_has_path(g, k):
    """Brute force over ordered vertex tuples."""
    from itertools import permutations

    for tup in permutations(range(g.n), k + 1):
        if tup[0] < tup[-1] and all(g.has_edge(a, b) for a, b in zip(tup, tup[1:])):
            return True
    return False


class TestPathProbability:
    def test_trivial(self):
        assert estimate_path_probability(EdgeProbabilityModel(6, p=1.0), 1, 10, 0).value == 1
        assert estimate_path_probability(EdgeProbabilityModel(6, p=0.0), 1, 10, 0).value == 0

    @pytest.mark.parametrize("p", [0.5, 0.04])
    def test_matches_high_precision_oracle(self, p):
        est = estimate_path_probability(EdgeProbabilityModel(30, p=p), 3, 500, seed=21)
        ref = _oracle_path3(30, p, 100_000, seed=4)
        se = max(est.stderr, math.sqrt(ref * (1 - ref) / 500), 1e-9)
        assert est.unknown == 0
        assert abs(float(est.value) - ref) <= 3 * se

    def test_monotone_in_p_with_paired_seeds(self):
        ps = [0.02, 0.04, 0.06, 0.1]
        vals = [estimate_path_probability(EdgeProbabilityModel(25, p=p), 4, 200, seed=9).value
                for p in ps]
        assert vals == sorted(vals)

    def test_paired_seeds_give_nested_graphs(self):
        lo = sample_graph(EdgeProbabilityModel(25, p=0.04), derive_seed(9, 3))
        hi = sample_graph(EdgeProbabilityModel(25, p=0.1), derive_seed(9, 3))
        assert set(lo.edge_list()) <= set(hi.edge_list())


class TestLemma1:
    def test_dense_case(self):
        b = lemma1_bound(100, 2, 0.5, 1.0)
        assert b.value == pytest.approx(1.0) and not b.vacuous

    def test_tiny_p_vacuous(self):
        assert lemma1_bound(100, 3, 1e-6, 1.0).vacuous

    def test_zero_constant(self):
        b = lemma1_bound(50, 3, 0.3, 0.0)
        assert b.value == pytest.approx(1 - 3 * 50 ** 2)
        assert b.vacuous

    def test_verbatim_formula(self):
        n, k, p, C = 40, 2, 0.2, 0.3
        expected = 1 - k * n ** (k - 1) * math.exp(-C * n * n * p ** (2 * k - 1))
        assert lemma1_bound(n, k, p, C).value == pytest.approx(expected)
