from __future__ import annotations

import pytest
from hypothesis import given

import ge_checks
from oracles import all_matchings, nu_by_networkx
from strategies import graph_and_subset, graphs
from urmatch import families
from urmatch.enumerate import enumerate_subcubic_girth5
from urmatch.graph import Graph, GraphError, bits, complete, cycle, path, petersen, star
from urmatch.matching import (
    Matching,
    MatchingError,
    gallai_edmonds,
    is_factor_critical,
    iter_matchings,
    matching_avoiding,
    matching_number,
    matching_number_bruteforce,
    maximum_matching,
)


class TestMatchingType:
    def test_rejects_non_edge(self):
        with pytest.raises(MatchingError):
            Matching.of(path(3), [(0, 2)])

    def test_rejects_shared_vertex(self):
        with pytest.raises(MatchingError):
            Matching.of(path(3), [(0, 1), (1, 2)])

    def test_covered_and_mate(self):
        m = Matching.of(path(4), [(2, 3), (0, 1)])
        assert m.covered == 0b1111 and m.mate() == [1, 0, 3, 2]
        assert m.sorted_edges() == [(0, 1), (2, 3)]


class TestMaximumMatching:
    def test_examples(self):
        assert len(maximum_matching(star(3))) == 1
        assert len(maximum_matching(families.construct("G1", verify=False).graph)) == 4
        assert matching_number(petersen()) == 5
        assert matching_number(complete(7)) == 3

    def test_tree_family_members(self):
        for t in families.generate_T(13):
            assert matching_number(t) == len(families.is_in_T(t).a_set())

    @given(graphs(max_n=10))
    def test_agrees_with_brute_force(self, g):
        m = maximum_matching(g)
        assert len(m) == matching_number_bruteforce(g) == nu_by_networkx(g)

    @given(graphs(max_n=9))
    def test_iter_matchings_is_complete(self, g):
        ours = {frozenset(m) for m in iter_matchings(g)}
        assert ours == set(all_matchings(g.edges()))

    @given(graphs(min_n=11, max_n=24, max_degree=3))
    def test_larger_subcubic_against_networkx(self, g):
        assert matching_number(g) == nu_by_networkx(g)


class TestGallaiEdmonds:
    def test_claw(self):
        ge = gallai_edmonds(star(3))
        assert ge.d_set() == [1, 2, 3] and ge.a_set() == [0] and ge.c_set() == []

    def test_c5(self):
        ge = gallai_edmonds(cycle(5))
        assert ge.d_set() == list(range(5)) and not ge.a and not ge.c

    def test_k2(self):
        ge = gallai_edmonds(path(2))
        assert not ge.d and not ge.a and ge.c_set() == [0, 1]

    @given(graphs(max_n=9))
    def test_structure_on_random_graphs(self, g):
        assert ge_checks.problems(g) == []

    @pytest.mark.parametrize("n", range(1, 10))
    def test_structure_on_enumerated_graphs(self, n):
        for g in enumerate_subcubic_girth5(n):
            assert ge_checks.problems(g) == []

    @given(graphs(max_n=8))
    def test_d_matches_definition(self, g):
        nu = matching_number_bruteforce(g)
        missed = set()
        for m in iter_matchings(g):
            if len(m) == nu:
                cov = {x for e in m for x in e}
                missed |= set(range(g.n)) - cov
        assert set(gallai_edmonds(g).d_set()) == missed


class TestFactorCritical:
    def test_examples(self):
        assert is_factor_critical(cycle(5))
        assert not is_factor_critical(path(2))
        assert is_factor_critical(Graph.empty(1))
        assert is_factor_critical(complete(5))

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            is_factor_critical(Graph.empty(3))


class TestMatchingAvoiding:
    def test_k2_endpoint(self):
        assert matching_avoiding(path(2), [0]) is None

    def test_tree_family_pairs(self):
        for t in families.generate_T(13):
            ge = families.is_in_T(t)
            for x in families.qualifying_sets(t, ge.d_set(), "i"):
                m = matching_avoiding(t, x)
                assert m is not None and not m.covered & x

    def test_three_leaves_without_common_neighbor(self):
        # double star: leaves 2, 3 at vertex 0 and 5, 6 at vertex 1, middle vertex 4
        t = Graph.from_edges(7, [(0, 2), (0, 3), (0, 4), (1, 4), (1, 5), (1, 6)])
        assert families.is_in_T(t) is not None
        assert matching_avoiding(t, bits([2, 4, 5])) is not None
        assert matching_avoiding(t, bits([2, 3, 4])) is None

    @given(graph_and_subset(max_n=9))
    def test_definition(self, gx):
        g, x = gx
        m = matching_avoiding(g, x)
        nu = matching_number(g)
        alive = [v for v in range(g.n) if not x >> v & 1]
        sub, _ = g.induced(alive)
        assert (m is not None) == (matching_number(sub) == nu)
        if m is not None:
            assert len(m) == nu and not m.covered & x
