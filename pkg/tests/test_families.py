from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import tree_checks
from oracles import from_nx
from urmatch import families
from urmatch.canon import canonical_form, is_isomorphic
from urmatch.families import (
    BLOCK_NAMES,
    CATALOG_NAMES,
    CONDITIONS,
    TABLE1,
    FamilyError,
    Status,
    check_B_property,
    compose,
    compose_random,
    construct,
    contract_claw,
    contract_double,
    failing_set,
    generate_T,
    is_in_G,
    is_in_T,
    recompose,
    replace_vertex,
)
from urmatch.graph import Graph, bits, blocks_and_bridges, girth, is_tree, path, petersen, star
from urmatch.trees import free_trees
from urmatch.matching import gallai_edmonds, matching_number
from urmatch.ur import nu_ur, ur_matching_avoiding

# OEIS A000055, free trees on n vertices, n = 1..16
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320]


class TestCatalog:
    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_structure(self, name):
        e = construct(name, verify=False)
        g = e.graph
        assert g.is_subcubic() and girth(g) >= 5
        blocks, bridges = blocks_and_bridges(g)
        assert len(blocks) == 1 and not bridges  # 2-connected
        if name in BLOCK_NAMES:
            assert g.n == TABLE1[name][0]
            assert len(e.degree2_vertices) in (2, 3, 6)
            assert not g.is_cubic()
        else:
            assert g.is_cubic() and g.n == {"H1": 14, "H2": 20}[name]

    def test_orders(self):
        orders = [construct(name, verify=False).graph.n for name in BLOCK_NAMES]
        assert orders == [10, 13, 16, 19, 16, 19, 19, 22, 25]

    def test_examples(self):
        g1 = construct("G1")
        assert g1.graph.n == 10 and g1.expected_nu_ur == 3
        assert construct("H1", verify=False).graph.is_cubic()
        g8 = construct("G8", verify=False)
        assert g8.graph.n == 22 and len(g8.degree2_vertices) == 2
        assert len(construct("G5", verify=False).degree2_vertices) == 2

    def test_G1_is_subdivided_k4(self):
        k4 = nx.complete_graph(4)
        assert is_isomorphic(construct("G1", verify=False).graph, from_nx(_subdivide(k4)))

    def test_catalog_members_are_pairwise_distinct(self):
        forms = {canonical_form(construct(n, verify=False).graph) for n in CATALOG_NAMES}
        assert len(forms) == len(CATALOG_NAMES)

    def test_unknown_name(self):
        with pytest.raises(FamilyError):
            construct("G10")

    def test_verified_value(self):
        assert construct("G2", verify=True).expected_nu_ur == nu_ur(construct("G2").graph)


def _subdivide(h: nx.Graph) -> nx.Graph:
    out = nx.Graph()
    for k, (u, v) in enumerate(h.edges()):
        mid = 100 + k
        out.add_edge(u, mid)
        out.add_edge(mid, v)
    return out


class TestBProperty:
    def test_examples(self):
        assert check_B_property(construct("G2", verify=False), "ii") is Status.FAILS
        assert check_B_property(construct("G3", verify=False), "iii") is Status.HOLDS
        assert check_B_property(construct("G1", verify=False), "iii") is Status.VACUOUS

    def test_failing_witnesses(self):
        for name in ("G2", "G4"):
            e = construct(name, verify=False)
            x = failing_set(e, "ii")
            assert x is not None and len(x) == 3
            assert ur_matching_avoiding(e.graph, bits(x), e.expected_nu_ur) is None

    @pytest.mark.parametrize("name", ["G1", "G2", "G3", "G5"])
    def test_small_rows_match_table(self, name):
        e = construct(name, verify=False)
        assert tuple(check_B_property(e, c) for c in CONDITIONS) == TABLE1[name][2]

    def test_unknown_condition(self):
        with pytest.raises(FamilyError):
            families.qualifies(path(3), 1, "iv")


class TestFreeTrees:
    def test_counts_match_known_sequence(self):
        assert [sum(1 for _ in free_trees(n)) for n in range(1, 15)] == FREE_TREE_COUNTS[:14]

    @pytest.mark.parametrize("n", range(1, 11))
    def test_agrees_with_networkx(self, n):
        ours = {canonical_form(t) for t in free_trees(n)}
        theirs = {canonical_form(from_nx(t)) for t in nx.nonisomorphic_trees(n)} if n > 1 else {canonical_form(Graph.empty(1))}
        assert ours == theirs
        assert all(is_tree(t) for t in free_trees(n))


class TestTreeFamily:
    def test_membership_examples(self):
        assert is_in_T(star(3)) is not None
        assert is_in_T(Graph.empty(1)) is not None
        assert is_in_T(path(4)) is None
        assert is_in_T(petersen()) is None

    def test_generate_small(self):
        assert [t.n for t in generate_T(1)] == [1]
        got = list(generate_T(4))
        assert len(got) == 2 and is_isomorphic(got[1], star(3))

    def test_counts_per_order(self):
        counts = {}
        for t in generate_T(16):
            counts[t.n] = counts.get(t.n, 0) + 1
        assert counts == {1: 1, 4: 1, 7: 1, 10: 2, 13: 4, 16: 8}

    def test_generation_matches_filter_over_networkx_trees(self):
        for n in (7, 10, 13):
            expected = {
                canonical_form(from_nx(t)) for t in nx.nonisomorphic_trees(n) if is_in_T(from_nx(t)) is not None
            }
            assert {canonical_form(t) for t in generate_T(n) if t.n == n} == expected

    def test_structure_and_avoidance(self):
        for t in generate_T(13):
            assert tree_checks.structure_problems(t) == []
            problems, _ = tree_checks.avoidance_problems(t)
            assert problems == []

    def test_high_degree_a_vertex_excluded(self):
        # nu = 2 = (7 - 1) / 3, but the only A-vertex has degree 5
        t = Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)])
        assert matching_number(t) == 2
        assert gallai_edmonds(t).a_set() == [0]
        assert is_in_T(t) is None


class TestContractions:
    def test_claw_center(self):
        t = star(3)
        res = contract_claw(t, is_in_T(t), 0)
        assert res.tree.n == 1 and res.ge.d_set() == [res.merged]

    def test_double_star(self):
        t = Graph.from_edges(7, [(0, 2), (0, 3), (0, 4), (1, 4), (1, 5), (1, 6)])
        ge = is_in_T(t)
        res = contract_double(t, ge, 0, 1)
        assert res.tree.n == 1 and res.ge.nu == ge.nu - 2

    def test_all_contractions_up_to_13(self):
        total = 0
        for t in generate_T(13):
            problems, done = tree_checks.contraction_problems(t)
            assert problems == []
            total += done
        assert total > 0

    def test_preconditions(self):
        t = star(3)
        ge = is_in_T(t)
        with pytest.raises(FamilyError):
            contract_claw(t, ge, 1)
        with pytest.raises(FamilyError):
            contract_claw(path(4), ge, 0)
        with pytest.raises(FamilyError):
            contract_double(t, ge, 0, 0)


def composed_fixture() -> tuple[Graph, families.FamilyCertificate]:
    t = star(3)
    ge = is_in_T(t)
    e = construct("G1", verify=False)
    return compose(t, ge, [(3, "G1", {0: e.degree2_vertices[0]})])


class TestComposition:
    def test_replace_in_k1_gives_block(self):
        k1 = Graph.empty(1)
        g = replace_vertex(k1, is_in_T(k1), 0, construct("G1", verify=False), {})
        assert is_isomorphic(g, construct("G1", verify=False).graph)

    def test_claw_with_G1(self):
        g, _ = composed_fixture()
        assert g.n == 13 and nu_ur(g) == 4

    def test_claw_with_G3(self):
        t = star(3)
        e = construct("G3", verify=False)
        g = replace_vertex(t, is_in_T(t), 1, e, {0: e.degree2_vertices[2]})
        assert g.n == 19 and nu_ur(g) == 6

    def test_center_has_degree_six_replacement(self):
        # a D-vertex of degree 6 may be replaced by a block with 6 degree-2 vertices
        legs = [(0, i) for i in range(1, 7)]
        extra = []
        nxt = 7
        for i in range(1, 7):
            extra += [(i, nxt), (i, nxt + 1)]
            nxt += 2
        t = Graph.from_edges(nxt, legs + extra)
        ge = is_in_T(t)
        assert ge is not None and 0 in ge.d_set()
        e = construct("G1", verify=False)
        g = replace_vertex(t, ge, 0, e, dict(zip(range(1, 7), e.degree2_vertices)))
        assert is_in_G(g) is not None
        assert nu_ur(g) == (g.n - 1) // 3

    def test_precondition_errors(self):
        t = star(3)
        ge = is_in_T(t)
        e = construct("G2", verify=False)
        with pytest.raises(FamilyError):
            replace_vertex(t, ge, 0, e, {1: e.degree2_vertices[0], 2: e.degree2_vertices[1], 3: e.degree2_vertices[2]})
        with pytest.raises(FamilyError):
            replace_vertex(t, ge, 1, e, {0: 0 if 0 not in e.degree2_vertices else 1})
        with pytest.raises(FamilyError):
            replace_vertex(t, ge, 1, e, {})
        with pytest.raises(FamilyError):
            replace_vertex(t, ge, 1, construct("H1", verify=False), {0: 0})

    @settings(max_examples=30)
    @given(st.integers(0, 10**6))
    def test_random_compositions_round_trip(self, seed):
        g, cert = compose_random(22, seed)
        gg = girth(g)
        assert g.n <= 22 and (gg is None or gg >= 5)
        found = is_in_G(g)
        assert found is not None
        assert is_isomorphic(recompose(found), g)
        assert is_isomorphic(found.host_tree, cert.host_tree)
        assert not g.is_cubic()

    def test_deterministic_under_seed(self):
        a, _ = compose_random(25, 5)
        b, _ = compose_random(25, 5)
        assert a == b


class TestRecognition:
    def test_G1(self):
        cert = is_in_G(construct("G1", verify=False).graph)
        assert cert is not None and cert.host_tree.n == 1

    def test_petersen(self):
        assert is_in_G(petersen()) is None

    def test_cubic_exceptions_are_not_composed(self):
        assert is_in_G(construct("H1", verify=False).graph) is None
        assert is_in_G(construct("H2", verify=False).graph) is None

    def test_composed_fixture(self):
        g, _ = composed_fixture()
        cert = is_in_G(g)
        assert cert is not None and is_isomorphic(cert.host_tree, star(3))
        assert [r.name for r in cert.replacements] == ["G1"]

    def test_block_attached_at_degree_three_vertex_rejected(self):
        e = construct("G1", verify=False)
        v = next(v for v in range(e.graph.n) if e.graph.degree(v) == 3)
        g = Graph.from_edges(e.graph.n + 1, e.graph.edges() + [(v, e.graph.n)])
        assert is_in_G(g) is None

    def test_trees(self):
        for t in generate_T(13):
            assert is_in_G(t) is not None
        assert is_in_G(path(4)) is None

    def test_disconnected(self):
        assert is_in_G(Graph.empty(2)) is None

    def test_block_neighbor_must_be_in_A(self):
        # G1 hanging from a leaf of P2: host tree P2 is not in the tree family
        e = construct("G1", verify=False)
        n = e.graph.n
        g = Graph.from_edges(n + 2, e.graph.edges() + [(e.degree2_vertices[0], n), (n, n + 1)])
        assert is_in_G(g) is None


def d_prime_and_degree_two(g: Graph, cert: families.FamilyCertificate) -> list[int]:
    tree_d = [cert.tree_labels[v] for v in cert.ge.d_set() if cert.tree_labels[v] >= 0]
    return sorted(set(tree_d) | {v for v in range(g.n) if g.degree(v) == 2})


class TestBlockProperties:
    def test_pairs_keep_nu_ur(self):
        for seed in range(4):
            g, cert = compose_random(19, seed)
            target = (g.n - 1) // 3
            pool = d_prime_and_degree_two(g, cert)
            for x in families.qualifying_sets(g, pool, "i"):
                assert ur_matching_avoiding(g, x, target) is not None

    def test_triples_keep_nu_ur_for_core_blocks(self):
        cases = [construct("G1", verify=False).graph, composed_fixture()[0]]
        for g in cases:
            cert = is_in_G(g)
            assert all(r.name in families.CORE_BLOCK_NAMES for r in cert.replacements)
            target = (g.n - 1) // 3
            for x in families.qualifying_sets(g, d_prime_and_degree_two(g, cert), "ii"):
                assert ur_matching_avoiding(g, x, target) is not None
