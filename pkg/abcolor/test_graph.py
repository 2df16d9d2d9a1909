"""
Tests for the graph core (abcolor/graph.py).

networkx serves as the independent reference for square graphs,
girth, cores, blocks, bipartiteness and distances.

Run with:  python -m pytest abcolor/test_graph.py -v
"""

import itertools
import math
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcolor.errors import FormatError, GraphError
from abcolor.graph import (
    back_degrees, bfs_distance, blocks, build, closed_neighborhood,
    components, degeneracy_ordering, diameter, disjoint_union, find_triangle,
    girth, induced, is_bipartite, neighborhood, read_graph, remove, square,
    write_graph,
)


# ===========================================================================
# Helpers
# ===========================================================================

def path(n):
    return build(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return build(n, itertools.combinations(range(n), 2))


def star(leaves):
    return build(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_girth(h):
    best = math.inf
    for u, v in list(h.edges):
        h.remove_edge(u, v)
        try:
            best = min(best, nx.shortest_path_length(h, u, v) + 1)
        except nx.NetworkXNoPath:
            pass
        h.add_edge(u, v)
    return best


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    if not pairs:
        return build(n, [])
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return build(n, chosen)


# ===========================================================================
# build
# ===========================================================================

class TestBuild:
    def test_triangle(self):
        g = build(3, [(0, 1), (1, 2), (2, 0)])
        assert g.n == 3
        assert g.m == 3
        assert g.adjacency == ((1, 2), (0, 2), (0, 1))

    def test_isolated_vertices(self):
        g = build(2, [])
        assert g.n == 2 and g.m == 0
        assert g.max_degree == 0

    def test_parallel_edges_deduplicated(self):
        g = build(4, [(0, 1), (0, 1), (1, 0)])
        assert g.m == 1
        assert g.degree(0) == 1

    def test_self_loop_rejected_with_pair(self):
        with pytest.raises(GraphError) as exc:
            build(3, [(0, 1), (2, 2)])
        assert exc.value.pair == (2, 2)
        assert isinstance(exc.value, ValueError)

    def test_out_of_range_rejected_with_pair(self):
        with pytest.raises(GraphError) as exc:
            build(3, [(0, 3)])
        assert exc.value.pair == (0, 3)

    def test_adjacency_symmetric(self):
        g = build(5, [(0, 4), (3, 1), (2, 4)])
        for u in range(g.n):
            for w in g.adjacency[u]:
                assert u in g.adjacency[w]
                assert g.has_edge(u, w) and g.has_edge(w, u)


# ===========================================================================
# square / distances
# ===========================================================================

class TestSquare:
    def test_c5_square_is_k5(self):
        assert square(cycle(5)) == complete(5)

    def test_p4_square_misses_only_endpoints(self):
        sq = square(path(4))
        assert sq.m == 5
        assert not sq.has_edge(0, 3)

    def test_star_square_is_k4(self):
        assert square(star(3)) == complete(4)

    @given(small_graphs())
    def test_matches_networkx_power(self, g):
        expected = nx.power(to_nx(g), 2)
        assert square(g).edges == frozenset(tuple(sorted(e)) for e in expected.edges)

    @given(small_graphs(max_n=7))
    def test_diameter_two_squares_to_complete(self, g):
        if g.n >= 1 and diameter(g) <= 2:
            assert square(g).m == g.n * (g.n - 1) // 2


class TestDistances:
    def test_bfs_distance_on_path(self):
        g = path(6)
        assert bfs_distance(g, 0, 5) == 5
        assert bfs_distance(g, 3, 3) == 0

    def test_unreachable_is_infinite(self):
        g = build(4, [(0, 1), (2, 3)])
        assert bfs_distance(g, 0, 3) == math.inf
        assert diameter(g) == math.inf

    def test_diameter_of_cycle(self):
        assert diameter(cycle(7)) == 3

    @given(small_graphs(max_n=7))
    def test_diameter_matches_networkx(self, g):
        h = to_nx(g)
        if g.n and nx.is_connected(h):
            assert diameter(g) == nx.diameter(h)

    def test_neighborhoods(self):
        g = path(5)
        assert neighborhood(g, {2}) == {1, 3}
        assert closed_neighborhood(g, {0, 4}) == {0, 1, 3, 4}


# ===========================================================================
# girth / triangles
# ===========================================================================

class TestGirth:
    def test_triangle(self):
        assert girth(complete(3)) == 3

    def test_tree_is_infinite(self):
        assert girth(star(5)) == math.inf
        assert girth(path(8)) == math.inf

    def test_long_cycle(self):
        assert girth(cycle(11)) == 11

    def test_petersen(self):
        assert girth(build(10, nx.petersen_graph().edges)) == 5

    @given(small_graphs())
    @settings(max_examples=150)
    def test_matches_reference(self, g):
        assert girth(g) == nx_girth(to_nx(g))

    def test_find_triangle(self):
        assert find_triangle(cycle(6)) is None
        g = build(5, [(0, 1), (1, 2), (2, 3), (3, 1)])
        assert find_triangle(g) == (1, 2, 3)


# ===========================================================================
# degeneracy
# ===========================================================================

class TestDegeneracy:
    def test_forest_is_one_degenerate(self):
        g = build(7, [(0, 1), (1, 2), (1, 3), (4, 5)])
        d, order = degeneracy_ordering(g)
        assert d == 1
        assert sorted(order) == list(range(7))

    def test_k4_is_three_degenerate(self):
        assert degeneracy_ordering(complete(4))[0] == 3

    def test_star_order_starts_at_center(self):
        d, order = degeneracy_ordering(star(4))
        assert d == 1
        assert order == [0, 1, 2, 3, 4]

    def test_path_order(self):
        assert degeneracy_ordering(path(3)) == (1, [0, 1, 2])

    @given(small_graphs())
    def test_back_degrees_bounded(self, g):
        d, order = degeneracy_ordering(g)
        assert all(b <= d for b in back_degrees(g, order))

    @given(small_graphs())
    def test_matches_core_number(self, g):
        d, _ = degeneracy_ordering(g)
        expected = max(nx.core_number(to_nx(g)).values(), default=0)
        assert d == expected

    @given(small_graphs(max_n=6))
    @settings(max_examples=60)
    def test_no_ordering_beats_d(self, g):
        d, _ = degeneracy_ordering(g)
        best = min(
            (max(back_degrees(g, perm), default=0) for perm in itertools.permutations(range(g.n))),
            default=0,
        )
        assert best == d


# ===========================================================================
# blocks
# ===========================================================================

class TestBlocks:
    def test_bowtie(self):
        g = build(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
        dec = blocks(g)
        assert len(dec.blocks) == 2
        assert dec.cut_vertices == {2}

    def test_cycle_is_one_block(self):
        dec = blocks(cycle(6))
        assert len(dec.blocks) == 1
        assert dec.blocks[0].is_cycle()
        assert dec.cut_vertices == frozenset()

    def test_path_blocks_are_edges(self):
        dec = blocks(path(5))
        assert len(dec.blocks) == 4
        assert all(b.is_edge for b in dec.blocks)
        assert dec.cut_vertices == {1, 2, 3}

    @given(small_graphs())
    def test_blocks_partition_edges(self, g):
        dec = blocks(g)
        seen = [e for b in dec.blocks for e in b.edges]
        assert len(seen) == len(set(seen)) == g.m
        assert set(seen) == g.edges

    @given(small_graphs())
    def test_matches_networkx(self, g):
        h = to_nx(g)
        dec = blocks(g)
        ours = sorted(tuple(b.vertices) for b in dec.blocks)
        theirs = sorted(tuple(sorted(c)) for c in nx.biconnected_components(h))
        assert ours == theirs
        assert dec.cut_vertices == set(nx.articulation_points(h))


# ===========================================================================
# bipartiteness
# ===========================================================================

class TestBipartite:
    def test_c5_has_odd_cycle_witness(self):
        res = is_bipartite(cycle(5))
        assert not res.is_bipartite
        assert sorted(res.odd_cycle) == [0, 1, 2, 3, 4]

    def test_c6_two_colored(self):
        res = is_bipartite(cycle(6))
        assert res.is_bipartite
        assert all(res.sides[u] != res.sides[v] for u, v in cycle(6).edges)

    @given(small_graphs())
    def test_witness_either_way(self, g):
        res = is_bipartite(g)
        assert res.is_bipartite == nx.is_bipartite(to_nx(g))
        if res.is_bipartite:
            assert all(res.sides[u] != res.sides[v] for u, v in g.edges)
        else:
            cyc = res.odd_cycle
            assert len(cyc) % 2 == 1
            assert len(set(cyc)) == len(cyc)
            for i in range(len(cyc)):
                assert g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)])


# ===========================================================================
# subgraphs
# ===========================================================================

class TestSubgraphs:
    def test_induced_relabels(self):
        g = cycle(6)
        sub, mapping = induced(g, [4, 0, 5])
        assert mapping == (0, 4, 5)
        assert sub.edges == {(0, 2), (1, 2)}

    def test_remove(self):
        sub, mapping = remove(star(4), {0})
        assert sub.m == 0 and mapping == (1, 2, 3, 4)

    def test_disjoint_union(self):
        g, offsets = disjoint_union([complete(3), path(2)])
        assert offsets == [0, 3]
        assert g.n == 5 and g.m == 4
        assert g.has_edge(3, 4)

    def test_components(self):
        g = build(6, [(0, 3), (3, 5), (1, 2)])
        assert components(g) == [(0, 3, 5), (1, 2), (4,)]


# ===========================================================================
# text format
# ===========================================================================

class TestTextFormat:
    def test_writer_is_sorted_and_one_based(self):
        g = build(3, [(2, 1), (0, 2)])
        assert write_graph(g, ["triangle-free"]) == "c triangle-free\np 3 2\ne 1 3\ne 2 3\n"

    @given(small_graphs())
    def test_round_trip_is_canonical(self, g):
        text = write_graph(g)
        back, comments = read_graph(text)
        assert back == g
        assert comments == []
        assert write_graph(back) == text

    def test_comments_returned(self):
        g, comments = read_graph("c hello world\np 2 1\ne 1 2\n")
        assert comments == ["hello world"]
        assert g.m == 1

    def test_edge_count_mismatch(self):
        with pytest.raises(FormatError):
            read_graph("p 3 2\ne 1 2\n")

    def test_bad_endpoint_names_line(self):
        with pytest.raises(FormatError) as exc:
            read_graph("c x\np 3 1\ne 1 4\n")
        assert exc.value.line_no == 3

    def test_self_loop_in_file(self):
        with pytest.raises(FormatError) as exc:
            read_graph("p 3 1\ne 2 2\n")
        assert exc.value.line_no == 2

    def test_missing_header(self):
        with pytest.raises(FormatError):
            read_graph("e 1 2\n")
