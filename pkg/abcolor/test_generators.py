"""
Tests for the graph generators (abcolor/generators.py).

Extremal families are re-certified with the exact solver at small
parameters; random families are checked against their class validators.

Run with:  python -m pytest abcolor/test_generators.py -v
"""

import itertools
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcolor.colorers.outerplanar import elimination_order
from abcolor.coloring import Params
from abcolor.errors import PreconditionError
from abcolor.generators import (
    FAMILIES, apex_of_copies, gen_blowup, gen_fig5, gen_fig6, gen_fig8,
    gen_forced_vertex, gen_friendship, gen_girth_families, gen_windmill,
    get_family, grid, list_families, random_cactus, random_kdegenerate,
    random_stacked_triangulation, random_subdivided_triangulation,
    random_tf_outerplanar,
)
from abcolor.graph import (
    blocks, build, degeneracy_ordering, diameter, find_triangle, girth,
    is_bipartite,
)
from abcolor.solver import ForcedD2, GadgetSpec, Status, Verdict, check_gadget, decide


# ===========================================================================
# Helpers
# ===========================================================================

def colorable(g, a, b):
    return decide(g, Params(a, b)).status is Status.COLORABLE


def not_colorable(g, a, b):
    return decide(g, Params(a, b)).status is Status.NOT_COLORABLE


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@st.composite
def small_graphs(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build(n, edges)


# ===========================================================================
# Extremal families
# ===========================================================================

class TestFig5:
    def test_order_formula(self):
        for k, l in [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)]:
            g = gen_fig5(k, l)
            assert g.n == k * l * l + (2 * k + 1) * l + k + 2

    def test_smallest_order(self):
        assert gen_fig5(1, 1).n == 7

    def test_structure(self):
        k, l = 2, 2
        g = gen_fig5(k, l)
        assert g.degree(0) == l + 1
        d, _ = degeneracy_ordering(g)
        assert d <= k
        # each clique together with its u_i is a (k+1)-clique
        for u in range(1, l + 2):
            outer = [w for w in g.adjacency[u] if w != 0]
            assert len(outer) == k * (l + 1)
            for w in outer:
                assert sum(1 for x in g.adjacency[w] if x in outer) == k - 1

    def test_not_colorable_at_1_2(self):
        g = gen_fig5(1, 2)
        assert not_colorable(g, 1, 2)
        assert colorable(g, 1, 3)

    def test_not_colorable_at_2_1(self):
        assert not_colorable(gen_fig5(2, 1), 2, 1)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            gen_fig5(0, 1)


class TestFig6:
    def test_k2_shape(self):
        g = gen_fig6(2)
        assert g.n == 8
        assert girth(g) == 6
        assert is_bipartite(g).is_bipartite
        assert g.degree(0) == g.degree(1) == 3

    def test_k2_not_colorable(self):
        assert not_colorable(gen_fig6(2), 1, 2)

    def test_k3_threshold(self):
        g = gen_fig6(3)
        assert g.n == 12
        assert not_colorable(g, 1, 3)
        assert colorable(g, 1, 4)

    def test_k1_rejected(self):
        with pytest.raises(ValueError):
            gen_fig6(1)


class TestFig8:
    def test_k1_is_k4(self):
        g = gen_fig8(1)
        assert g.n == 4
        assert g.m == 6

    def test_k2_threshold(self):
        g = gen_fig8(2)
        assert g.n == 7
        assert not_colorable(g, 2, 2)
        assert colorable(g, 2, 3)

    def test_diameter_two(self):
        for k in (2, 3, 5):
            g = gen_fig8(k)
            assert g.n == 3 * k + 1
            assert diameter(g) == 2


class TestWindmill:
    def test_friendship_k1_forced(self):
        spec = gen_friendship(1)
        assert spec.graph.n == 5
        assert spec.params == Params(2, 1)
        assert check_gadget(spec).verdict is Verdict.HOLDS

    def test_friendship_k2_forced_and_colorable(self):
        spec = gen_friendship(2)
        assert spec.graph.n == 7
        assert check_gadget(spec).verdict is Verdict.HOLDS
        assert colorable(spec.graph, 2, 2)

    def test_outer_vertex_not_forced(self):
        spec = gen_friendship(1)
        other = GadgetSpec(spec.graph, {"s": 1}, (ForcedD2("s"),), Params(2, 1))
        check = check_gadget(other)
        assert check.verdict is Verdict.FAILS
        assert check.witness is not None

    def test_k4_windmill(self):
        spec = gen_windmill(3, 1)
        assert spec.graph.n == 7
        assert check_gadget(spec).verdict is Verdict.HOLDS


class TestBlowup:
    def test_edge_becomes_c4(self):
        g = gen_blowup(build(2, [(0, 1)]), 1)
        assert g.n == 4
        assert g.m == 4
        assert girth(g) == 4

    def test_triangle(self):
        g = gen_blowup(build(3, [(0, 1), (1, 2), (0, 2)]), 1)
        assert g.n == 6
        assert colorable(g, 3, 1)

    def test_k4(self):
        k4 = build(4, itertools.combinations(range(4), 2))
        assert not_colorable(k4, 3, 0)
        assert not_colorable(gen_blowup(k4, 1), 3, 1)

    @given(small_graphs())
    @settings(max_examples=30, deadline=None)
    def test_three_colorability_preserved(self, g):
        blown = gen_blowup(g, 1)
        expected = colorable(g, 3, 0)
        assert colorable(blown, 3, 1) == expected
        assert colorable(blown, 3, 0) == expected


# ===========================================================================
# Forced-vertex constructions
# ===========================================================================

class TestForcedVertex:
    def test_apex_of_copies_not_colorable(self):
        for k in (1, 2):
            g = apex_of_copies(gen_friendship(k), k)
            assert g.n == (k + 1) * (2 * k + 3) + 1
            assert not_colorable(g, 2, k)

    def test_round_trip_k1(self):
        g_prime = apex_of_copies(gen_friendship(1), 1)
        apex = g_prime.n - 1
        v1, v2 = g_prime.adjacency[apex]
        spec = gen_forced_vertex(g_prime, apex, v1, v2, 1)
        assert spec.params == Params(2, 1)
        assert spec.name == "forced-vertex[c]"
        assert check_gadget(spec).verdict is Verdict.HOLDS
        assert colorable(spec.graph, 2, 1)

    def test_colorable_graph_rejected(self):
        g = build(3, [(0, 1), (1, 2)])
        with pytest.raises(PreconditionError):
            gen_forced_vertex(g, 1, 0, 2, 1)

    def test_wrong_neighbors_rejected(self):
        g = build(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(PreconditionError):
            gen_forced_vertex(g, 1, 0, 3, 1)


# ===========================================================================
# Random families
# ===========================================================================

class TestRandomFamilies:
    def test_kdegenerate(self):
        g = random_kdegenerate(100, 2, seed=1)
        d, _ = degeneracy_ordering(g)
        assert g.n == 100
        assert d <= 2

    def test_kdegenerate_deterministic(self):
        assert random_kdegenerate(60, 3, seed=5) == random_kdegenerate(60, 3, seed=5)

    def test_cactus_blocks(self):
        g = random_cactus(50, seed=7)
        assert g.n == 50
        for b in blocks(g).blocks:
            assert b.is_edge or (b.is_cycle() and len(b.vertices) >= 4)

    def test_tf_outerplanar(self):
        for seed in range(5):
            g = random_tf_outerplanar(80, seed=seed)
            assert find_triangle(g) is None
            assert len(elimination_order(g)) == g.n
            assert nx.check_planarity(to_nx(g))[0]

    def test_stacked_triangulation(self):
        g = random_stacked_triangulation(40, seed=3)
        assert g.m == 3 * g.n - 6
        assert nx.check_planarity(to_nx(g))[0]

    def test_subdivided(self):
        g = random_subdivided_triangulation(20, seed=3)
        assert g.n == 20 + (3 * 20 - 6)
        assert girth(g) >= 6
        assert is_bipartite(g).is_bipartite
        assert nx.check_planarity(to_nx(g))[0]

    def test_grid(self):
        g = grid(3, 3)
        assert g.n == 9
        assert girth(g) == 4
        assert is_bipartite(g).is_bipartite

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            random_stacked_triangulation(2)
        with pytest.raises(ValueError):
            random_cactus(10, girth=2)
        with pytest.raises(ValueError):
            grid(0, 4)


class TestRegistry:
    def test_list_families(self):
        keys = [f["key"] for f in list_families()]
        assert "fig5" in keys and "random-cactus" in keys
        assert len(keys) == len(FAMILIES)

    def test_get_family(self):
        assert get_family("grid") is grid
        with pytest.raises(ValueError):
            get_family("petersen")

    def test_girth_families_not_generated(self):
        with pytest.raises(NotImplementedError):
            gen_girth_families(4, 2)
