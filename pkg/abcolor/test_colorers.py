"""
Tests for the constructive colorers (abcolor/colorers/).

Every coloring is checked with the verifier and every certificate
against its claimed bound.

Run with:  python -m pytest abcolor/test_colorers.py -v
"""

import itertools
import math
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

import numpy as np
import pytest

from abcolor.colorers import (
    cluster, color_cactus_g4, color_degenerate, color_planar, color_planar_g4,
    color_tf_outerplanar, dominated_peel, elimination_order, greedy_2distance,
    list_colorers, oct_for_cluster, peel_homomorphism, run_colorer, vc_outerplanar,
)
from abcolor.colorers.bounds import finish
from abcolor.coloring import Params, count_classes, d1, verify
from abcolor.config import ColorerConfig
from abcolor.errors import OracleFailure, PreconditionError
from abcolor.generators import (
    grid, random_cactus, random_kdegenerate, random_stacked_triangulation,
    random_subdivided_triangulation, random_tf_outerplanar,
)
from abcolor.graph import (
    bfs_distances, build, components, degeneracy_ordering,
    disjoint_union, induced, is_bipartite, remove, square_adjacency,
)
from abcolor.solver import Status, decide


# ===========================================================================
# Helpers
# ===========================================================================

def path(n):
    return build(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return build(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n):
    return build(n, itertools.combinations(range(n), 2))


def icosahedron():
    top, bottom = 0, 11
    upper = list(range(1, 6))
    lower = list(range(6, 11))
    edges = []
    for i in range(5):
        edges += [(top, upper[i]), (bottom, lower[i])]
        edges += [(upper[i], upper[(i + 1) % 5]), (lower[i], lower[(i + 1) % 5])]
        edges += [(upper[i], lower[i]), (upper[i], lower[(i + 1) % 5])]
    return build(12, edges)


def assert_valid(g, a, coloring):
    used_d1, used_d2 = count_classes(coloring)
    assert used_d1 <= a
    assert verify(g, Params(a, used_d2), coloring) == []


def random_dominating_set(g, rng):
    s = set()
    for v in rng.permutation(g.n):
        if not (set(g.adjacency[v]) | {v}) & s:
            s.add(int(v))
    return s


# ===========================================================================
# dominated_peel / greedy_2distance
# ===========================================================================

class TestDominatedPeel:
    def test_star(self):
        t, colors = dominated_peel(star(5), {0}, 1)
        assert t == frozenset({0})
        assert all(colors[v] == 0 for v in range(1, 6))

    def test_path(self):
        g = path(3)
        t, colors = dominated_peel(g, {1}, 1)
        assert 1 in t
        assert len(t) <= 2
        for u, v in g.edges:
            if u not in t and v not in t:
                assert colors[u] != colors[v]

    def test_random_2_degenerate(self):
        rng = np.random.default_rng(3)
        for seed in range(10):
            g = random_kdegenerate(80, 2, seed=seed)
            s = random_dominating_set(g, rng)
            t, colors = dominated_peel(g, s, 2)
            assert s <= t
            assert len(t) <= 3 * len(s)
            assert set(colors) == set(g.vertices) - t
            for u, v in g.edges:
                if u not in t and v not in t:
                    assert colors[u] != colors[v]
                    assert 0 <= colors[u] < 2

    def test_not_dominating(self):
        with pytest.raises(PreconditionError):
            dominated_peel(path(4), {0}, 1)

    def test_degeneracy_too_high(self):
        with pytest.raises(PreconditionError):
            dominated_peel(complete(4), {0}, 2)


class TestGreedy2Distance:
    def test_c6(self):
        g = cycle(6)
        classes, count = greedy_2distance(g)
        assert count <= 7
        sq = square_adjacency(g)
        for v in g.vertices:
            assert all(classes[v] != classes[w] for w in sq[v])

    def test_star(self):
        _, count = greedy_2distance(star(6))
        assert count == 7

    def test_degenerate_bound(self):
        g = random_kdegenerate(300, 3, seed=2)
        d, _ = degeneracy_ordering(g)
        _, count = greedy_2distance(g)
        assert count <= (2 * d - 1) * g.max_degree + 1


# ===========================================================================
# color_degenerate
# ===========================================================================

class TestDegenerate:
    def test_forest(self):
        g = random_kdegenerate(2000, 1, seed=4)
        coloring, cert = color_degenerate(g, 1)
        assert_valid(g, 1, coloring)
        assert cert.holds()
        assert cert.used_d2 <= 4 * math.sqrt(2) * math.sqrt(g.n)

    def test_k4(self):
        coloring, cert = color_degenerate(complete(4), 3)
        assert count_classes(coloring) == (3, 1)
        assert cert.holds()

    def test_bound_for_k_up_to_3(self):
        for k in (1, 2, 3):
            g = random_kdegenerate(1000, k, seed=k)
            coloring, cert = color_degenerate(g, k)
            assert_valid(g, k, coloring)
            assert cert.used_d2 <= 4 * k * math.sqrt(k + 1) * math.sqrt(g.n)
            assert cert.details["T"] <= (k + 1) * cert.s_size

    def test_default_k_is_degeneracy(self):
        g = random_kdegenerate(200, 2, seed=9)
        _, cert = color_degenerate(g)
        d, _ = degeneracy_ordering(g)
        assert cert.details["k"] == d

    def test_without_compaction(self):
        g = random_kdegenerate(300, 2, seed=1)
        coloring, _ = color_degenerate(g, 2, ColorerConfig(compact=False))
        assert_valid(g, 2, coloring)

    def test_rejects_low_k(self):
        with pytest.raises(PreconditionError):
            color_degenerate(complete(4), 2)

    def test_bound_line(self):
        _, cert = color_degenerate(random_kdegenerate(100, 2, seed=0), 2)
        assert cert.bound_line().startswith("c BOUND n=100 N=")
        assert "claim=4*2*sqrt(3)*sqrt(n)=" in cert.bound_line()


# ===========================================================================
# Cactus
# ===========================================================================

class TestCactus:
    def test_c4(self):
        coloring = color_cactus_g4(cycle(4))
        assert_valid(cycle(4), 2, coloring)
        assert count_classes(coloring)[1] <= 1

    def test_two_c5_sharing_vertex(self):
        g = build(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                      (0, 5), (5, 6), (6, 7), (7, 8), (8, 0)])
        coloring = color_cactus_g4(g)
        assert_valid(g, 2, coloring)
        assert count_classes(coloring)[1] <= 1
        assert decide(g, Params(2, 1)).status is Status.COLORABLE

    def test_random(self):
        for seed in range(5):
            g = random_cactus(400, seed=seed)
            coloring = color_cactus_g4(g)
            assert_valid(g, 2, coloring)
            assert count_classes(coloring)[1] <= 1

    def test_odd_cycles_chained(self):
        # C5 - C7 - C5 chained through cut vertices
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(4 + i, 4 + (i + 1) % 7) for i in range(7)]
        edges += [(10 + i, 10 + (i + 1) % 5) for i in range(5)]
        g = build(15, edges)
        assert_valid(g, 2, color_cactus_g4(g))

    def test_forest_and_isolated(self):
        g = build(6, [(0, 1), (1, 2), (3, 4)])
        assert_valid(g, 2, color_cactus_g4(g))

    def test_triangle_rejected(self):
        with pytest.raises(PreconditionError):
            color_cactus_g4(complete(3))

    def test_not_a_cactus(self):
        k23 = build(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        with pytest.raises(PreconditionError):
            color_cactus_g4(k23)


# ===========================================================================
# Outerplanar
# ===========================================================================

class TestPeelHomomorphism:
    @staticmethod
    def _check(g, f, q):
        for u, v in g.edges:
            assert (f[u] - f[v]) % q in (1, q - 1)

    def test_c5(self):
        f = peel_homomorphism(cycle(5), 5)
        self._check(cycle(5), f, 5)
        assert sorted(f) == [0, 1, 2, 3, 4]

    def test_c4(self):
        self._check(cycle(4), peel_homomorphism(cycle(4), 4), 5)

    def test_longer_odd_target(self):
        g = cycle(9)
        self._check(g, peel_homomorphism(g, 7), 7)

    def test_random_tf_outerplanar(self):
        for seed in range(3):
            g = random_tf_outerplanar(300, seed=seed)
            self._check(g, peel_homomorphism(g, 4), 5)

    def test_cactus(self):
        g = random_cactus(200, seed=1, girth=5)
        self._check(g, peel_homomorphism(g, 5), 5)

    def test_girth_too_small(self):
        with pytest.raises(PreconditionError):
            peel_homomorphism(complete(3), 4)

    def test_not_outerplanar(self):
        k23 = build(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        with pytest.raises(PreconditionError):
            peel_homomorphism(k23, 4)

    def test_bad_girth_argument(self):
        with pytest.raises(ValueError):
            peel_homomorphism(cycle(5), 2)


class TestVertexCover:
    @staticmethod
    def _covers(g, cover):
        return all(u in cover or v in cover for u, v in g.edges)

    def test_c5(self):
        cover = vc_outerplanar(cycle(5), 5)
        assert self._covers(cycle(5), cover)
        assert len(cover) <= 3

    def test_disjoint_c5(self):
        m = 6
        g, _ = disjoint_union([cycle(5)] * m)
        cover = vc_outerplanar(g, 4)
        assert self._covers(g, cover)
        assert len(cover) == 3 * m

    def test_random(self):
        g = random_tf_outerplanar(300, seed=11)
        cover = vc_outerplanar(g, 4)
        assert self._covers(g, cover)
        assert len(cover) <= 180


class TestEliminationOrder:
    def test_outerplanar_complete(self):
        g = random_tf_outerplanar(100, seed=2)
        assert sorted(elimination_order(g)) == list(g.vertices)

    def test_k4_stalls(self):
        with pytest.raises(PreconditionError):
            elimination_order(complete(4))


class TestTfOuterplanar:
    def test_star(self):
        g = star(9)
        coloring, cert = color_tf_outerplanar(g)
        assert_valid(g, 1, coloring)
        assert count_classes(coloring) == (1, 1)
        assert cert.holds()

    def test_c6(self):
        coloring, cert = color_tf_outerplanar(cycle(6))
        assert_valid(cycle(6), 1, coloring)
        assert cert.holds()

    def test_random_bound(self):
        g = random_tf_outerplanar(2000, seed=5)
        coloring, cert = color_tf_outerplanar(g)
        assert_valid(g, 1, coloring)
        assert cert.used_d2 <= 4 * math.sqrt(34 / 5) * math.sqrt(g.n) - 1
        assert cert.details["V_prime"] <= 4 * cert.s_size

    def test_triangle_rejected(self):
        with pytest.raises(PreconditionError):
            color_tf_outerplanar(complete(3))


# ===========================================================================
# Planar
# ===========================================================================

class TestCluster:
    def test_adjacent_seeds_merge(self):
        part = cluster(path(4), {1, 2})
        assert part.parts == (frozenset({1, 2}),)

    def test_far_seeds_stay(self):
        part = cluster(path(6), {0, 5})
        assert part.parts == (frozenset({0}), frozenset({5}))
        assert part.s_prime == frozenset({0, 5})

    def test_distance_three_absorbs_path(self):
        part = cluster(path(4), {0, 3})
        assert part.s_prime == frozenset({0, 1, 2, 3})

    def test_random_invariants(self):
        rng = np.random.default_rng(8)
        for seed in range(40):
            g = random_stacked_triangulation(40, seed=seed) if seed % 2 else grid(7, 7)
            seeds = {int(v) for v in rng.choice(g.n, size=int(rng.integers(1, 8)), replace=False)}
            part = cluster(g, seeds)
            assert seeds <= part.s_prime
            assert len(part.s_prime) <= 3 * len(seeds)
            assert frozenset().union(*part.parts) == part.s_prime
            for p in part.parts:
                sub, _ = induced(g, p)
                assert len(components(sub)) == 1
            for p, q in itertools.combinations(part.parts, 2):
                for x in p:
                    reach = bfs_distances(g, x, max_depth=3)
                    assert not any(y in reach for y in q)


class TestOct:
    def test_bipartite_rest(self):
        assert oct_for_cluster(grid(4, 4), {0}) == frozenset()

    def test_c5(self):
        g = cycle(5)
        x = oct_for_cluster(g, set())
        assert len(x) == 1
        rest, _ = remove(g, x)
        assert is_bipartite(rest).is_bipartite

    def test_hub_over_c5(self):
        # hub 0 sees two non-adjacent vertices of the 5-cycle 1..5
        g = build(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (0, 1), (0, 3)])
        x = oct_for_cluster(g, {0})
        assert 0 not in x
        assert len(x) <= 5 / 3
        rest, _ = remove(g, x | {0})
        assert is_bipartite(rest).is_bipartite


class TestPlanarG4:
    def test_grid(self):
        g = grid(50, 50)
        coloring, cert = color_planar_g4(g)
        assert_valid(g, 2, coloring)
        assert cert.holds()
        assert cert.used_d2 <= 8 * math.sqrt(10) * 50

    def test_c6(self):
        coloring, cert = color_planar_g4(cycle(6))
        assert_valid(cycle(6), 2, coloring)
        assert cert.used_d2 <= 1

    def test_subdivided(self):
        g = random_subdivided_triangulation(200, seed=4, max_subdivisions=2)
        coloring, cert = color_planar_g4(g)
        assert_valid(g, 2, coloring)
        assert cert.holds()

    def test_parallel_matches_sequential(self):
        g = random_tf_outerplanar(600, seed=3)
        seq, _ = color_planar_g4(g, ColorerConfig(n_jobs=1))
        par, _ = color_planar_g4(g, ColorerConfig(n_jobs=2))
        assert seq == par

    def test_triangle_rejected(self):
        with pytest.raises(PreconditionError):
            color_planar_g4(complete(3))


class TestPlanar:
    def test_icosahedron(self):
        g = icosahedron()
        coloring, cert = color_planar(g)
        assert_valid(g, 3, coloring)
        assert cert.holds()

    def test_k4(self):
        coloring, _ = color_planar(complete(4))
        assert count_classes(coloring) == (3, 1)

    def test_stacked_triangulation(self):
        g = random_stacked_triangulation(1000, seed=6)
        coloring, cert = color_planar(g)
        assert_valid(g, 3, coloring)
        assert cert.used_d2 <= 18 * math.sqrt(2) * math.sqrt(g.n)


# ===========================================================================
# Registry
# ===========================================================================

class TestRegistry:
    def test_list(self):
        keys = [c["key"] for c in list_colorers()]
        assert keys == ["degenerate", "cactus", "tf-outerplanar", "planar-g4", "planar"]

    def test_run_cactus(self):
        coloring, p, cert = run_colorer("cactus", cycle(5))
        assert p == Params(2, 1)
        assert cert is None
        assert verify(cycle(5), p, coloring) == []

    def test_run_degenerate(self):
        g = random_kdegenerate(100, 2, seed=3)
        coloring, p, cert = run_colorer("degenerate", g)
        assert p.a == cert.details["k"]
        assert verify(g, p, coloring) == []

    def test_unknown(self):
        with pytest.raises(ValueError):
            run_colorer("greedy", cycle(5))

    @pytest.mark.parametrize("key", [c["key"] for c in list_colorers()])
    def test_empty_graph_meets_claim(self, key):
        coloring, p, cert = run_colorer(key, build(0, []))
        assert coloring.n == 0
        assert cert is None or cert.holds()
        if cert is not None:
            assert cert.claim >= 0

    def test_invalid_raw_coloring_is_oracle_failure(self):
        with pytest.raises(OracleFailure):
            finish(build(2, [(0, 1)]), 1, [d1(0), d1(0)], "broken", False)
