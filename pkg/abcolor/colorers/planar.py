"""
Planar colorers: clustering of the high-degree set, odd cycle
transversals around a cluster, and the (2,b) / (3,b) colorers.

Both colorers share one shape:

1. S = vertices of degree at least N, grown by ``cluster`` into connected
   parts at pairwise distance at least 4;
2. every vertex of S' takes its own D2 class (plus, for girth >= 4, the
   transversal of each part's neighborhood), and N(S') takes D1 colors;
3. the vertices outside N[S'] are colored first-fit on the square of
   G - S' with a fresh pool of D2 classes.

Planarity itself is trusted, not tested.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from joblib import Parallel, delayed

from abcolor.colorers.bounds import (
    PLANAR_CLAIM, PLANAR_G4_CLAIM, BoundCertificate, ClusterPartition, finish,
    high_degree_set, make_certificate,
)
from abcolor.colorers.degenerate import greedy_2distance
from abcolor.coloring import Color, MixedColoring, Params, Tag, d1, d2
from abcolor.config import Budget, ColorerConfig
from abcolor.errors import OracleFailure, PreconditionError
from abcolor.graph import (
    Graph, VertexSet, blocks, closed_neighborhood, components, degeneracy_ordering,
    find_triangle, induced, is_bipartite, neighborhood, remove,
)
from abcolor.solver import Status, decide

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Clustering
# ---------------------------------------------------------------------------

def cluster(g: Graph, s: Iterable[int]) -> ClusterPartition:
    """
    Merge seed vertices into connected parts at pairwise distance >= 4.

    Starting from singletons, a part that sees another part within
    distance 3 absorbs it together with the interior of a shortest
    connecting path (at most 2 vertices), until no such pair is left.
    Each merge removes a part and adds at most 2 vertices, so
    ``|S'| <= 3|S|``.
    """
    seeds = sorted(set(s))
    part_of: Dict[int, int] = {v: v for v in seeds}
    members: Dict[int, List[int]] = {v: [v] for v in seeds}
    work = deque(seeds)
    while work:
        pid = work.popleft()
        if pid not in members:
            continue
        hit = _nearest_other_part(g, members[pid], pid, part_of)
        if hit is None:
            continue
        other, interior = hit
        for v in members.pop(other):
            part_of[v] = pid
            members[pid].append(v)
        for v in interior:
            part_of[v] = pid
            members[pid].append(v)
        work.appendleft(pid)

    parts = tuple(sorted((frozenset(m) for m in members.values()), key=min))
    s_prime = frozenset(part_of)
    logger.debug("cluster: %d seeds -> %d parts, |S'| = %d", len(seeds), len(parts), len(s_prime))
    return ClusterPartition(s_prime=s_prime, parts=parts, seed_size=len(seeds))


def _nearest_other_part(
    g: Graph, part: List[int], pid: int, part_of: Dict[int, int]
) -> Optional[Tuple[int, List[int]]]:
    """BFS from ``part`` to depth 3; the first vertex of another part and the path interior."""
    parent = {v: -1 for v in part}
    dist = {v: 0 for v in part}
    queue = deque(sorted(part))
    while queue:
        x = queue.popleft()
        if dist[x] == 3:
            continue
        for y in g.adjacency[x]:
            if y in dist:
                continue
            dist[y] = dist[x] + 1
            parent[y] = x
            if part_of.get(y, pid) != pid:
                interior = []
                z = x
                while dist[z] > 0:
                    interior.append(z)
                    z = parent[z]
                return part_of[y], interior
            queue.append(y)
    return None


# ---------------------------------------------------------------------------
# Odd cycle transversal around a cluster
# ---------------------------------------------------------------------------

def oct_for_cluster(g: Graph, d: Iterable[int], budget: Optional[Budget] = None) -> VertexSet:
    """
    A set X meeting every odd cycle of ``g - d``.

    U is the union of the non-bipartite blocks of ``g - d``; every odd
    cycle lies inside one block, hence inside U.  Each component of G[U]
    is 3-colored by the exact solver and X takes its smallest class, so
    ``|X| <= |U|/3``.  A failed or inconclusive 3-coloring raises
    :class:`OracleFailure`.
    """
    h, h_map = remove(g, d)
    odd = set()
    for b in blocks(h).blocks:
        if b.is_edge:
            continue
        sub, _ = induced(h, b.vertices)
        if not is_bipartite(sub).is_bipartite:
            odd.update(b.vertices)
    if not odd:
        return frozenset()

    u_graph, u_map = induced(h, odd)
    chosen: List[int] = []
    for comp in components(u_graph):
        part, part_map = induced(u_graph, comp)
        outcome = decide(part, Params(3, 0), budget or Budget(max_nodes=2_000_000))
        if outcome.status is not Status.COLORABLE:
            raise OracleFailure(
                f"3-coloring of a {part.n}-vertex odd block union returned {outcome.status.value}"
            )
        classes = outcome.witness.classes(Tag.D1)
        smallest = min(classes.values(), key=lambda members: (len(members), members))
        chosen.extend(h_map[u_map[part_map[i]]] for i in smallest)
    return frozenset(chosen)


# ---------------------------------------------------------------------------
# Colorers
# ---------------------------------------------------------------------------

def color_planar_g4(
    g: Graph,
    config: Optional[ColorerConfig] = None,
) -> Tuple[MixedColoring, BoundCertificate]:
    """(2, 8*sqrt(10)*sqrt(n))-coloring of a planar graph of girth at least 4."""
    config = config or ColorerConfig()
    tri = find_triangle(g)
    if tri is not None:
        raise PreconditionError(f"girth below 4: triangle {tuple(v + 1 for v in tri)}")

    n = g.n
    squared = Fraction(32 * n, 5)
    s = high_degree_set(g, squared)
    partition = cluster(g, s)

    results = Parallel(n_jobs=config.n_jobs)(
        delayed(_color_part)(g, part, config.oracle) for part in partition.parts
    )

    colors: List[Optional[Color]] = [None] * n
    next_d2 = 0
    transversal = 0
    for d2_vertices, d1_colors in results:
        for v in d2_vertices:
            colors[v] = d2(next_d2)
            next_d2 += 1
        for v, i in d1_colors.items():
            colors[v] = d1(i)
        transversal += len(d2_vertices)
    transversal -= len(partition.s_prime)

    _color_remainder(g, partition.s_prime, colors, next_d2)
    coloring = finish(g, 2, colors, "planar-g4", config.compact)
    cert = make_certificate(
        "planar-g4", g, math.sqrt(squared), s, partition.s_prime, coloring, PLANAR_G4_CLAIM,
        details={"parts": len(partition.parts), "transversal": transversal},
    )
    logger.info(
        "planar-g4: n=%d |S|=%d |S'|=%d parts=%d used_d2=%d",
        n, len(s), len(partition.s_prime), len(partition.parts), cert.used_d2,
    )
    return coloring, cert


def _color_part(g: Graph, part: VertexSet, oracle: Budget) -> Tuple[List[int], Dict[int, int]]:
    """D2 vertices (the part and its transversal) and a D1 2-coloring of the rest of N(part)."""
    around, around_map = induced(g, closed_neighborhood(g, part))
    index = {v: i for i, v in enumerate(around_map)}
    x = oct_for_cluster(around, (index[v] for v in part), oracle)
    transversal = sorted(around_map[i] for i in x)

    rest = sorted(neighborhood(g, part) - part - set(transversal))
    sub, sub_map = induced(g, rest)
    res = is_bipartite(sub)
    if not res.is_bipartite:
        raise OracleFailure(f"neighborhood of part at {min(part) + 1} is not bipartite after removing the transversal")
    d1_colors = {sub_map[i]: res.sides[i] for i in range(sub.n)}
    return sorted(part) + transversal, d1_colors


def color_planar(
    g: Graph,
    config: Optional[ColorerConfig] = None,
) -> Tuple[MixedColoring, BoundCertificate]:
    """(3, 18*sqrt(2)*sqrt(n))-coloring of a planar graph."""
    config = config or ColorerConfig()
    n = g.n
    squared = Fraction(2 * n)
    s = high_degree_set(g, squared)
    partition = cluster(g, s)
    s_prime = partition.s_prime

    colors: List[Optional[Color]] = [None] * n
    for j, v in enumerate(sorted(s_prime)):
        colors[v] = d2(j)

    # N(S') is outerplanar around each part, hence 2-degenerate
    ring = neighborhood(g, s_prime) - s_prime
    sub, sub_map = induced(g, ring)
    _, order = degeneracy_ordering(sub)
    local: Dict[int, int] = {}
    for i in order:
        taken = {local[w] for w in sub.adjacency[i] if w in local}
        free = next((c for c in range(3) if c not in taken), None)
        if free is None:
            raise PreconditionError(
                f"neighborhood of S' needs a 4th color at vertex {sub_map[i] + 1}; the input is not planar"
            )
        local[i] = free
    for i, c in local.items():
        colors[sub_map[i]] = d1(c)

    _color_remainder(g, s_prime, colors, len(s_prime))
    coloring = finish(g, 3, colors, "planar", config.compact)
    cert = make_certificate(
        "planar", g, math.sqrt(squared), s, s_prime, coloring, PLANAR_CLAIM,
        details={"parts": len(partition.parts)},
    )
    logger.info("planar: n=%d |S|=%d |S'|=%d used_d2=%d", n, len(s), len(s_prime), cert.used_d2)
    return coloring, cert


def _color_remainder(g: Graph, s_prime: VertexSet, colors: List[Optional[Color]], base: int) -> None:
    """Fresh D2 classes from ``base`` on the vertices outside N[S'], first-fit on G - S'."""
    rest, rest_map = remove(g, s_prime)
    classes, _ = greedy_2distance(rest)
    for i, v in enumerate(rest_map):
        if colors[v] is None:
            colors[v] = d2(base + classes[i])
