"""
Colorers for k-degenerate graphs.

color_degenerate
----------------
1. S = vertices of degree at least N = sqrt((k+1) n).
2. ``dominated_peel`` on G[N[S]] splits N[S] into T, with |T| <= (k+1)|S|,
   and a k-colorable rest.  T takes one fresh D2 class per vertex, the rest
   takes the k D1 colors.
3. The vertices outside N[S] are never adjacent to S, so a distance-2
   coloring of G - S restricted to them is compatible with step 2.  It
   comes from ``greedy_2distance`` with a fresh pool of D2 classes.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from abcolor.colorers.bounds import (
    BoundCertificate, degenerate_claim, finish, high_degree_set, make_certificate,
)
from abcolor.coloring import Color, MixedColoring, d1, d2
from abcolor.config import ColorerConfig
from abcolor.errors import PreconditionError
from abcolor.graph import (
    Graph, VertexSet, closed_neighborhood, degeneracy_ordering, induced, remove,
    square_adjacency,
)

logger = logging.getLogger(__name__)


def dominated_peel(g: Graph, s: Iterable[int], k: int) -> Tuple[VertexSet, Dict[int, int]]:
    """
    Split ``g`` into a set ``t`` containing ``s`` and a k-colored rest.

    Vertices are visited along a degeneracy ordering, so each has at most
    ``k`` earlier neighbors.  A vertex of ``s`` joins ``t``; any other
    vertex takes the first of the ``k`` colors its earlier colored
    neighbors leave free, and joins ``t`` only when none is free.  A
    vertex with an earlier neighbor in ``t`` always finds a free color,
    which gives ``|t| <= (k+1)|s|`` when ``s`` dominates ``g``.

    Returns ``(t, colors)`` with ``colors`` a proper coloring of ``g - t``
    into ``0..k-1``.
    """
    s = frozenset(s)
    if closed_neighborhood(g, s) != frozenset(g.vertices):
        missing = min(frozenset(g.vertices) - closed_neighborhood(g, s))
        raise PreconditionError(f"set does not dominate the graph (vertex {missing + 1} is not covered)")
    d, order = degeneracy_ordering(g)
    if d > k:
        raise PreconditionError(f"graph is {d}-degenerate, not {k}-degenerate")

    t = set()
    colors: Dict[int, int] = {}
    for v in order:
        if v in s:
            t.add(v)
            continue
        taken = {colors[w] for w in g.adjacency[v] if w in colors}
        free = next((i for i in range(k) if i not in taken), None)
        if free is None:
            t.add(v)
        else:
            colors[v] = free
    return frozenset(t), colors


def greedy_2distance(g: Graph, order: Optional[Sequence[int]] = None) -> Tuple[List[int], int]:
    """
    First-fit proper coloring of the square of ``g``.

    Vertices are colored along ``order`` (by default the prefix form of a
    degeneracy ordering), each with the smallest class unused within
    distance 2.  With degeneracy d and maximum degree D at most
    (2d-1)D+1 classes are used.  Returns ``(classes, count)``.
    """
    if order is None:
        _, order = degeneracy_ordering(g)
    sq = square_adjacency(g)
    classes = [-1] * g.n
    count = 0
    for v in order:
        taken = {classes[w] for w in sq[v] if classes[w] != -1}
        x = 0
        while x in taken:
            x += 1
        classes[v] = x
        count = max(count, x + 1)
    return classes, count


def color_degenerate(
    g: Graph,
    k: Optional[int] = None,
    config: Optional[ColorerConfig] = None,
) -> Tuple[MixedColoring, BoundCertificate]:
    """(k, 4k*sqrt(k+1)*sqrt(n))-coloring of a k-degenerate graph."""
    config = config or ColorerConfig()
    d, _ = degeneracy_ordering(g)
    if k is None:
        k = max(d, 1)
    if k < 1:
        raise PreconditionError("the degenerate colorer needs k >= 1")
    if d > k:
        raise PreconditionError(f"graph is {d}-degenerate, not {k}-degenerate")

    n = g.n
    squared = Fraction((k + 1) * n)
    s = high_degree_set(g, squared)
    colors: List[Optional[Color]] = [None] * n

    # N[S]: peel off T, D1 on the rest
    ns = closed_neighborhood(g, s)
    sub, mapping = induced(g, ns)
    index = {v: i for i, v in enumerate(mapping)}
    t_local, d1_local = dominated_peel(sub, (index[v] for v in s), k)
    t = sorted(mapping[i] for i in t_local)
    for j, v in enumerate(t):
        colors[v] = d2(j)
    for i, x in d1_local.items():
        colors[mapping[i]] = d1(x)

    # Remainder: greedy on G - S with a fresh pool
    rest, rest_map = remove(g, s)
    classes, _ = greedy_2distance(rest)
    base = len(t)
    for i, v in enumerate(rest_map):
        if v not in ns:
            colors[v] = d2(base + classes[i])

    coloring = finish(g, k, colors, "degenerate", config.compact)
    lower = math.sqrt(n - 1) / math.sqrt(k) if n > 1 else None
    cert = make_certificate(
        "degenerate", g, math.sqrt(squared), s, frozenset(t), coloring, degenerate_claim(k),
        lower_bound=lower, details={"k": k, "T": len(t)},
    )
    logger.info("degenerate: n=%d k=%d |S|=%d |T|=%d used_d2=%d", n, k, len(s), len(t), cert.used_d2)
    return coloring, cert
