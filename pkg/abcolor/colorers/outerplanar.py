"""
Outerplanar graphs: odd-cycle homomorphisms, vertex covers and the
(1,b)-colorer for triangle-free outerplanar graphs.

No embedding is computed.  Outerplanarity is witnessed by the peels
themselves: ``peel_homomorphism`` strips isolated vertices, pendant
vertices, bare cycles and chains of degree-2 vertices whose ends are
equal or adjacent; ``elimination_order`` strips vertices of degree at
most 2 with fill-in.  A peel that stalls rejects the input.
"""

from __future__ import annotations

import heapq
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from abcolor.colorers.bounds import (
    TF_OUTERPLANAR_CLAIM, BoundCertificate, finish, high_degree_set, make_certificate,
)
from abcolor.coloring import Color, MixedColoring, d1, d2
from abcolor.config import ColorerConfig
from abcolor.errors import PreconditionError
from abcolor.graph import Graph, VertexSet, find_triangle, girth, induced, neighborhood, remove, square_adjacency

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Homomorphism to C_{2k+1}
# ---------------------------------------------------------------------------

def peel_homomorphism(g: Graph, g0: int) -> List[int]:
    """
    Map ``g`` onto the cycle ``C_{2k+1}``, ``k = g0 // 2``.

    Returns ``f`` with ``f[u] - f[v] = ±1 (mod 2k+1)`` for every edge.
    The input must be outerplanar of girth at least ``g0 >= 3``.
    """
    if g0 < 3:
        raise ValueError(f"girth bound must be at least 3, got {g0}")
    if girth(g) < g0:
        raise PreconditionError(f"girth {girth(g)} is below {g0}")
    q = 2 * (g0 // 2) + 1

    adj: List[Set[int]] = [set(a) for a in g.adjacency]
    alive = [True] * g.n
    ops: List[Tuple] = []

    def drop(v: int) -> None:
        alive[v] = False
        for w in adj[v]:
            adj[w].discard(v)
            pending.append(w)
        adj[v] = set()

    pending: List[int] = list(range(g.n - 1, -1, -1))
    remaining = g.n
    while remaining:
        progressed = False
        while pending:
            v = pending.pop()
            if not alive[v]:
                continue
            deg = len(adj[v])
            if deg == 0:
                ops.append(("isolated", v))
                alive[v] = False
                remaining -= 1
                progressed = True
            elif deg == 1:
                u = next(iter(adj[v]))
                ops.append(("pendant", v, u))
                drop(v)
                remaining -= 1
                progressed = True
            elif deg == 2:
                chain, u, w = _chain_through(v, adj)
                if u is None:
                    ops.append(("cycle", chain))
                elif u != w and w not in adj[u]:
                    continue
                else:
                    ops.append(("chain", chain, u, w))
                for x in chain:
                    drop(x)
                remaining -= len(chain)
                progressed = True
        if remaining and not progressed:
            raise PreconditionError("peel stalled: the graph is not outerplanar")
        if remaining:
            pending = [v for v in range(g.n - 1, -1, -1) if alive[v]]

    f = [0] * g.n
    for op in reversed(ops):
        if op[0] == "isolated":
            f[op[1]] = 0
        elif op[0] == "pendant":
            f[op[1]] = (f[op[2]] + 1) % q
        elif op[0] == "cycle":
            cyc = op[1]
            for x, pos in zip(cyc, _walk(0, 0, len(cyc), q)):
                f[x] = pos
        else:
            _, chain, u, w = op
            positions = _walk(f[u], f[w], len(chain) + 1, q)
            for x, pos in zip(chain, positions[1:-1]):
                f[x] = pos
    return f


def _chain_through(v: int, adj: List[Set[int]]) -> Tuple[List[int], Optional[int], Optional[int]]:
    """
    Maximal run of degree-2 vertices through ``v``.

    Returns ``(chain, u, w)`` with ``u``/``w`` the ends beyond the run, or
    ``(cycle, None, None)`` when the run closes on itself.
    """
    left, right = sorted(adj[v])
    back: List[int] = []
    prev, cur = v, left
    while len(adj[cur]) == 2 and cur != v:
        back.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if cur == v:
        return [v] + back, None, None
    u = cur
    fwd: List[int] = []
    prev, cur = v, right
    while len(adj[cur]) == 2:
        fwd.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return back[::-1] + [v] + fwd, u, cur


def _walk(a: int, b: int, length: int, q: int) -> List[int]:
    """A walk of exactly ``length`` steps from ``a`` to ``b`` on ``C_q`` (q odd)."""
    best = None
    for step in (1, -1):
        dist = (step * (b - a)) % q
        if dist % 2 != length % 2:
            dist += q
        if dist <= length and (best is None or dist < best[0]):
            best = (dist, step)
    if best is None:
        raise PreconditionError(f"no walk of length {length} from {a} to {b} on C_{q}")
    dist, step = best
    out = [a]
    for _ in range(dist):
        out.append((out[-1] + step) % q)
    for j in range(length - dist):
        out.append((out[-1] + (step if j % 2 == 0 else -step)) % q)
    return out


def vc_outerplanar(g: Graph, g0: int) -> VertexSet:
    """
    Vertex cover of size at most ``n(k+1)/(2k+1)``, ``k = g0 // 2``.

    Complement of the largest preimage ``f^-1({j, j+2, ..., j+2k-2})``
    over the ``2k+1`` maximum independent sets of the target cycle; ties
    go to the smallest ``j``.
    """
    f = peel_homomorphism(g, g0)
    k = g0 // 2
    q = 2 * k + 1
    at: List[List[int]] = [[] for _ in range(q)]
    for v, pos in enumerate(f):
        at[pos].append(v)
    best_j, best_size = 0, -1
    for j in range(q):
        size = sum(len(at[(j + 2 * i) % q]) for i in range(k))
        if size > best_size:
            best_j, best_size = j, size
    independent = {v for i in range(k) for v in at[(best_j + 2 * i) % q]}
    return frozenset(v for v in g.vertices if v not in independent)


# ---------------------------------------------------------------------------
# Elimination with fill-in
# ---------------------------------------------------------------------------

def elimination_order(g: Graph) -> List[int]:
    """
    Repeatedly eliminate a vertex of degree at most 2, joining its two
    neighbors when it has two.  Ties go to the smallest vertex.

    Graphs of treewidth at most 2 (outerplanar graphs among them) never
    stall; a stall raises :class:`PreconditionError`.
    """
    adj: List[Set[int]] = [set(a) for a in g.adjacency]
    heap = [(len(adj[v]), v) for v in g.vertices]
    heapq.heapify(heap)
    done = [False] * g.n
    order: List[int] = []
    while heap:
        deg, v = heapq.heappop(heap)
        if done[v] or deg != len(adj[v]):
            continue
        if deg > 2:
            raise PreconditionError(f"elimination stalled at vertex {v + 1} of degree {deg}")
        done[v] = True
        order.append(v)
        nbrs = list(adj[v])
        for w in nbrs:
            adj[w].discard(v)
        if len(nbrs) == 2:
            x, y = nbrs
            adj[x].add(y)
            adj[y].add(x)
        for w in nbrs:
            heapq.heappush(heap, (len(adj[w]), w))
    return order


# ---------------------------------------------------------------------------
# Triangle-free outerplanar colorer
# ---------------------------------------------------------------------------

def color_tf_outerplanar(
    g: Graph,
    config: Optional[ColorerConfig] = None,
) -> Tuple[MixedColoring, BoundCertificate]:
    """
    (1, 4*sqrt(34/5)*sqrt(n) - 1)-coloring of a triangle-free outerplanar graph.

    S takes the vertices of degree at least sqrt(34/5)*sqrt(n).  V' holds the
    vertices of N(S) - S with a neighbor in N(S) - S, and C is a vertex cover
    of G[V'].  Each vertex of S ∪ C takes its own D2 class, the rest of N(S)
    takes the single D1 color, and the remaining vertices are colored
    first-fit with fresh D2 classes in reverse elimination order of G - S.
    """
    config = config or ColorerConfig()
    tri = find_triangle(g)
    if tri is not None:
        raise PreconditionError(f"triangle {tuple(v + 1 for v in tri)} in a triangle-free colorer input")

    n = g.n
    squared = Fraction(34 * n, 5)
    s = high_degree_set(g, squared)
    ns = neighborhood(g, s) - s
    if s and len(ns) + len(s) > 5 * len(s) - 4:
        logger.warning("tf-outerplanar: |N[S]| = %d exceeds 5|S|-4 = %d", len(ns) + len(s), 5 * len(s) - 4)

    v_prime = frozenset(v for v in ns if any(w in ns for w in g.adjacency[v]))
    sub, mapping = induced(g, v_prime)
    cover = frozenset(mapping[i] for i in vc_outerplanar(sub, config.tf_girth))
    s_prime = s | cover

    colors: List[Optional[Color]] = [None] * n
    for j, v in enumerate(sorted(s_prime)):
        colors[v] = d2(j)
    for v in ns - cover:
        colors[v] = d1(0)

    # Remainder: vertices outside N[S], first-fit on G - S
    rest, rest_map = remove(g, s)
    order = elimination_order(rest)
    sq = square_adjacency(rest)
    outside = [rest_map[i] not in ns for i in range(rest.n)]
    classes: Dict[int, int] = {}
    for i in reversed(order):
        if not outside[i]:
            continue
        taken = {classes[w] for w in sq[i] if w in classes}
        x = 0
        while x in taken:
            x += 1
        classes[i] = x
    base = len(s_prime)
    for i, x in classes.items():
        colors[rest_map[i]] = d2(base + x)

    coloring = finish(g, 1, colors, "tf-outerplanar", config.compact)
    cert = make_certificate(
        "tf-outerplanar", g, math.sqrt(squared), s, s_prime, coloring, TF_OUTERPLANAR_CLAIM,
        lower_bound=math.sqrt(n - 1) if n > 1 else None,
        details={"V_prime": len(v_prime), "cover": len(cover)},
    )
    logger.info(
        "tf-outerplanar: n=%d |S|=%d |V'|=%d |C|=%d used_d2=%d",
        n, len(s), len(v_prime), len(cover), cert.used_d2,
    )
    return coloring, cert
