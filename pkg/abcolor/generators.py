"""
Graph generators.

Extremal families
-----------------
* ``gen_fig5(k, l)``  – partial k-tree of order k(l+1)² + (l+1) + 1, not (k,l)-colorable
* ``gen_fig6(k)``     – bipartite planar graph of girth 6 and order 4k, not (1,k)-colorable
* ``gen_fig8(k)``     – graph of order 3k+1 and diameter 2, not (2,k)-colorable
* ``gen_windmill``    – k+1 copies of K_{a+1} on a shared vertex s; s is forced D2 at (a,k)
* ``gen_friendship``  – the windmill with triangles
* ``gen_blowup``      – every edge replaced by K_{k+1,k+1}
* ``gen_forced_vertex`` / ``apex_of_copies`` – both directions between
  forced-D2 gadgets and graphs that fail at a removed degree-2 vertex

Random members of graph classes
-------------------------------
k-degenerate graphs, cacti, triangle-free outerplanar graphs, stacked
triangulations and subdivided stacked triangulations.  Every random
generator takes a ``seed`` and builds one ``np.random.default_rng(seed)``
that it threads through its helpers, so output is fixed per seed.

``FAMILIES`` registers everything ``generate --family`` can build.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from abcolor.coloring import Params
from abcolor.errors import OracleFailure, PreconditionError
from abcolor.graph import Edge, Graph, build, disjoint_union, remove
from abcolor.solver import ForcedD2, GadgetSpec, ObstructionProfile, obstruction_profile

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Extremal families
# ---------------------------------------------------------------------------

def gen_fig5(k: int, l: int) -> Graph:
    """
    Hub c (vertex 0) joined to u_1..u_{l+1} (vertices 1..l+1); each u_i
    is fully joined to l+1 disjoint k-cliques.

    The order k(l+1)² + (l+1) + 1 equals kl² + (2k+1)l + k + 2.  For k=1
    the graph is a tree of that order, l+1 more than the
    ``1 + (l+1)²`` sometimes quoted for it.
    """
    if k < 1 or l < 1:
        raise ValueError(f"gen_fig5 needs k, l >= 1, got ({k}, {l})")
    edges: List[Edge] = []
    nxt = l + 2
    for i in range(1, l + 2):
        edges.append((0, i))
        for _ in range(l + 1):
            clique = list(range(nxt, nxt + k))
            nxt += k
            edges.extend((i, x) for x in clique)
            edges.extend((x, y) for j, x in enumerate(clique) for y in clique[j + 1:])
    return build(nxt, edges)


def gen_fig6(k: int) -> Graph:
    """
    s = 0, t = 1, rails u_i = 1 + i and v_i = 2k + i for i = 1..2k-1,
    with edges s-u_i, u_i-v_i, v_i-t.
    """
    if k < 2:
        raise ValueError(f"gen_fig6 needs k >= 2 (deg(s) = 2k-1 must exceed k), got {k}")
    edges: List[Edge] = []
    for i in range(1, 2 * k):
        u, v = 1 + i, 2 * k + i
        edges += [(0, u), (u, v), (v, 1)]
    return build(4 * k, edges)


def gen_fig8(k: int) -> Graph:
    """Hub 0 adjacent to every vertex of k disjoint triangles."""
    if k < 1:
        raise ValueError(f"gen_fig8 needs k >= 1, got {k}")
    edges: List[Edge] = []
    for t in range(k):
        x, y, z = 1 + 3 * t, 2 + 3 * t, 3 + 3 * t
        edges += [(x, y), (y, z), (x, z), (0, x), (0, y), (0, z)]
    return build(3 * k + 1, edges)


def gen_windmill(a: int, k: int) -> GadgetSpec:
    """
    k+1 copies of K_{a+1} sharing the vertex s = 0.

    Each copy needs a D2 vertex; if s were D1 those k+1 vertices would
    be pairwise at distance 2, so s is D2 in every (a,k)-coloring.
    """
    if a < 1 or k < 1:
        raise ValueError(f"gen_windmill needs a, k >= 1, got ({a}, {k})")
    edges: List[Edge] = []
    for c in range(k + 1):
        block = [0] + [1 + c * a + j for j in range(a)]
        edges.extend((x, y) for j, x in enumerate(block) for y in block[j + 1:])
    g = build(1 + a * (k + 1), edges)
    return GadgetSpec(g, {"s": 0}, (ForcedD2("s"),), Params(a, k), name=f"windmill({a},{k})")


def gen_friendship(k: int) -> GadgetSpec:
    """k+1 triangles sharing s; s is forced D2 at (2,k)."""
    spec = gen_windmill(2, k)
    return GadgetSpec(spec.graph, spec.ports, spec.properties, spec.params, name=f"friendship({k})")


def gen_blowup(g: Graph, k: int) -> Graph:
    """
    Vertex v becomes v*(k+1) .. v*(k+1)+k; edge uv becomes the complete
    bipartite join of the two groups.

    For a (3,k)-coloring the blown-up graph is colorable exactly when
    ``g`` is 3-colorable.
    """
    if k < 1:
        raise ValueError(f"gen_blowup needs k >= 1, got {k}")
    r = k + 1
    edges = [
        (u * r + i, v * r + j)
        for u, v in g.edge_list()
        for i in range(r)
        for j in range(r)
    ]
    return build(g.n * r, edges)


# ---------------------------------------------------------------------------
# Forced-vertex constructions
# ---------------------------------------------------------------------------

def apex_of_copies(spec: GadgetSpec, k: int) -> Graph:
    """
    k+1 copies of ``spec.graph`` and an apex (the last vertex) adjacent
    to every copy of port ``s``.  When s is forced D2 at (2,k) the apex's
    k+1 neighbors need k+1 distinct D2 classes, so the result is not
    (2,k)-colorable.
    """
    g, offsets = disjoint_union([spec.graph] * (k + 1))
    apex = g.n
    s = spec.port("s")
    return build(g.n + 1, list(g.edges) + [(off + s, apex) for off in offsets])


def gen_forced_vertex(
    g_prime: Graph,
    v: int,
    v1: int,
    v2: int,
    k: int,
    profile: Optional[ObstructionProfile] = None,
) -> GadgetSpec:
    """
    Turn a graph that is not (2,k)-colorable only because of a degree-2
    vertex ``v`` into a gadget with a forced-D2 port ``s``.

    The obstruction profile of ``g_prime - v`` picks the construction:

    ``{c}``
        v1 is D2 in every coloring; the gadget is G' - v with s = v1.
    ``{([k],[k])}``
        G' - v plus the path v1 - v1' - s - v2' - v2.
    pairs only, some with a short S2
        two copies; the v1 copies are joined and s sees both v2 copies.
    ``{c, ([k],[k])}``
        k+2 copies; v2 of copy 0 sees v1 of copies 1..k+1, and copy 0
        carries the path v1 - v1' - s - v2' - v2.
    c together with a short pair
        2k+2 copies; s sees every v2 copy and the v1 copies are joined in
        pairs.

    Pairs with only a short S1 are handled by exchanging v1 and v2.
    """
    if sorted(g_prime.adjacency[v]) != sorted((v1, v2)):
        raise PreconditionError(f"vertex {v + 1} must have exactly the neighbors {v1 + 1} and {v2 + 1}")
    base, mapping = remove(g_prime, {v})
    index = {old: new for new, old in enumerate(mapping)}
    a, b = index[v1], index[v2]

    computed = obstruction_profile(base, a, b, k)
    if profile is not None and profile != computed:
        raise ValueError("given profile does not match the graph")
    if not computed.exhausted:
        raise OracleFailure("obstruction profile enumeration did not finish")
    if computed.is_empty or not computed.every_coloring_blocked:
        raise PreconditionError(
            f"G' - v has a coloring that extends to v; no forced vertex at (2,{k})"
        )

    pairs = computed.pairs
    if not any(len(s2) < k for _, s2 in pairs) and any(len(s1) < k for s1, _ in pairs):
        a, b = b, a
        pairs = frozenset((s2, s1) for s1, s2 in pairs)
    short = any(len(s2) < k for _, s2 in pairs)
    full = computed.full_pair in pairs

    if computed.has_Bc and not pairs:
        case, graph, s = "c", base, a
    elif not computed.has_Bc and not short:
        case = "full-pair"
        graph, s = _with_path(base, [], a, b)
    elif not computed.has_Bc:
        case = "short-pair"
        graph, s = _joined_copies(base, 2, a, b)
    elif full and not short:
        case = "c-and-full-pair"
        g, offsets = disjoint_union([base] * (k + 2))
        extra = [(offsets[0] + b, off + a) for off in offsets[1:]]
        graph, s = _with_path(g, extra, a, b)
    else:
        case = "c-and-short-pair"
        graph, s = _joined_copies(base, 2 * k + 2, a, b)

    logger.info("forced vertex at (2,%d): case %s, order %d", k, case, graph.n)
    return GadgetSpec(graph, {"s": s}, (ForcedD2("s"),), Params(2, k), name=f"forced-vertex[{case}]")


def _with_path(g: Graph, extra: Sequence[Edge], a: int, b: int) -> Tuple[Graph, int]:
    """Add the path a - a' - s - b' - b on copy 0 of ``g``; returns the graph and s."""
    a1, s, b1 = g.n, g.n + 1, g.n + 2
    edges = list(g.edges) + list(extra) + [(a, a1), (a1, s), (s, b1), (b1, b)]
    return build(g.n + 3, edges), s


def _joined_copies(base: Graph, copies: int, a: int, b: int) -> Tuple[Graph, int]:
    """``copies`` copies, v1 copies joined in consecutive pairs, s adjacent to every v2 copy."""
    g, offsets = disjoint_union([base] * copies)
    s = g.n
    edges = list(g.edges)
    edges += [(offsets[i] + a, offsets[i + 1] + a) for i in range(0, copies, 2)]
    edges += [(off + b, s) for off in offsets]
    return build(g.n + 1, edges), s


# ---------------------------------------------------------------------------
# Random graph classes
# ---------------------------------------------------------------------------

def random_kdegenerate(n: int, k: int, seed: int = 42) -> Graph:
    """
    Vertex i picks min(i, k) earlier neighbors with probability
    proportional to degree + 1, so hubs form and the degeneracy is at
    most k.
    """
    if n < 0 or k < 1:
        raise ValueError(f"random_kdegenerate needs n >= 0 and k >= 1, got ({n}, {k})")
    rng = np.random.default_rng(seed)
    deg = np.zeros(n, dtype=np.int64)
    edges: List[Edge] = []
    for i in range(1, n):
        weights = deg[:i] + 1
        targets = rng.choice(i, size=min(i, k), replace=False, p=weights / weights.sum())
        for t in targets:
            edges.append((int(t), i))
            deg[t] += 1
            deg[i] += 1
    return build(n, edges)


def random_cactus(n: int, seed: int = 42, girth: int = 4) -> Graph:
    """
    Grow a cactus from vertex 0: each step hangs either a pendant edge or a
    cycle of length girth..girth+4 on a random existing vertex.
    """
    if n < 1 or girth < 3:
        raise ValueError(f"random_cactus needs n >= 1 and girth >= 3, got ({n}, {girth})")
    rng = np.random.default_rng(seed)
    edges: List[Edge] = []
    count = 1
    while count < n:
        x = int(rng.integers(0, count))
        length = int(rng.integers(girth, girth + 5))
        if rng.random() < 0.5 and count + length - 1 <= n:
            cyc = [x] + list(range(count, count + length - 1))
            edges.extend((cyc[i], cyc[(i + 1) % length]) for i in range(length))
            count += length - 1
        else:
            edges.append((x, count))
            count += 1
    return build(n, edges)


def random_tf_outerplanar(n: int, seed: int = 42, hub_bias: float = 0.7) -> Graph:
    """
    Random maximal outerplanar graph with one edge removed from every
    triangle.

    Vertices are added one by one onto an edge of the outer cycle; with
    probability ``hub_bias`` that edge touches one of about sqrt(n)/8
    hub vertices.  Every triangle of a maximal outerplanar graph is a
    face, so removing an edge from each face leaves no triangle.
    """
    if n < 1:
        raise ValueError(f"random_tf_outerplanar needs n >= 1, got {n}")
    if n <= 2:
        return build(n, [(0, 1)] if n == 2 else [])
    rng = np.random.default_rng(seed)
    hubs = max(1, int(round(n ** 0.5 / 8)))
    boundary = [0, 1]
    edges = {(0, 1)}
    faces: List[Tuple[int, int, int]] = []
    for x in range(2, n):
        if x > 2 and rng.random() < hub_bias:
            hub = int(rng.integers(0, min(hubs, x)))
            pos = boundary.index(hub)
            i = pos if rng.random() < 0.5 else (pos - 1) % len(boundary)
        else:
            i = int(rng.integers(0, len(boundary)))
        u, w = boundary[i], boundary[(i + 1) % len(boundary)]
        boundary.insert(i + 1, x)
        edges.add((min(u, x), max(u, x)))
        edges.add((min(w, x), max(w, x)))
        faces.append((u, w, x))
    for face in faces:
        sides = [tuple(sorted(pair)) for pair in ((face[0], face[1]), (face[1], face[2]), (face[0], face[2]))]
        if all(e in edges for e in sides):
            edges.discard(sides[int(rng.integers(0, 3))])
    return build(n, sorted(edges))


def random_stacked_triangulation(n: int, seed: int = 42) -> Graph:
    """Start from a triangle and repeatedly split a random face with a new vertex."""
    if n < 3:
        raise ValueError(f"random_stacked_triangulation needs n >= 3, got {n}")
    return build(n, _stacked_edges(n, np.random.default_rng(seed)))


def random_subdivided_triangulation(n: int, seed: int = 42, max_subdivisions: int = 1) -> Graph:
    """
    Stacked triangulation on ``n`` vertices with every edge subdivided by
    1..``max_subdivisions`` new vertices.

    Planar with girth at least 6; bipartite when ``max_subdivisions == 1``.
    The original vertices keep their ids 0..n-1.
    """
    if n < 3 or max_subdivisions < 1:
        raise ValueError(f"random_subdivided_triangulation needs n >= 3 and max_subdivisions >= 1, got ({n}, {max_subdivisions})")
    rng = np.random.default_rng(seed)
    edges: List[Edge] = []
    nxt = n
    for u, v in sorted(set(_stacked_edges(n, rng))):
        r = int(rng.integers(1, max_subdivisions + 1))
        path = [u] + list(range(nxt, nxt + r)) + [v]
        nxt += r
        edges.extend(zip(path, path[1:]))
    return build(nxt, edges)


def _stacked_edges(n: int, rng: np.random.Generator) -> List[Edge]:
    edges: List[Edge] = [(0, 1), (1, 2), (0, 2)]
    faces = [(0, 1, 2), (0, 1, 2)]
    for x in range(3, n):
        i = int(rng.integers(0, len(faces)))
        a, b, c = faces[i]
        faces[i] = (a, b, x)
        faces += [(b, c, x), (a, c, x)]
        edges += [(a, x), (b, x), (c, x)]
    return edges


def grid(w: int, h: int) -> Graph:
    """w × h grid; vertex (x, y) is y*w + x."""
    if w < 1 or h < 1:
        raise ValueError(f"grid needs w, h >= 1, got ({w}, {h})")
    edges: List[Edge] = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return build(w * h, edges)


def gen_girth_families(girth: int, k: int) -> Graph:
    """
    The girth-4 family needing order sqrt(n) distance-2 classes and the
    girth-5 family needing order n^(1/3) of them are described only by
    drawings of their composition; they are not generated.
    """
    raise NotImplementedError(
        f"girth-{girth} lower-bound family: the composition of its building blocks is only given "
        "as a drawing and is not reconstructed"
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

FAMILIES: Dict[str, Dict] = {
    "fig5": {
        "name": "Partial k-tree",
        "description": "order k(l+1)^2 + l + 2, not (k,l)-colorable",
        "params": ("k", "l"),
        "function": gen_fig5,
    },
    "fig6": {
        "name": "Bipartite girth-6 planar",
        "description": "order 4k, not (1,k)-colorable",
        "params": ("k",),
        "function": gen_fig6,
    },
    "fig8": {
        "name": "Hub over k triangles",
        "description": "order 3k+1, diameter 2, not (2,k)-colorable",
        "params": ("k",),
        "function": gen_fig8,
    },
    "windmill": {
        "name": "Windmill gadget",
        "description": "k+1 copies of K_{a+1} sharing s; s forced D2 at (a,k)",
        "params": ("a", "k"),
        "function": gen_windmill,
    },
    "friendship": {
        "name": "Friendship gadget",
        "description": "k+1 triangles sharing s; s forced D2 at (2,k)",
        "params": ("k",),
        "function": gen_friendship,
    },
    "blowup": {
        "name": "Blowup",
        "description": "every edge of an input graph replaced by K_{k+1,k+1}",
        "params": ("graph", "k"),
        "function": gen_blowup,
    },
    "grid": {
        "name": "Grid",
        "description": "w x h grid: planar, bipartite, girth 4",
        "params": ("w", "h"),
        "function": grid,
    },
    "random-kdegenerate": {
        "name": "Random k-degenerate",
        "description": "preferential attachment with k back-edges per vertex",
        "params": ("n", "k", "seed"),
        "function": random_kdegenerate,
    },
    "random-cactus": {
        "name": "Random cactus",
        "description": "pendant edges and cycles of length >= 4",
        "params": ("n", "seed"),
        "function": random_cactus,
    },
    "random-tf-outerplanar": {
        "name": "Random triangle-free outerplanar",
        "description": "maximal outerplanar with one edge cut from each face",
        "params": ("n", "seed"),
        "function": random_tf_outerplanar,
    },
    "random-stacked": {
        "name": "Random stacked triangulation",
        "description": "planar triangulation by repeated face splits",
        "params": ("n", "seed"),
        "function": random_stacked_triangulation,
    },
    "random-subdivided": {
        "name": "Random subdivided triangulation",
        "description": "stacked triangulation with subdivided edges: planar, girth >= 6",
        "params": ("n", "seed", "max_subdivisions"),
        "function": random_subdivided_triangulation,
    },
}


def get_family(key: str) -> Callable:
    """Builder function for a registered family"""
    if key not in FAMILIES:
        raise ValueError(f"Unknown family '{key}'. Available: {sorted(FAMILIES)}")
    return FAMILIES[key]["function"]


def list_families() -> List[Dict]:
    """List all registered families with details"""
    return [
        {
            "key": key,
            "name": data["name"],
            "description": data["description"],
            "params": list(data["params"]),
        }
        for key, data in FAMILIES.items()
    ]
