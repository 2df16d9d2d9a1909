"""
Graph core for the (a,b)-coloring toolkit.

Simple undirected graphs on dense vertices 0..n-1, immutable after
``build``.  Every structural primitive the solver, the colorers and the
reductions consume lives here: square graph, girth, degeneracy ordering,
block decomposition, BFS distances, bipartiteness with witnesses.

Text format
-----------
    c <free comment>
    p <n> <m>
    e <u> <v>          (1-based endpoints, m lines)

The writer emits comments first, then the header, then edges sorted
lexicographically.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from abcolor.errors import FormatError, GraphError

VertexSet = FrozenSet[int]
Edge = Tuple[int, int]

INF = math.inf


# ---------------------------------------------------------------------------
# Graph value
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """
    Immutable simple undirected graph.

    ``adjacency[v]`` is the sorted neighbor tuple of ``v``; ``edges`` holds
    every edge once as ``(u, v)`` with ``u < v``.  Build instances with
    :func:`build`, which enforces the invariants.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    edges: FrozenSet[Edge]

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def edge_list(self) -> List[Edge]:
        """Edges as ``(u, v)``, ``u < v``, sorted lexicographically."""
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """
    Build a simple graph on vertices ``0..n-1``.

    Parallel edges collapse to one.  A self-loop or an endpoint outside
    the vertex range raises :class:`GraphError` naming the offending pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    edges = set()
    nbrs: List[set] = [set() for _ in range(n)]
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}", (u, v))
        if u == v:
            raise GraphError(f"self-loop at vertex {u}", (u, v))
        if u > v:
            u, v = v, u
        edges.add((u, v))
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(
        n=n,
        adjacency=tuple(tuple(sorted(s)) for s in nbrs),
        edges=frozenset(edges),
    )


# ---------------------------------------------------------------------------
# Neighborhoods and distances
# ---------------------------------------------------------------------------

def neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    """N(S): every vertex adjacent to some member of ``s``."""
    out = set()
    for v in s:
        out.update(g.adjacency[v])
    return frozenset(out)


def closed_neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    """N[S] = S ∪ N(S)."""
    s = frozenset(s)
    return s | neighborhood(g, s)


def bfs_distances(g: Graph, source: int, max_depth: Optional[int] = None) -> Dict[int, int]:
    """Distances from ``source`` to every vertex reachable within ``max_depth``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if max_depth is not None and d >= max_depth:
            continue
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def bfs_distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path distance, ``math.inf`` when ``v`` is unreachable."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for w in g.adjacency[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                if w == v:
                    return dist[w]
                queue.append(w)
    return INF


def square_adjacency(g: Graph) -> List[FrozenSet[int]]:
    """Per vertex, the vertices at distance 1 or 2."""
    out = []
    for v in range(g.n):
        reach = set(g.adjacency[v])
        for w in g.adjacency[v]:
            reach.update(g.adjacency[w])
        reach.discard(v)
        out.append(frozenset(reach))
    return out


def square(g: Graph) -> Graph:
    """G²: ``uv`` is an edge iff ``1 <= dist(u, v) <= 2``."""
    sq = square_adjacency(g)
    return build(g.n, ((u, w) for u in range(g.n) for w in sq[u] if u < w))


def diameter(g: Graph) -> float:
    """Largest finite-or-infinite eccentricity; ``inf`` if disconnected."""
    if g.n == 0:
        return 0
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        if len(dist) < g.n:
            return INF
        best = max(best, max(dist.values()))
    return best


def components(g: Graph) -> List[Tuple[int, ...]]:
    """Connected components, each sorted, ordered by least vertex."""
    seen = [False] * g.n
    out = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return out


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------

def girth(g: Graph) -> float:
    """
    Length of a shortest cycle, ``math.inf`` for forests.

    BFS from every vertex; a non-tree edge ``xy`` met from root ``r``
    closes a walk of length ``d(x) + d(y) + 1`` that contains a cycle
    no longer than it, and the minimum over all roots is exact.  Each
    BFS stops once its depth cannot improve the best cycle found.
    """
    best = INF
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in g.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def find_triangle(g: Graph) -> Optional[Tuple[int, int, int]]:
    """A triangle ``(u, v, w)`` with ``u < v < w``, or ``None``."""
    nbr_sets = [frozenset(a) for a in g.adjacency]
    for u, v in g.edge_list():
        common = nbr_sets[u] & nbr_sets[v]
        later = [w for w in common if w > v]
        if later:
            return (u, v, min(later))
    return None


@dataclass(frozen=True)
class BipartiteResult:
    """Bipartiteness verdict with a witness either way."""
    is_bipartite: bool
    # Side (0/1) per vertex when bipartite
    sides: Optional[Tuple[int, ...]] = None
    # Vertex sequence of an odd cycle otherwise
    odd_cycle: Optional[Tuple[int, ...]] = None


def is_bipartite(g: Graph) -> BipartiteResult:
    """BFS 2-coloring; on failure returns the odd cycle closed by the clashing edge."""
    side = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif side[w] == side[u]:
                    return BipartiteResult(False, odd_cycle=_tree_cycle(u, w, parent, depth))
    return BipartiteResult(True, sides=tuple(side))


def _tree_cycle(u: int, w: int, parent: List[int], depth: List[int]) -> Tuple[int, ...]:
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return tuple(left + right[::-1])


# ---------------------------------------------------------------------------
# Degeneracy
# ---------------------------------------------------------------------------

def degeneracy_ordering(g: Graph) -> Tuple[int, List[int]]:
    """
    Degeneracy ``d`` and an elimination ordering in prefix form.

    Vertices are removed by repeated minimum-degree deletion, the largest
    vertex id first among ties.  The returned sequence is the reverse of
    the removal order, so each ``order[i]`` has at most ``d`` neighbors
    among ``order[:i]``.
    """
    deg = [len(a) for a in g.adjacency]
    removed = [False] * g.n
    heap = [(deg[v], -v) for v in range(g.n)]
    heapq.heapify(heap)
    removal: List[int] = []
    d = 0
    while heap:
        dv, neg_v = heapq.heappop(heap)
        v = -neg_v
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        removal.append(v)
        d = max(d, dv)
        for w in g.adjacency[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], -w))
    return d, removal[::-1]


def back_degrees(g: Graph, order: Sequence[int]) -> List[int]:
    """For each position, the number of neighbors that appear earlier in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    return [sum(1 for w in g.adjacency[v] if pos[w] < i) for i, v in enumerate(order)]


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """A 2-connected component, or a bridge."""
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    @property
    def is_edge(self) -> bool:
        return len(self.edges) == 1

    def is_cycle(self) -> bool:
        return len(self.vertices) >= 3 and len(self.edges) == len(self.vertices)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: Tuple[Block, ...]
    cut_vertices: VertexSet

    def blocks_of(self, v: int) -> List[int]:
        """Indices of the blocks containing ``v``."""
        return [i for i, b in enumerate(self.blocks) if v in b.vertices]


def blocks(g: Graph) -> BlockDecomposition:
    """
    Block-cut decomposition by iterative Tarjan DFS with an edge stack.

    Blocks partition the edge set; isolated vertices belong to no block.
    A cut vertex is a vertex lying in two or more blocks.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    clock = 0
    edge_stack: List[Edge] = []
    found: List[Block] = []

    for root in range(g.n):
        if disc[root] != -1 or not g.adjacency[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            v, par, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(g.adjacency[w])))
                    descended = True
                    break
                if w != par and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= disc[p]:
                comp: List[Edge] = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e if e[0] < e[1] else (e[1], e[0]))
                    if e == (p, v):
                        break
                verts = sorted({x for e in comp for x in e})
                found.append(Block(tuple(verts), tuple(sorted(comp))))

    count: Dict[int, int] = {}
    for b in found:
        for v in b.vertices:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c >= 2)
    return BlockDecomposition(tuple(found), cuts)


# ---------------------------------------------------------------------------
# Subgraphs
# ---------------------------------------------------------------------------

def induced(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """
    Induced subgraph relabelled to ``0..k-1``.

    Returns ``(subgraph, mapping)`` where ``mapping[new] = old`` and the
    old vertices keep their relative order.
    """
    mapping = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(mapping)}
    sub_edges = [
        (index[u], index[w])
        for u in mapping
        for w in g.adjacency[u]
        if u < w and w in index
    ]
    return build(len(mapping), sub_edges), mapping


def remove(g: Graph, s: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """G − S, relabelled; same return convention as :func:`induced`."""
    s = frozenset(s)
    return induced(g, (v for v in range(g.n) if v not in s))


def disjoint_union(graphs: Sequence[Graph]) -> Tuple[Graph, List[int]]:
    """Disjoint union; ``offsets[i]`` is where the i-th graph's vertex 0 lands."""
    offsets, edges, total = [], [], 0
    for h in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in h.edges)
        total += h.n
    return build(total, edges), offsets


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def read_graph(text: str) -> Tuple[Graph, List[str]]:
    """
    Parse the ``p``/``e``/``c`` text format.

    Returns the graph and the comment lines (without the leading ``c``).
    Errors carry the 1-based line number.
    """
    n: Optional[int] = None
    m = 0
    pairs: List[Edge] = []
    comments: List[str] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tag, _, rest = line.partition(" ")
        if tag == "c":
            comments.append(rest)
            continue
        fields = rest.split()
        if tag == "p":
            if n is not None:
                raise FormatError("duplicate header", line_no)
            if fields and fields[0] == "edge":
                fields = fields[1:]
            if len(fields) != 2:
                raise FormatError(f"expected 'p <n> <m>', got {line!r}", line_no)
            n, m = _ints(fields, line_no)
            if n < 0 or m < 0:
                raise FormatError("negative count in header", line_no)
        elif tag == "e":
            if n is None:
                raise FormatError("edge before header", line_no)
            if len(fields) != 2:
                raise FormatError(f"expected 'e <u> <v>', got {line!r}", line_no)
            u, v = _ints(fields, line_no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"endpoint outside 1..{n} in edge ({u}, {v})", line_no)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", line_no)
            pairs.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown line type {tag!r}", line_no)
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if len(pairs) != m:
        raise FormatError(f"header announces {m} edges, found {len(pairs)}")
    return build(n, pairs), comments


def write_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def _ints(fields: Sequence[str], line_no: int) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(fields)!r}", line_no) from None
