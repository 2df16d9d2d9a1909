"""
Exact (a,b)-coloring search.

One iterative depth-first engine serves every mode:

* ``decide``              – existential search with a node budget;
* ``enumerate_colorings`` – every coloring up to permutation of free classes;
* ``check_gadget``        – universal properties, by searching for a
                            counterexample under tag restrictions;
* ``obstruction_profile`` – how the colorings of G' - v block the
                            return of a removed degree-2 vertex v.

Search
------
Values are encoded ``D1(i) -> i`` and ``D2(j) -> a + j``; domains are
bitmasks.  Vertices are branched in a static order (largest square degree
first, then the vertex with most already-ordered square neighbors).
Assigning D1(i) removes ``i`` from the neighbors' domains; assigning D2(j)
removes ``a + j`` from every vertex within distance 2.  An empty domain
fails, a singleton domain is assigned at once.  Among the classes of a tag
that no vertex holds yet, only the smallest index is tried, so every orbit
under class permutation is visited exactly once.  Classes fixed by a
pre-coloring count as held.
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from abcolor.coloring import Color, MixedColoring, Params, Tag, is_valid
from abcolor.config import Budget, SolverConfig
from abcolor.errors import EnumerationOverflow
from abcolor.graph import Graph, square_adjacency

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Outcomes
# ---------------------------------------------------------------------------

class Status(Enum):
    COLORABLE = "COLORABLE"
    NOT_COLORABLE = "NOT_COLORABLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SolveOutcome:
    """Colorable ⇒ witness verifies; NotColorable ⇒ search exhausted; Unknown ⇒ budget hit."""
    status: Status
    witness: Optional[MixedColoring]
    nodes_explored: int

    @property
    def colorable(self) -> bool:
        return self.status is Status.COLORABLE


@dataclass(frozen=True)
class EnumerationResult:
    colorings: Tuple[MixedColoring, ...]
    # False when the budget ran out before the search finished
    complete: bool
    nodes_explored: int

    def __len__(self) -> int:
        return len(self.colorings)


# ---------------------------------------------------------------------------
# Search engine
# ---------------------------------------------------------------------------

@dataclass
class _Search:
    g: Graph
    p: Params
    budget: Budget
    precolored: Mapping[int, Color] = field(default_factory=dict)
    allowed: Mapping[int, Tag] = field(default_factory=dict)
    propagate: bool = True
    progress_every: int = 1_000_000

    nodes: int = field(default=0, init=False)
    hit_budget: bool = field(default=False, init=False)

    def __post_init__(self) -> None:
        if self.p.total == 0:
            raise ValueError("solving needs a + b >= 1")
        n = self.g.n
        self._adj = self.g.adjacency
        self._sq = [tuple(s) for s in square_adjacency(self.g)]
        self._order = _static_order(n, self._sq)
        a, k = self.p.a, self.p.total
        full = (1 << k) - 1
        d1_mask = (1 << a) - 1
        self._dom = [full] * n
        for v, tag in self.allowed.items():
            self._dom[v] &= d1_mask if tag is Tag.D1 else full ^ d1_mask
        for v, (tag, idx) in self.precolored.items():
            if not 0 <= idx < (a if tag is Tag.D1 else self.p.b):
                raise ValueError(f"pre-color {tag.value} {idx} of vertex {v} is outside {self.p}")
        self._assign = [-1] * n
        self._count = [0] * k
        self._trail: List[Tuple[int, int, int]] = []
        self._deadline = (
            time.monotonic() + self.budget.time_limit_s if self.budget.time_limit_s else None
        )

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def solutions(self) -> Iterator[List[int]]:
        """Yield complete assignments (as value lists), one per orbit."""
        for v, color in sorted(self.precolored.items()):
            if not self._assign_value(v, self.p.encode(color)):
                return
        if self.propagate:
            for v in range(self.g.n):
                dv = self._dom[v]
                if self._assign[v] == -1 and dv and dv & (dv - 1) == 0:
                    if not self._assign_value(v, dv.bit_length() - 1):
                        return
        if any(d == 0 for d in self._dom):
            return

        first = self._next_unassigned(-1)
        if first is None:
            yield list(self._assign)
            return
        # frame: [vertex, position in order, candidate values, next index, trail mark]
        stack = [[first[0], first[1], self._candidates(first[0]), 0, len(self._trail)]]
        while stack:
            frame = stack[-1]
            self._undo(frame[4])
            if frame[3] >= len(frame[2]):
                stack.pop()
                continue
            x = frame[2][frame[3]]
            frame[3] += 1
            if not self._tick():
                return
            if not self._assign_value(frame[0], x):
                continue
            nxt = self._next_unassigned(frame[1])
            if nxt is None:
                yield list(self._assign)
                continue
            stack.append([nxt[0], nxt[1], self._candidates(nxt[0]), 0, len(self._trail)])

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    def _tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            self.hit_budget = True
            return False
        if self.nodes % self.progress_every == 0:
            logger.debug("search: %d nodes", self.nodes)
        if self._deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self._deadline:
            self.hit_budget = True
            return False
        return True

    def _next_unassigned(self, pos: int) -> Optional[Tuple[int, int]]:
        order = self._order
        for i in range(pos + 1, len(order)):
            if self._assign[order[i]] == -1:
                return order[i], i
        return None

    def _candidates(self, v: int) -> List[int]:
        dom, count = self._dom[v], self._count
        a, k = self.p.a, self.p.total
        out: List[int] = []
        for lo, hi in ((0, a), (a, k)):
            fresh_seen = False
            for x in range(lo, hi):
                if not (dom >> x) & 1:
                    if count[x] == 0:
                        fresh_seen = True
                    continue
                if count[x] > 0:
                    out.append(x)
                elif not fresh_seen:
                    out.append(x)
                    fresh_seen = True
        return out

    def _assign_value(self, v: int, x: int) -> bool:
        dom, assign, trail = self._dom, self._assign, self._trail
        a = self.p.a
        queue = [(v, x)]
        while queue:
            v, x = queue.pop()
            if assign[v] != -1:
                if assign[v] != x:
                    return False
                continue
            bit = 1 << x
            if not dom[v] & bit:
                return False
            trail.append((1, v, x))
            assign[v] = x
            self._count[x] += 1
            if dom[v] != bit:
                trail.append((0, v, dom[v]))
                dom[v] = bit
            for w in (self._adj[v] if x < a else self._sq[v]):
                dw = dom[w]
                if dw & bit:
                    trail.append((0, w, dw))
                    dw &= ~bit
                    dom[w] = dw
                    if dw == 0:
                        return False
                    if self.propagate and assign[w] == -1 and dw & (dw - 1) == 0:
                        queue.append((w, dw.bit_length() - 1))
        return True

    def _undo(self, mark: int) -> None:
        trail = self._trail
        while len(trail) > mark:
            kind, v, val = trail.pop()
            if kind == 0:
                self._dom[v] = val
            else:
                self._assign[v] = -1
                self._count[val] -= 1


def _static_order(n: int, sq: Sequence[Sequence[int]]) -> List[int]:
    """Largest square degree first, then most already-ordered square neighbors."""
    placed = [False] * n
    seen = [0] * n
    heap = [(0, -len(sq[v]), v) for v in range(n)]
    heapq.heapify(heap)
    order: List[int] = []
    while heap:
        neg_seen, _, v = heapq.heappop(heap)
        if placed[v] or -neg_seen != seen[v]:
            continue
        placed[v] = True
        order.append(v)
        for w in sq[v]:
            if not placed[w]:
                seen[w] += 1
                heapq.heappush(heap, (-seen[w], -len(sq[w]), w))
    return order


def _make_search(
    g: Graph,
    p: Params,
    budget: Optional[Budget],
    precolored: Optional[Mapping[int, Color]],
    allowed: Optional[Mapping[int, Tag]],
    config: Optional[SolverConfig],
) -> _Search:
    config = config or SolverConfig()
    return _Search(
        g, p,
        budget=budget or config.budget,
        precolored=dict(precolored or {}),
        allowed=dict(allowed or {}),
        propagate=config.propagate,
        progress_every=config.progress_every,
    )


# ---------------------------------------------------------------------------
# Decide / enumerate
# ---------------------------------------------------------------------------

def decide(
    g: Graph,
    p: Params,
    budget: Optional[Budget] = None,
    precolored: Optional[Mapping[int, Color]] = None,
    allowed: Optional[Mapping[int, Tag]] = None,
    config: Optional[SolverConfig] = None,
) -> SolveOutcome:
    """
    Decide (a,b)-colorability of ``g``, optionally extending a pre-coloring
    and restricting some vertices to one tag.

    Deterministic for fixed inputs.  Running out of budget yields
    ``Status.UNKNOWN``, never an exception.
    """
    search = _make_search(g, p, budget, precolored, allowed, config)
    for values in search.solutions():
        witness = MixedColoring.from_values(values, p.a)
        return SolveOutcome(Status.COLORABLE, witness, search.nodes)
    status = Status.UNKNOWN if search.hit_budget else Status.NOT_COLORABLE
    logger.debug("decide %s on %r: %s after %d nodes", p, g, status.value, search.nodes)
    return SolveOutcome(status, None, search.nodes)


def enumerate_colorings(
    g: Graph,
    p: Params,
    cap: int,
    budget: Optional[Budget] = None,
    precolored: Optional[Mapping[int, Color]] = None,
    allowed: Optional[Mapping[int, Tag]] = None,
    config: Optional[SolverConfig] = None,
) -> EnumerationResult:
    """
    All valid colorings up to permutation of the classes no pre-colored
    vertex holds.  More than ``cap`` colorings raises
    :class:`EnumerationOverflow`.
    """
    search = _make_search(g, p, budget, precolored, allowed, config)
    found: List[MixedColoring] = []
    for values in search.solutions():
        if len(found) >= cap:
            raise EnumerationOverflow(cap)
        found.append(MixedColoring.from_values(values, p.a))
    return EnumerationResult(tuple(found), not search.hit_budget, search.nodes)


def find_coloring(
    g: Graph,
    p: Params,
    accept: Callable[[MixedColoring], bool],
    budget: Optional[Budget] = None,
    allowed: Optional[Mapping[int, Tag]] = None,
    config: Optional[SolverConfig] = None,
) -> SolveOutcome:
    """First coloring (in search order) that satisfies ``accept``.

    ``accept`` must be invariant under class permutation.
    """
    search = _make_search(g, p, budget, None, allowed, config)
    for values in search.solutions():
        coloring = MixedColoring.from_values(values, p.a)
        if accept(coloring):
            return SolveOutcome(Status.COLORABLE, coloring, search.nodes)
    status = Status.UNKNOWN if search.hit_budget else Status.NOT_COLORABLE
    return SolveOutcome(status, None, search.nodes)


def naive_decide(g: Graph, p: Params) -> bool:
    """Brute force over all (a+b)^n assignments; reference oracle for small graphs."""
    colors = [(Tag.D1, i) for i in range(p.a)] + [(Tag.D2, j) for j in range(p.b)]
    for assignment in product(colors, repeat=g.n):
        if is_valid(g, p, MixedColoring(tuple(assignment))):
            return True
    return False


# ---------------------------------------------------------------------------
# Gadget properties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ForcedD2:
    """Every coloring gives the port a distance-2 color."""
    port: str

    @property
    def ports(self) -> Tuple[str, ...]:
        return (self.port,)


@dataclass(frozen=True)
class ForcedD1:
    """Every coloring gives the port a distance-1 color."""
    port: str

    @property
    def ports(self) -> Tuple[str, ...]:
        return (self.port,)


@dataclass(frozen=True)
class IffD1D2:
    """``first`` is D1 exactly when ``second`` is D2."""
    first: str
    second: str

    @property
    def ports(self) -> Tuple[str, ...]:
        return (self.first, self.second)


@dataclass(frozen=True)
class AtLeastOneD2:
    """No coloring gives every listed port a distance-1 color."""
    ports: Tuple[str, ...]


@dataclass(frozen=True)
class CornerPattern:
    """
    Four corners either share one D1 color, or three share one D1 color
    and the fourth takes a D2 color.
    """
    ports: Tuple[str, str, str, str]


GadgetProperty = Union[ForcedD2, ForcedD1, IffD1D2, AtLeastOneD2, CornerPattern]

PROPERTY_KINDS = {
    "forced-d2": ForcedD2,
    "forced-d1": ForcedD1,
    "iff-d1-d2": IffD1D2,
    "at-least-one-d2": AtLeastOneD2,
    "corner-pattern": CornerPattern,
}


def property_kind(prop: GadgetProperty) -> str:
    for name, cls in PROPERTY_KINDS.items():
        if isinstance(prop, cls):
            return name
    raise TypeError(f"not a gadget property: {prop!r}")


def describe_property(prop: GadgetProperty) -> str:
    return f"{property_kind(prop)}({', '.join(prop.ports)})"


def make_property(kind: str, ports: Sequence[str]) -> GadgetProperty:
    """Build a property from its kind name, as used in gadget files."""
    if kind not in PROPERTY_KINDS:
        raise ValueError(f"Unknown property '{kind}'. Available: {sorted(PROPERTY_KINDS)}")
    cls = PROPERTY_KINDS[kind]
    arity = {ForcedD2: 1, ForcedD1: 1, IffD1D2: 2, CornerPattern: 4}.get(cls)
    if arity is not None and len(ports) != arity:
        raise ValueError(f"{kind} takes {arity} port(s), got {len(ports)}")
    if cls in (ForcedD2, ForcedD1):
        return cls(ports[0])
    if cls is IffD1D2:
        return cls(ports[0], ports[1])
    if not ports:
        raise ValueError(f"{kind} needs at least one port")
    return cls(tuple(ports))


@dataclass(frozen=True)
class GadgetSpec:
    """Gadget graph, named ports and the properties it must satisfy."""
    graph: Graph
    ports: Dict[str, int]
    properties: Tuple[GadgetProperty, ...] = ()
    # Parameters the properties are stated for, when fixed by construction
    params: Optional[Params] = None
    name: str = "gadget"

    def __post_init__(self) -> None:
        seen = set()
        for port, v in self.ports.items():
            if not 0 <= v < self.graph.n:
                raise ValueError(f"port '{port}' = {v} is not a vertex of the gadget")
            if v in seen:
                raise ValueError(f"port '{port}' reuses vertex {v}")
            seen.add(v)
        for prop in self.properties:
            for port in prop.ports:
                if port not in self.ports:
                    raise ValueError(f"property {describe_property(prop)} names unknown port '{port}'")

    def port(self, name: str) -> int:
        return self.ports[name]


class Verdict(Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class GadgetCheck:
    verdict: Verdict
    # Counterexample coloring when FAILS
    witness: Optional[MixedColoring] = None
    failed_property: Optional[GadgetProperty] = None
    nodes_explored: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def check_gadget(
    spec: GadgetSpec,
    p: Optional[Params] = None,
    budget: Optional[Budget] = None,
    properties: Optional[Sequence[GadgetProperty]] = None,
    config: Optional[SolverConfig] = None,
) -> GadgetCheck:
    """
    Evaluate the gadget's properties over all its (a,b)-colorings.

    Each property is refuted by searching for a counterexample; the first
    property with one yields ``FAILS`` with that coloring.  A gadget with
    no coloring at all satisfies every property vacuously, so colorability
    must be checked separately with :func:`decide`.
    """
    p = p or spec.params
    if p is None:
        raise ValueError(f"no parameters given for {spec.name}")
    props = tuple(properties) if properties is not None else spec.properties
    nodes = 0
    unknown = None
    for prop in props:
        outcome = _refute(spec, p, prop, budget, config)
        nodes += outcome.nodes_explored
        if outcome.status is Status.COLORABLE:
            logger.info("%s: %s fails at %s", spec.name, describe_property(prop), p)
            return GadgetCheck(Verdict.FAILS, outcome.witness, prop, nodes)
        if outcome.status is Status.UNKNOWN and unknown is None:
            unknown = prop
    if unknown is not None:
        return GadgetCheck(Verdict.UNKNOWN, None, unknown, nodes)
    return GadgetCheck(Verdict.HOLDS, None, None, nodes)


def _refute(
    spec: GadgetSpec,
    p: Params,
    prop: GadgetProperty,
    budget: Optional[Budget],
    config: Optional[SolverConfig],
) -> SolveOutcome:
    g, port = spec.graph, spec.port
    if isinstance(prop, ForcedD2):
        return decide(g, p, budget, allowed={port(prop.port): Tag.D1}, config=config)
    if isinstance(prop, ForcedD1):
        return decide(g, p, budget, allowed={port(prop.port): Tag.D2}, config=config)
    if isinstance(prop, AtLeastOneD2):
        return decide(g, p, budget, allowed={port(x): Tag.D1 for x in prop.ports}, config=config)
    if isinstance(prop, IffD1D2):
        u, v = port(prop.first), port(prop.second)
        nodes, unknown = 0, False
        for tag in (Tag.D1, Tag.D2):
            outcome = decide(g, p, budget, allowed={u: tag, v: tag}, config=config)
            nodes += outcome.nodes_explored
            if outcome.status is Status.COLORABLE:
                return SolveOutcome(Status.COLORABLE, outcome.witness, nodes)
            unknown = unknown or outcome.status is Status.UNKNOWN
        return SolveOutcome(Status.UNKNOWN if unknown else Status.NOT_COLORABLE, None, nodes)
    if isinstance(prop, CornerPattern):
        corners = [port(x) for x in prop.ports]
        return find_coloring(g, p, lambda c: not corner_pattern_holds(c, corners), budget, config=config)
    raise TypeError(f"not a gadget property: {prop!r}")


def corner_pattern_holds(c: MixedColoring, corners: Sequence[int]) -> bool:
    cols = [c[v] for v in corners]
    d1s = [col for col in cols if col[0] is Tag.D1]
    if len(d1s) < 3 or len(set(d1s)) != 1:
        return False
    return True


# ---------------------------------------------------------------------------
# Obstruction profile
# ---------------------------------------------------------------------------

Pair = Tuple[FrozenSet[int], FrozenSet[int]]


@dataclass(frozen=True)
class ObstructionProfile:
    """
    How the (2,k)-colorings of G' - v block the removed vertex v.

    ``has_Bc``: some coloring gives v1 and v2 the same D2 class.
    ``pairs``: ``(S1, S2)`` for colorings giving v1, v2 distinct D1
    classes whose neighborhoods together use all k D2 classes; classes
    are renamed shared-first, then S1-only, then S2-only.
    """
    k: int
    has_Bc: bool
    pairs: FrozenSet[Pair]
    # Every coloring of G' - v is blocked, i.e. G' is not (2,k)-colorable
    every_coloring_blocked: bool
    # False when the budget ran out before enumeration finished
    exhausted: bool
    colorings_seen: int = 0

    @property
    def is_empty(self) -> bool:
        return not self.has_Bc and not self.pairs

    @property
    def full_pair(self) -> Pair:
        """``([k], [k])``: both neighborhoods use every D2 class."""
        s = frozenset(range(self.k))
        return (s, s)

    def has_short_pair(self) -> bool:
        """Some recorded pair has ``|S2| < k``."""
        return any(len(s2) < self.k for _, s2 in self.pairs)

    def describe(self) -> List[str]:
        out = ["c"] if self.has_Bc else []
        for s1, s2 in sorted(self.pairs, key=lambda pr: (sorted(pr[0]), sorted(pr[1]))):
            out.append(f"{sorted(s1)} | {sorted(s2)}")
        return out


def obstruction_profile(
    g_minus_v: Graph,
    v1: int,
    v2: int,
    k: int,
    budget: Optional[Budget] = None,
    cap: int = 100_000,
    config: Optional[SolverConfig] = None,
) -> ObstructionProfile:
    """Enumerate the (2,k)-colorings of ``g_minus_v`` and classify the blocked ones."""
    if v1 == v2:
        raise ValueError("v1 and v2 must be distinct")
    p = Params(2, k)
    search = _make_search(g_minus_v, p, budget, None, None, config)
    has_bc, blocked_all, seen = False, True, 0
    pairs = set()
    adj = g_minus_v.adjacency
    for values in search.solutions():
        seen += 1
        if seen > cap:
            raise EnumerationOverflow(cap)
        x1, x2 = values[v1], values[v2]
        if x1 >= 2 and x1 == x2:
            has_bc = True
            continue
        if x1 < 2 and x2 < 2 and x1 != x2:
            s1 = frozenset(values[w] - 2 for w in adj[v1] if values[w] >= 2)
            s2 = frozenset(values[w] - 2 for w in adj[v2] if values[w] >= 2)
            if len(s1 | s2) == k:
                pairs.add(_canonical_pair(s1, s2))
                continue
        blocked_all = False
    exhausted = not search.hit_budget
    profile = ObstructionProfile(
        k=k,
        has_Bc=has_bc,
        pairs=frozenset(pairs),
        every_coloring_blocked=blocked_all and exhausted,
        exhausted=exhausted,
        colorings_seen=seen,
    )
    logger.info("profile k=%d: %s (%d colorings, exhausted=%s)", k, profile.describe(), seen, exhausted)
    return profile


def _canonical_pair(s1: FrozenSet[int], s2: FrozenSet[int]) -> Pair:
    both = len(s1 & s2)
    only1 = len(s1 - s2)
    only2 = len(s2 - s1)
    new_s1 = frozenset(range(both + only1))
    new_s2 = frozenset(range(both)) | frozenset(range(both + only1, both + only1 + only2))
    return new_s1, new_s2
