"""
Reductions from NP-complete source problems to (a,b)-coloring.

    source problem                   target   function
    -------------------------------  -------  ---------------------
    (Δ1,Δ1)-coloring, max degree 4   (1,2)    reduce_dd_to_12
    3-coloring, max degree 4         (1,3)    reduce_3col_to_13
    3-coloring, max degree 4         (3,1)    reduce_3col_to_31
    3-coloring, max degree 4         (3,k)    reduce_3col_to_3k
    restricted planar 3-SAT          (1,k)    reduce_with_gadgets(scheme="identify")
    restricted planar 3-SAT          (2,k)    reduce_with_gadgets(scheme="link")

Every output labels each vertex with the source entity it stands for and
carries notes on the choices the construction leaves open.  Bipartiteness,
maximum degree and girth are asserted on the finished graph; a failed
assertion raises :class:`ReductionError`.

Planarity is never checked.  Connection slots are consumed round-robin
per source vertex in edge order, and the SAT incidence graph is taken on
trust.

Forward witnesses
-----------------
``build_witness_dd12`` and ``build_witness_3col13`` turn a solution of
the source problem into a coloring of the output graph.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from abcolor.coloring import Color, MixedColoring, Params, d1, d2
from abcolor.config import Budget
from abcolor.errors import FormatError, GadgetRejected, ReductionError
from abcolor.gadgets import corner_candidate, h1_candidate
from abcolor.graph import Edge, Graph, build, girth, is_bipartite, write_graph
from abcolor.solver import (
    AtLeastOneD2, CornerPattern, ForcedD1, ForcedD2, GadgetProperty, GadgetSpec, IffD1D2,
    Verdict, check_gadget, describe_property,
)

logger = logging.getLogger(__name__)

SLOTS = 4


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CnfFormula:
    """Clauses of signed literals over variables 1..num_vars."""
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError(f"variable count must be non-negative, got {self.num_vars}")
        for i, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ValueError(f"clause {i} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {i}: literal {lit} outside ±1..±{self.num_vars}")

    @classmethod
    def from_clauses(cls, clauses: Iterable[Iterable[int]], num_vars: Optional[int] = None) -> "CnfFormula":
        """Build a formula, dropping repeated literals inside a clause."""
        deduped = tuple(tuple(dict.fromkeys(c)) for c in clauses)
        if num_vars is None:
            num_vars = max((abs(lit) for c in deduped for lit in c), default=0)
        return cls(num_vars, deduped)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[x - 1]`` is the value of variable x."""
        return all(any((lit > 0) == assignment[abs(lit) - 1] for lit in c) for c in self.clauses)


@dataclass(frozen=True)
class RestrictedSatCheck:
    """Occurrence counts against the restricted form: clause sizes 2 or 3, each
    variable twice positive and once negative."""
    positive: Tuple[int, ...]
    negative: Tuple[int, ...]
    clause_sizes: Tuple[int, ...]

    @property
    def sizes_ok(self) -> bool:
        return all(s in (2, 3) for s in self.clause_sizes)

    @property
    def occurrences_ok(self) -> bool:
        return all(p == 2 for p in self.positive) and all(q == 1 for q in self.negative)

    @property
    def passed(self) -> bool:
        return self.sizes_ok and self.occurrences_ok

    def problems(self) -> List[str]:
        out = [
            f"clause {i} has {s} literals"
            for i, s in enumerate(self.clause_sizes, start=1) if s not in (2, 3)
        ]
        for x, (p, q) in enumerate(zip(self.positive, self.negative), start=1):
            if (p, q) != (2, 1):
                out.append(f"variable {x} occurs {p} times positively and {q} times negatively")
        return out


def check_restricted(phi: CnfFormula) -> RestrictedSatCheck:
    positive = [0] * phi.num_vars
    negative = [0] * phi.num_vars
    for clause in phi.clauses:
        for lit in clause:
            if lit > 0:
                positive[lit - 1] += 1
            else:
                negative[-lit - 1] += 1
    return RestrictedSatCheck(tuple(positive), tuple(negative), tuple(len(c) for c in phi.clauses))


def parse_dimacs(text: str) -> CnfFormula:
    """
    Parse DIMACS CNF.  Clauses may span lines and end at ``0``; repeated
    literals inside a clause are dropped; a ``%`` line ends the input.
    """
    header_line: Optional[int] = None
    num_vars = num_clauses = 0
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    current_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header_line is not None:
                raise FormatError("duplicate header", line_no)
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise FormatError(f"expected 'p cnf <vars> <clauses>', got {line!r}", line_no)
            try:
                num_vars, num_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise FormatError(f"expected integer counts, got {line!r}", line_no) from None
            if num_vars < 0 or num_clauses < 0:
                raise FormatError("negative count in header", line_no)
            header_line = line_no
            continue
        if header_line is None:
            raise FormatError("clause before 'p cnf' header", line_no)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise FormatError(f"expected an integer literal, got {token!r}", line_no) from None
            if lit == 0:
                if not current:
                    raise FormatError("empty clause", line_no)
                clauses.append(tuple(dict.fromkeys(current)))
                current = []
                continue
            if abs(lit) > num_vars:
                raise FormatError(f"variable {abs(lit)} exceeds the declared {num_vars}", line_no)
            if not current:
                current_line = line_no
            current.append(lit)
    if header_line is None:
        raise FormatError("missing 'p cnf <vars> <clauses>' header")
    if current:
        raise FormatError("clause not terminated by 0", current_line)
    if len(clauses) != num_clauses:
        raise FormatError(f"header announces {num_clauses} clauses, found {len(clauses)}", header_line)
    return CnfFormula(num_vars, tuple(clauses))


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionOutput:
    graph: Graph
    params: Params
    # provenance[v] names the source entity output vertex v stands for
    provenance: Tuple[str, ...]
    notes: Tuple[str, ...] = ()
    # Construction details the witness builders read back
    layout: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)


def write_reduction(out: ReductionOutput) -> str:
    """Graph text with ``c params``/``c note`` lines first and ``c map`` lines after the edges."""
    head = [f"params {out.params.a} {out.params.b}"] + [f"note {note}" for note in out.notes]
    tail = "".join(f"c map {v + 1} {label}\n" for v, label in enumerate(out.provenance))
    return write_graph(out.graph, head) + tail


class _Assembly:
    """Output graph under construction, one provenance label per vertex."""

    def __init__(self) -> None:
        self.labels: List[str] = []
        self.edges: List[Edge] = []
        self.degree: List[int] = []

    def vertex(self, label: str) -> int:
        self.labels.append(label)
        self.degree.append(0)
        return len(self.labels) - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))
        self.degree[u] += 1
        self.degree[v] += 1

    def path(self, start: int, end: int, interior: int, label: str) -> Tuple[int, ...]:
        """Join ``start`` to ``end`` through ``interior`` new vertices; returns the whole path."""
        ids = [start] + [self.vertex(f"{label}{t}") for t in range(1, interior + 1)] + [end]
        for x, y in zip(ids, ids[1:]):
            self.edge(x, y)
        return tuple(ids)

    def copy(self, g: Graph, label: str, identify: Optional[Dict[int, int]] = None) -> List[int]:
        """Add a copy of ``g``; vertices in ``identify`` are mapped onto existing ones."""
        identify = identify or {}
        ids = [identify[i] if i in identify else self.vertex(f"{label}:{i + 1}") for i in range(g.n)]
        for x, y in g.edge_list():
            self.edge(ids[x], ids[y])
        return ids

    def pad(self, v: int, target: int, label: str) -> None:
        while self.degree[v] < target:
            self.edge(v, self.vertex(label))

    def finish(self, params: Params, notes: Sequence[str] = (), **layout: Any) -> ReductionOutput:
        g = build(len(self.labels), self.edges)
        return ReductionOutput(g, params, tuple(self.labels), tuple(notes), dict(layout))


def _require_degree(g: Graph, limit: int = SLOTS) -> None:
    for v in g.vertices:
        if g.degree(v) > limit:
            raise ReductionError(
                f"vertex {v + 1} has degree {g.degree(v)}; only {limit} connection slots per vertex"
            )


def _slots(g: Graph) -> Dict[Edge, Tuple[int, int]]:
    """Slot index consumed at each endpoint, round-robin in edge order."""
    _require_degree(g)
    used = [0] * g.n
    out: Dict[Edge, Tuple[int, int]] = {}
    for u, v in g.edge_list():
        out[(u, v)] = (used[u], used[v])
        used[u] += 1
        used[v] += 1
    return out


def _assert_structure(
    out: ReductionOutput,
    name: str,
    max_degree: Optional[int] = None,
    bipartite: bool = False,
    min_girth: Optional[int] = None,
) -> None:
    g = out.graph
    if max_degree is not None and g.max_degree > max_degree:
        raise ReductionError(f"{name}: maximum degree {g.max_degree} exceeds {max_degree}")
    if bipartite and not is_bipartite(g).is_bipartite:
        raise ReductionError(f"{name}: output is not bipartite")
    if min_girth is not None:
        gi = girth(g)
        if gi < min_girth:
            raise ReductionError(f"{name}: girth {gi} below {min_girth}")
    logger.info("%s: n=%d m=%d max_degree=%d", name, g.n, g.m, g.max_degree)


def _layout(out: ReductionOutput, kind: str) -> Dict[str, Any]:
    if out.layout.get("kind") != kind:
        raise ReductionError(f"output was not built by the {kind} reduction")
    return out.layout


# ---------------------------------------------------------------------------
# (Δ1,Δ1)-coloring -> (1,2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Connector:
    """Both length-9 paths of one source edge ``u < v``, anchors included."""
    u: int
    v: int
    first: Tuple[int, ...]
    second: Tuple[int, ...]
    # path positions of the anchors on u and on v
    first_at: Tuple[int, int]
    second_at: Tuple[int, int]


def reduce_dd_to_12(g: Graph, g0: int = 3) -> ReductionOutput:
    """
    Per vertex a path v_0..v_{42g0}; slot i of a vertex is the anchor pair
    (v_{12i g0}, v_{(12i+6) g0}).  An edge uv with slots i, j gets two
    paths of length 9: u_{12i g0} to v_{12j g0} and u_{(12i+6) g0} to
    v_{(12j+6) g0}.  Every v_{3i} of degree 2 then gets one pendant vertex.

    Output is (1,2)-colorable iff g has a 2-coloring in which each class
    induces maximum degree at most 1.
    """
    if g0 < 1:
        raise ValueError(f"girth parameter must be at least 1, got {g0}")
    length = 42 * g0
    asm = _Assembly()
    paths = [[asm.vertex(f"v{v + 1}.p{i}") for i in range(length + 1)] for v in g.vertices]
    for path in paths:
        for x, y in zip(path, path[1:]):
            asm.edge(x, y)

    connectors: List[_Connector] = []
    for (u, v), (i, j) in _slots(g).items():
        first_at = (12 * i * g0, 12 * j * g0)
        second_at = ((12 * i + 6) * g0, (12 * j + 6) * g0)
        label = f"e{u + 1}-{v + 1}"
        first = asm.path(paths[u][first_at[0]], paths[v][first_at[1]], 8, f"{label}.a")
        second = asm.path(paths[u][second_at[0]], paths[v][second_at[1]], 8, f"{label}.b")
        connectors.append(_Connector(u, v, first, second, first_at, second_at))

    for v, path in enumerate(paths):
        for pos in range(0, length + 1, 3):
            if asm.degree[path[pos]] == 2:
                asm.pad(path[pos], 3, f"v{v + 1}.p{pos}'")

    out = asm.finish(
        Params(1, 2),
        notes=(
            "slots consumed round-robin per vertex in edge order; planarity of the choice is not certified",
            "each v_3i of degree 2 gets one pendant; path ends of degree 1 stay bare",
        ),
        kind="dd12", source=g, paths=paths, connectors=connectors,
    )
    _assert_structure(
        out, "dd->(1,2)", max_degree=3,
        bipartite=is_bipartite(g).is_bipartite, min_girth=12 * g0 + 18,
    )
    return out


# Connector colors from the u end: X is u's class, Y the other one, D the D1 color.
_CROSS = "XDYXDYDXDY"
_SAME_FIRST = "XDYXDYXDYX"
_SAME_SECOND = "XYDXYDXYDX"


def build_witness_dd12(source_coloring: Sequence[int], out: ReductionOutput) -> MixedColoring:
    """
    Lift a 2-coloring whose classes induce maximum degree 1 to a
    (1,2)-coloring of the output.

    Path vertices v_{3i} take the D2 class of v.  Between two of them sits
    one vertex of the other class and one D1 vertex; the order flips once,
    at the anchor where a same-class edge needs it.
    """
    layout = _layout(out, "dd12")
    g: Graph = layout["source"]
    cls = _check_dd_coloring(g, source_coloring)

    colors: List[Color] = [d1(0)] * out.graph.n
    switch: List[Optional[int]] = [None] * g.n
    for con in layout["connectors"]:
        x, y = cls[con.u], 1 - cls[con.u]
        if cls[con.u] != cls[con.v]:
            patterns = (_CROSS, _CROSS)
        else:
            patterns = (_SAME_FIRST, _SAME_SECOND)
            switch[con.v] = con.first_at[1]
            switch[con.u] = con.second_at[0]
        for ids, pattern in zip((con.first, con.second), patterns):
            for vid, sym in zip(ids[1:-1], pattern[1:-1]):
                colors[vid] = d1(0) if sym == "D" else d2(x if sym == "X" else y)

    for v, path in enumerate(layout["paths"]):
        x, y, b = cls[v], 1 - cls[v], switch[v]
        for pos, vid in enumerate(path):
            r = pos % 3
            if r == 0:
                colors[vid] = d2(x)
                continue
            # segments ending before the switch put the other class first
            y_at = 1 if b is not None and pos - r + 2 < b else 2
            colors[vid] = d2(y) if r == y_at else d1(0)
    return MixedColoring(tuple(colors))


def _check_dd_coloring(g: Graph, coloring: Sequence[int]) -> List[int]:
    cls = list(coloring)
    if len(cls) != g.n:
        raise ReductionError(f"source coloring has {len(cls)} entries for {g.n} vertices")
    for v, c in enumerate(cls):
        if c not in (0, 1):
            raise ReductionError(f"vertex {v + 1} has class {c}; expected 0 or 1")
        same = sum(1 for w in g.adjacency[v] if cls[w] == c)
        if same > 1:
            raise ReductionError(f"vertex {v + 1} has {same} neighbors in its own class")
    return cls


# ---------------------------------------------------------------------------
# 3-coloring -> (1,3)
# ---------------------------------------------------------------------------

def reduce_3col_to_13(g: Graph, g0: int = 3) -> ReductionOutput:
    """
    Per vertex a path v_0..v_{18g0} whose vertices are padded to degree 4;
    an edge uv with slots i, j is a path of length 2 from u_{6i g0} to
    v_{6j g0}.  Padded path vertices are all D2 and repeat their classes
    with period 3, so the anchors of one vertex share a class.
    """
    if g0 < 1:
        raise ValueError(f"girth parameter must be at least 1, got {g0}")
    length = 18 * g0
    asm = _Assembly()
    paths = [[asm.vertex(f"v{v + 1}.p{i}") for i in range(length + 1)] for v in g.vertices]
    for path in paths:
        for x, y in zip(path, path[1:]):
            asm.edge(x, y)
    for (u, v), (i, j) in _slots(g).items():
        asm.path(paths[u][6 * i * g0], paths[v][6 * j * g0], 1, f"e{u + 1}-{v + 1}.m")
    for v, path in enumerate(paths):
        for pos, vid in enumerate(path):
            asm.pad(vid, 4, f"v{v + 1}.p{pos}'")

    out = asm.finish(
        Params(1, 3),
        notes=(
            f"connections at path positions 6*i*g0 = {', '.join(str(6 * i * g0) for i in range(SLOTS))}",
            "slots consumed round-robin per vertex in edge order; planarity of the choice is not certified",
        ),
        kind="3col13", source=g, paths=paths,
    )
    _assert_structure(out, "3col->(1,3)", max_degree=4, bipartite=True, min_girth=18 * g0 + 6)
    return out


def build_witness_3col13(source_coloring: Sequence[int], out: ReductionOutput) -> MixedColoring:
    """Path vertex v_i takes D2 class (c + i) mod 3 for the color c of v; the rest is D1."""
    layout = _layout(out, "3col13")
    g: Graph = layout["source"]
    cls = list(source_coloring)
    if len(cls) != g.n:
        raise ReductionError(f"source coloring has {len(cls)} entries for {g.n} vertices")
    for v, c in enumerate(cls):
        if c not in (0, 1, 2):
            raise ReductionError(f"vertex {v + 1} has color {c}; expected 0, 1 or 2")
    for u, v in g.edge_list():
        if cls[u] == cls[v]:
            raise ReductionError(f"edge ({u + 1}, {v + 1}) is monochromatic")

    colors: List[Color] = [d1(0)] * out.graph.n
    for v, path in enumerate(layout["paths"]):
        for i, vid in enumerate(path):
            colors[vid] = d2((cls[v] + i) % 3)
    return MixedColoring(tuple(colors))


# ---------------------------------------------------------------------------
# 3-coloring -> (3,1) and (3,k)
# ---------------------------------------------------------------------------

CORNERS = ("v1", "v2", "v3", "v4")


def reduce_3col_to_31(
    g: Graph,
    corner_gadget: Optional[GadgetSpec] = None,
    budget: Optional[Budget] = None,
) -> ReductionOutput:
    """
    One corner gadget per vertex.  An edge uv takes face (j, j+1) of u's
    gadget and face (i, i+1) of v's, and adds v_i u_{j+1}, v_{i+1} u_j
    and v_i u_j.
    """
    spec = corner_gadget or corner_candidate()
    _require_ports(spec, CORNERS)
    _certify(spec, Params(3, 1), [CornerPattern(CORNERS)], budget)

    asm = _Assembly()
    corners = []
    for w in g.vertices:
        ids = asm.copy(spec.graph, f"v{w + 1}.{spec.name}")
        corners.append([ids[spec.port(c)] for c in CORNERS])
    for (u, v), (j, i) in _slots(g).items():
        vi, vi1 = corners[v][i], corners[v][(i + 1) % SLOTS]
        uj, uj1 = corners[u][j], corners[u][(j + 1) % SLOTS]
        asm.edge(vi, uj1)
        asm.edge(vi1, uj)
        asm.edge(vi, uj)
    out = asm.finish(
        Params(3, 1),
        notes=("faces consumed round-robin per vertex in edge order; planarity of the choice is not certified",),
        kind="3col31", source=g,
    )
    _assert_structure(out, "3col->(3,1)")
    return out


def reduce_3col_to_3k(
    g: Graph,
    k: int,
    h1_gadget: Optional[GadgetSpec] = None,
    budget: Optional[Budget] = None,
) -> ReductionOutput:
    """Every vertex w of g gets a copy of the H1 gadget with port v identified with w."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    spec = h1_gadget or h1_candidate(k)
    _require_ports(spec, ("u", "v"))
    _certify(spec, Params(3, k), [ForcedD1("u"), ForcedD1("v")], budget)
    _require_degree(g)

    asm = _Assembly()
    base = [asm.vertex(f"v{w + 1}") for w in g.vertices]
    for u, v in g.edge_list():
        asm.edge(base[u], base[v])
    for w in g.vertices:
        asm.copy(spec.graph, f"v{w + 1}.{spec.name}", identify={spec.port("v"): base[w]})
    out = asm.finish(Params(3, k), kind="3col3k", source=g)
    _assert_structure(out, f"3col->(3,{k})", max_degree=3 * k + 4)
    return out


# ---------------------------------------------------------------------------
# Restricted planar 3-SAT -> (1,k) / (2,k)
# ---------------------------------------------------------------------------

LITERAL_PORTS = ("x", "y", "z")


def reduce_with_gadgets(
    phi: CnfFormula,
    k: int,
    var_gadget: GadgetSpec,
    clause_gadget: GadgetSpec,
    params: Params,
    scheme: str = "link",
    h_gadget: Optional[GadgetSpec] = None,
    budget: Optional[Budget] = None,
) -> ReductionOutput:
    """
    One variable gadget per variable and one clause gadget per clause.

    The literals of a clause go to the clause ports x, y, z in order.  A
    positive occurrence uses the variable port v (the second one uses v2
    when the gadget has it), a negative occurrence uses vbar.

    ``identify`` merges each clause port with its literal port.  ``link``
    joins them by an edge; the unused port z of a 2-literal clause is
    joined to the port s of a copy of ``h_gadget``.
    """
    if scheme not in ("identify", "link"):
        raise ValueError(f"Unknown wiring scheme '{scheme}'. Available: ['identify', 'link']")
    if params.b != k:
        raise ValueError(f"params {params} do not have b = k = {k}")
    check = check_restricted(phi)
    if not check.passed:
        raise ReductionError("formula is not restricted: " + "; ".join(check.problems()))

    _require_ports(var_gadget, ("v", "vbar"))
    _require_ports(clause_gadget, LITERAL_PORTS)
    var_props: List[GadgetProperty] = [IffD1D2("v", "vbar")]
    if "v2" in var_gadget.ports:
        var_props.append(IffD1D2("v2", "vbar"))
    _certify(var_gadget, params, var_props, budget)
    _certify(clause_gadget, params, [AtLeastOneD2(LITERAL_PORTS)], budget)

    if any(len(c) == 2 for c in phi.clauses):
        if scheme == "identify":
            raise ReductionError("identify wiring needs every clause to have three literals")
        if h_gadget is None:
            raise ReductionError("2-literal clauses need a forced-D2 gadget for the spare port")
        _require_ports(h_gadget, ("s",))
        _certify(h_gadget, params, [ForcedD2("s")], budget)

    asm = _Assembly()
    ports: List[Dict[str, int]] = []
    for x in range(1, phi.num_vars + 1):
        ids = asm.copy(var_gadget.graph, f"x{x}.{var_gadget.name}")
        ports.append({name: ids[v] for name, v in var_gadget.ports.items()})

    positives: Counter = Counter()
    for ci, clause in enumerate(phi.clauses, start=1):
        targets = []
        for lit in clause:
            var_ports = ports[abs(lit) - 1]
            if lit > 0:
                name = "v2" if positives[lit] and "v2" in var_ports else "v"
                positives[lit] += 1
            else:
                name = "vbar"
            targets.append(var_ports[name])
        label = f"C{ci}.{clause_gadget.name}"
        slots = [clause_gadget.port(p) for p in LITERAL_PORTS]
        if scheme == "identify":
            asm.copy(clause_gadget.graph, label, identify=dict(zip(slots, targets)))
            continue
        ids = asm.copy(clause_gadget.graph, label)
        for slot, target in zip(slots, targets):
            asm.edge(ids[slot], target)
        if len(clause) == 2:
            h_ids = asm.copy(h_gadget.graph, f"C{ci}.{h_gadget.name}")
            asm.edge(ids[clause_gadget.port("z")], h_ids[h_gadget.port("s")])

    out = asm.finish(
        params,
        notes=(f"{scheme} wiring; planarity of the clause-variable incidence graph is not checked",),
        kind="sat", formula=phi, scheme=scheme,
    )
    _assert_structure(out, f"sat->{params}")
    return out


# ---------------------------------------------------------------------------
# Gadget checks
# ---------------------------------------------------------------------------

def _require_ports(spec: GadgetSpec, names: Sequence[str]) -> None:
    missing = [n for n in names if n not in spec.ports]
    if missing:
        raise ReductionError(f"gadget {spec.name} lacks port(s) {', '.join(missing)}")


def _certify(
    spec: GadgetSpec,
    p: Params,
    props: Sequence[GadgetProperty],
    budget: Optional[Budget],
) -> None:
    check = check_gadget(spec, p, budget, properties=props)
    if check.verdict is Verdict.HOLDS:
        logger.debug("%s certified at %s (%d nodes)", spec.name, p, check.nodes_explored)
        return
    prop = describe_property(check.failed_property)
    if check.verdict is Verdict.FAILS:
        raise GadgetRejected(f"gadget {spec.name}: {prop} fails at {p}", prop)
    raise GadgetRejected(f"gadget {spec.name}: {prop} undecided at {p} within the budget", prop)
