"""
Candidate gadgets for the reductions, and the gadget file format.

The reductions accept any gadget that passes :func:`check_gadget` for
the properties they need; the graphs built here are one way to meet
those properties, small enough for the exact solver to certify.

Candidates
----------
* ``h1_candidate(k)``     – u adjacent to v and to the hubs of k copies of
                            the (3,k) windmill; u and v forced D1 at (3,k)
* ``var_candidate(h)``    – two odd cycles through a shared vertex vbar;
                            v and v2 are D1 exactly when vbar is D2
* ``clause_candidate(h)`` – a 9-cycle with ports x, y, z at distance 3;
                            at least one port is D2
* ``corner_candidate()``  – four corners on a book over the edge ab,
                            a hub forced D2 adjacent to a and b

The variable and clause candidates block every non-port cycle vertex
with a pin: a vertex p adjacent to the blocked vertex and to the hubs of
k copies of the forced-D2 gadget ``h``.  The hubs take k distinct D2
classes, so p and the blocked vertex can only be D1.  Both candidates
are certified at (2,1).

File format
-----------
The graph text format plus comment lines::

    c gadget <name>
    c params <a> <b>
    c port <name> <vertex>          (1-based)
    c property <kind> <port> ...
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from abcolor.coloring import Params
from abcolor.errors import FormatError
from abcolor.generators import gen_windmill
from abcolor.graph import Edge, build, read_graph, write_graph
from abcolor.solver import (
    AtLeastOneD2, CornerPattern, ForcedD1, GadgetSpec, IffD1D2, describe_property,
    make_property, property_kind,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Candidates
# ---------------------------------------------------------------------------

def h1_candidate(k: int) -> GadgetSpec:
    """
    u (vertex 0) and v (vertex 1), u adjacent to v and to the hub of each
    of k copies of ``gen_windmill(3, k)``.

    A D2 color on u or v would need a (k+1)-th class besides the k hubs,
    which are pairwise at distance 2.  Hubs reach degree 3k+4.
    """
    if k < 1:
        raise ValueError(f"h1_candidate needs k >= 1, got {k}")
    windmill = gen_windmill(3, k)
    edges: List[Edge] = [(0, 1)]
    n = 2
    for _ in range(k):
        edges.extend((x + n, y + n) for x, y in windmill.graph.edges)
        edges.append((0, n + windmill.port("s")))
        n += windmill.graph.n
    return GadgetSpec(
        build(n, edges),
        {"u": 0, "v": 1},
        (ForcedD1("u"), ForcedD1("v")),
        Params(3, k),
        name=f"h1({k})",
    )


def var_candidate(h: GadgetSpec, cycle_length: int = 9) -> GadgetSpec:
    """
    Variable gadget for the edge-linked wiring.

    Two cycles of odd length share vbar; on the first, v sits two steps
    from vbar, on the second v2 does.  Every other cycle vertex is
    pinned to D1, so each cycle needs a D2 port, and two ports at
    distance 2 cannot share the single D2 class at (2,1).
    """
    if cycle_length < 5 or cycle_length % 2 == 0:
        raise ValueError(f"cycle length must be odd and at least 5, got {cycle_length}")
    first = list(range(cycle_length))
    # second cycle reuses vbar (vertex 2) at its own position 2
    second = [cycle_length, cycle_length + 1, 2] + [cycle_length + 2 + i for i in range(cycle_length - 3)]
    edges: List[Edge] = []
    blocked: List[int] = []
    for cycle in (first, second):
        edges += [(cycle[i], cycle[(i + 1) % cycle_length]) for i in range(cycle_length)]
        blocked += [cycle[i] for i in range(cycle_length) if i not in (0, 2)]

    n = _pin(2 * cycle_length - 1, edges, blocked, h)
    return GadgetSpec(
        build(n, edges),
        {"v": 0, "vbar": 2, "v2": second[0]},
        (IffD1D2("v", "vbar"), IffD1D2("v2", "vbar")),
        Params(2, _classes(h)),
        name=f"var(C{cycle_length})",
    )


def clause_candidate(h: GadgetSpec) -> GadgetSpec:
    """9-cycle with ports x = 0, y = 3, z = 6; the other six vertices are pinned to D1."""
    edges: List[Edge] = [(i, (i + 1) % 9) for i in range(9)]
    blocked = [i for i in range(9) if i % 3]
    n = _pin(9, edges, blocked, h)
    return GadgetSpec(
        build(n, edges),
        {"x": 0, "y": 3, "z": 6},
        (AtLeastOneD2(("x", "y", "z")),),
        Params(2, _classes(h)),
        name="clause(C9)",
    )


def corner_candidate() -> GadgetSpec:
    """
    Corners 0..3 each adjacent to a (4) and b (5); the hub of a copy of
    ``gen_windmill(3, 1)`` sees a and b.

    The hub is the only D2 vertex within distance 2 of a, b and the
    corners, so all of them are D1; a and b take two colors and every
    corner the third.
    """
    windmill = gen_windmill(3, 1)
    a, b, off = 4, 5, 6
    edges: List[Edge] = [(a, b)]
    for c in range(4):
        edges += [(c, a), (c, b)]
    edges.extend((x + off, y + off) for x, y in windmill.graph.edges)
    hub = off + windmill.port("s")
    edges += [(hub, a), (hub, b)]
    names = ("v1", "v2", "v3", "v4")
    return GadgetSpec(
        build(off + windmill.graph.n, edges),
        {name: i for i, name in enumerate(names)},
        (CornerPattern(names),),
        Params(3, 1),
        name="corner",
    )


def _classes(h: GadgetSpec) -> int:
    return h.params.b if h.params is not None else 1


def _pin(n: int, edges: List[Edge], blocked: Iterable[int], h: GadgetSpec) -> int:
    """Append the hub copies and one pin per blocked vertex; returns the new order."""
    if "s" not in h.ports:
        raise ValueError(f"pin gadget {h.name} has no port 's'")
    hubs = []
    for _ in range(_classes(h)):
        edges.extend((x + n, y + n) for x, y in h.graph.edges)
        hubs.append(n + h.port("s"))
        n += h.graph.n
    for x in blocked:
        edges.append((n, x))
        edges.extend((n, s) for s in hubs)
        n += 1
    return n


CANDIDATES = {
    "h1": {
        "name": "H1",
        "description": "u, v forced D1 at (3,k); for the 3-coloring to (3,k) reduction",
        "function": h1_candidate,
    },
    "var": {
        "name": "Variable",
        "description": "v, v2 D1 iff vbar D2 at (2,1); for the edge-linked SAT reduction",
        "function": var_candidate,
    },
    "clause": {
        "name": "Clause",
        "description": "some port of x, y, z is D2 at (2,1); for the edge-linked SAT reduction",
        "function": clause_candidate,
    },
    "corner": {
        "name": "Corner",
        "description": "corner pattern at (3,1); for the 3-coloring to (3,1) reduction",
        "function": corner_candidate,
    },
}


def get_candidate(key: str) -> Callable[..., GadgetSpec]:
    if key not in CANDIDATES:
        raise ValueError(f"Unknown gadget '{key}'. Available: {sorted(CANDIDATES)}")
    return CANDIDATES[key]["function"]


def list_candidates() -> List[Dict]:
    return [{"key": key, "name": c["name"], "description": c["description"]} for key, c in CANDIDATES.items()]


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def write_gadget(spec: GadgetSpec, provenance: Sequence[str] = ()) -> str:
    comments = list(provenance) + [f"gadget {spec.name}"]
    if spec.params is not None:
        comments.append(f"params {spec.params.a} {spec.params.b}")
    comments += [f"port {name} {v + 1}" for name, v in spec.ports.items()]
    comments += [f"property {property_kind(p)} {' '.join(p.ports)}" for p in spec.properties]
    return write_graph(spec.graph, comments)


def read_gadget(text: str) -> GadgetSpec:
    """Parse a gadget file; errors carry the line number of the offending comment."""
    graph, _ = read_graph(text)
    name = "gadget"
    params: Optional[Params] = None
    ports: Dict[str, int] = {}
    props = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if len(fields) < 2 or fields[0] != "c":
            continue
        key, rest = fields[1], fields[2:]
        try:
            if key == "gadget" and rest:
                name = " ".join(rest)
            elif key == "params":
                if len(rest) != 2:
                    raise ValueError("expected 'c params <a> <b>'")
                params = Params(int(rest[0]), int(rest[1]))
            elif key == "port":
                if len(rest) != 2:
                    raise ValueError("expected 'c port <name> <vertex>'")
                v = int(rest[1])
                if not 1 <= v <= graph.n:
                    raise ValueError(f"port vertex {v} outside 1..{graph.n}")
                if rest[0] in ports:
                    raise ValueError(f"duplicate port '{rest[0]}'")
                ports[rest[0]] = v - 1
            elif key == "property":
                if not rest:
                    raise ValueError("expected 'c property <kind> <port> ...'")
                props.append((line_no, make_property(rest[0], rest[1:])))
        except ValueError as exc:
            raise FormatError(str(exc), line_no) from None
    for line_no, prop in props:
        for port in prop.ports:
            if port not in ports:
                raise FormatError(f"property {describe_property(prop)} names unknown port '{port}'", line_no)
    try:
        spec = GadgetSpec(graph, ports, tuple(p for _, p in props), params, name=name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    logger.debug("read gadget %s: n=%d ports=%s", name, graph.n, sorted(ports))
    return spec
