"""
Mixed (a,b)-colorings, their verifier and the certificate format.

A vertex carries either a distance-1 color ``D1(i)`` with ``0 <= i < a``
or a distance-2 color ``D2(j)`` with ``0 <= j < b``.  A D1 class must be
independent in G; a D2 class must be independent in G² (pairwise
distance at least 3).

Certificate format
------------------
    s COLORING a=<a> b=<b>
    v <vertex, 1-based> d1 <i>
    v <vertex, 1-based> d2 <j>
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from abcolor.errors import ColoringError, FormatError
from abcolor.graph import Graph, square


# ---------------------------------------------------------------------------
# Parameters and tags
# ---------------------------------------------------------------------------

class Tag(Enum):
    D1 = "d1"
    D2 = "d2"


Color = Tuple[Tag, int]


def d1(i: int) -> Color:
    return (Tag.D1, i)


def d2(j: int) -> Color:
    return (Tag.D2, j)


@dataclass(frozen=True)
class Params:
    """Numbers of distance-1 classes ``a`` and distance-2 classes ``b``."""
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ValueError(f"class counts must be non-negative, got ({self.a}, {self.b})")

    @property
    def total(self) -> int:
        return self.a + self.b

    # Solver-side integer encoding: D1(i) -> i, D2(j) -> a + j.

    def encode(self, color: Color) -> int:
        tag, idx = color
        return idx if tag is Tag.D1 else self.a + idx

    def decode(self, value: int) -> Color:
        return (Tag.D1, value) if value < self.a else (Tag.D2, value - self.a)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixedColoring:
    """
    Per-vertex tagged colors.

    ``colors[v]`` is ``None`` only in a partial coloring; total colorings
    are the default and the only kind :func:`verify` accepts.
    """

    colors: Tuple[Optional[Color], ...]
    partial: bool = False

    def __post_init__(self) -> None:
        if not self.partial:
            for v, c in enumerate(self.colors):
                if c is None:
                    raise ColoringError(f"vertex {v} is uncolored in a total coloring", v)

    @classmethod
    def empty(cls, n: int) -> "MixedColoring":
        return cls(tuple([None] * n), partial=True)

    @classmethod
    def from_values(cls, values: Sequence[int], a: int) -> "MixedColoring":
        """Decode solver values (``D1(i) -> i``, ``D2(j) -> a + j``)."""
        return cls(tuple((Tag.D1, x) if x < a else (Tag.D2, x - a) for x in values))

    @classmethod
    def from_mapping(cls, n: int, mapping: Dict[int, Color]) -> "MixedColoring":
        cols = tuple(mapping.get(v) for v in range(n))
        return cls(cols, partial=any(c is None for c in cols))

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self.colors)

    def __getitem__(self, v: int) -> Optional[Color]:
        return self.colors[v]

    def vertices_with(self, tag: Tag) -> List[int]:
        return [v for v, c in enumerate(self.colors) if c is not None and c[0] is tag]

    def classes(self, tag: Tag) -> Dict[int, List[int]]:
        """Class index -> members, for one tag."""
        out: Dict[int, List[int]] = {}
        for v, c in enumerate(self.colors):
            if c is not None and c[0] is tag:
                out.setdefault(c[1], []).append(v)
        return out

    def to_values(self, p: Params) -> List[int]:
        return [p.encode(c) for c in self.colors]


class ViolationKind(Enum):
    D1_EDGE = "D1-edge"
    D2_DIST1 = "D2-dist1"
    D2_DIST2 = "D2-dist2"
    OUT_OF_RANGE = "out-of-range"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    # A vertex pair for edge/distance conflicts, a single vertex otherwise
    witness: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind.value} at {' '.join(str(v + 1) for v in self.witness)}"


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def verify(g: Graph, p: Params, c: MixedColoring, allow_partial: bool = False) -> List[Violation]:
    """
    Every violated constraint of ``c`` on ``g`` at parameters ``p``.

    The list is empty iff each D1 class is independent in ``g`` and each
    D2 class is independent in ``square(g)``.  A partial coloring raises
    :class:`ColoringError` naming an uncolored vertex unless
    ``allow_partial`` is set, in which case uncolored vertices are skipped.
    """
    if c.n != g.n:
        raise ColoringError(f"coloring covers {c.n} vertices, graph has {g.n}")
    if not allow_partial:
        for v, col in enumerate(c.colors):
            if col is None:
                raise ColoringError(f"vertex {v + 1} is uncolored", v)

    out: List[Violation] = []
    for v, col in enumerate(c.colors):
        if col is None:
            continue
        tag, idx = col
        bound = p.a if tag is Tag.D1 else p.b
        if not 0 <= idx < bound:
            out.append(Violation(ViolationKind.OUT_OF_RANGE, (v,)))

    for u, v in g.edge_list():
        cu, cv = c.colors[u], c.colors[v]
        if cu is not None and cu == cv:
            kind = ViolationKind.D1_EDGE if cu[0] is Tag.D1 else ViolationKind.D2_DIST1
            out.append(Violation(kind, (u, v)))

    far = set()
    for w in range(g.n):
        by_class: Dict[int, List[int]] = {}
        for x in g.adjacency[w]:
            cx = c.colors[x]
            if cx is not None and cx[0] is Tag.D2:
                by_class.setdefault(cx[1], []).append(x)
        for members in by_class.values():
            for i, x in enumerate(members):
                for y in members[i + 1:]:
                    if not g.has_edge(x, y):
                        far.add((x, y))
    out.extend(Violation(ViolationKind.D2_DIST2, pair) for pair in sorted(far))
    return out


def verify_via_square(g: Graph, p: Params, c: MixedColoring) -> bool:
    """Redundant verifier: D1 classes on ``g``, D2 classes on ``square(g)``."""
    if c.n != g.n or not c.is_total:
        raise ColoringError("verify_via_square needs a total coloring of the graph")
    for tag, idx in c.colors:
        if not 0 <= idx < (p.a if tag is Tag.D1 else p.b):
            return False
    sq = square(g)
    for u, v in g.edges:
        if c.colors[u][0] is Tag.D1 and c.colors[u] == c.colors[v]:
            return False
    for u, v in sq.edges:
        if c.colors[u][0] is Tag.D2 and c.colors[u] == c.colors[v]:
            return False
    return True


def is_valid(g: Graph, p: Params, c: MixedColoring) -> bool:
    return not verify(g, p, c)


def count_classes(c: MixedColoring) -> Tuple[int, int]:
    """Distinct class indices actually used, as ``(used_d1, used_d2)``."""
    if not c.is_total:
        raise ColoringError("count_classes needs a total coloring")
    return len(c.classes(Tag.D1)), len(c.classes(Tag.D2))


def canonicalize(c: MixedColoring) -> MixedColoring:
    """Renumber the classes of each tag by least member vertex."""
    relabel: Dict[Tag, Dict[int, int]] = {Tag.D1: {}, Tag.D2: {}}
    out: List[Optional[Color]] = []
    for col in c.colors:
        if col is None:
            out.append(None)
            continue
        tag, idx = col
        table = relabel[tag]
        if idx not in table:
            table[idx] = len(table)
        out.append((tag, table[idx]))
    return MixedColoring(tuple(out), partial=c.partial)


def reinterpret(c: MixedColoring, p: Params, wider: Params) -> MixedColoring:
    """
    Reuse a coloring at parameters ``wider >= p`` with indices unchanged.

    Raises ``ValueError`` when ``wider`` shrinks either class count and
    :class:`ColoringError` when ``c`` uses a class index outside ``p``.
    """
    if wider.a < p.a or wider.b < p.b:
        raise ValueError(f"{wider} does not dominate {p}")
    for v, col in enumerate(c.colors):
        if col is not None and not 0 <= col[1] < (p.a if col[0] is Tag.D1 else p.b):
            raise ColoringError(f"vertex {v + 1} has class {col[1]} outside {p}", v)
    return c


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def write_certificate(c: MixedColoring, p: Params, canonical: bool = True) -> str:
    if canonical:
        c = canonicalize(c)
    lines = [f"s COLORING a={p.a} b={p.b}"]
    for v, col in enumerate(c.colors):
        if col is not None:
            lines.append(f"v {v + 1} {col[0].value} {col[1]}")
    return "\n".join(lines) + "\n"


def read_certificate(text: str, n: Optional[int] = None) -> Tuple[MixedColoring, Params]:
    """
    Parse a certificate.

    ``c`` lines and status lines other than ``s COLORING`` are skipped so
    the solver's full output can be fed back.  Vertices missing from the
    certificate leave the coloring partial.
    """
    params: Optional[Params] = None
    mapping: Dict[int, Color] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "s":
            if len(fields) >= 2 and fields[1] == "COLORING":
                if params is not None:
                    raise FormatError("duplicate 's COLORING' header", line_no)
                params = _parse_params(fields[2:], line_no)
            continue
        if fields[0] != "v":
            raise FormatError(f"unknown line type {fields[0]!r}", line_no)
        if params is None:
            raise FormatError("'v' line before 's COLORING' header", line_no)
        if len(fields) != 4 or fields[2] not in ("d1", "d2"):
            raise FormatError(f"expected 'v <vertex> d1|d2 <index>', got {raw.strip()!r}", line_no)
        try:
            vertex, idx = int(fields[1]), int(fields[3])
        except ValueError:
            raise FormatError(f"expected integers in {raw.strip()!r}", line_no) from None
        if vertex < 1 or (n is not None and vertex > n):
            raise FormatError(f"vertex {vertex} outside 1..{n if n is not None else '?'}", line_no)
        if idx < 0:
            raise FormatError(f"negative class index {idx}", line_no)
        if vertex - 1 in mapping:
            raise FormatError(f"vertex {vertex} colored twice", line_no)
        mapping[vertex - 1] = (Tag(fields[2]), idx)
    if params is None:
        raise FormatError("missing 's COLORING a=<a> b=<b>' header")
    size = n if n is not None else (max(mapping) + 1 if mapping else 0)
    return MixedColoring.from_mapping(size, mapping), params


def _parse_params(fields: Iterable[str], line_no: int) -> Params:
    values: Dict[str, int] = {}
    for f in fields:
        key, _, val = f.partition("=")
        try:
            values[key] = int(val)
        except ValueError:
            raise FormatError(f"bad parameter {f!r}", line_no) from None
    if set(values) != {"a", "b"}:
        raise FormatError("header needs exactly a=<a> b=<b>", line_no)
    return Params(values["a"], values["b"])
