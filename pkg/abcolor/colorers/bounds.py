"""
Bound certificates, cluster partitions and the shared finishing pass of
the constructive colorers.

Claims are kept exact: a certificate stores ``sqrt(radicand) + offset``
with a rational radicand, and ``holds()`` compares the number of
distance-2 classes against it without floating point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from abcolor.coloring import Color, MixedColoring, Params, Tag, canonicalize, count_classes, verify
from abcolor.errors import OracleFailure
from abcolor.graph import Graph, VertexSet

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCertificate:
    """Quantities a colorer's upper-bound argument is stated in."""
    algorithm: str
    n: int
    # Degree threshold separating the high-degree set S
    threshold: float
    s_size: int
    s_prime_size: int
    used_d1: int
    used_d2: int
    # claim = sqrt(radicand) + offset
    radicand: Fraction
    offset: int
    formula: str
    # Best known lower bound on b for the graph class, when there is one
    lower_bound: Optional[float] = None
    details: Dict[str, int] = field(default_factory=dict)

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    @property
    def claim(self) -> float:
        return max(0.0, math.sqrt(self.radicand) + self.offset)

    def holds(self) -> bool:
        """``used_d2 <= max(0, sqrt(radicand) + offset)``, decided exactly."""
        if self.used_d2 == 0:
            return True
        x = self.used_d2 - self.offset
        return x <= 0 or x * x <= self.radicand

    def bound_line(self) -> str:
        return (
            f"c BOUND n={self.n} N={self.threshold:.3f} used_d2={self.used_d2} "
            f"claim={self.formula}={self.claim:.3f}"
        )

    def get_status(self) -> Dict:
        """Summary dict for reports."""
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "N": round(self.threshold, 3),
            "S": self.s_size,
            "S_prime": self.s_prime_size,
            "used_d1": self.used_d1,
            "used_d2": self.used_d2,
            "claim": self.formula,
            "claim_value": round(self.claim, 3),
            "holds": self.holds(),
            "lower_bound": None if self.lower_bound is None else round(self.lower_bound, 3),
            **self.details,
        }


# Exact claims: algorithm -> (radicand per vertex, offset, formula)

def degenerate_claim(k: int) -> Tuple[Fraction, int, str]:
    return Fraction(16 * k * k * (k + 1)), 0, f"4*{k}*sqrt({k + 1})*sqrt(n)"


TF_OUTERPLANAR_CLAIM = (Fraction(544, 5), -1, "4*sqrt(34/5)*sqrt(n)-1")
PLANAR_G4_CLAIM = (Fraction(640), 0, "8*sqrt(10)*sqrt(n)")
PLANAR_CLAIM = (Fraction(648), 0, "18*sqrt(2)*sqrt(n)")


def make_certificate(
    algorithm: str,
    g: Graph,
    threshold: float,
    s: VertexSet,
    s_prime: VertexSet,
    coloring: MixedColoring,
    claim: Tuple[Fraction, int, str],
    lower_bound: Optional[float] = None,
    details: Optional[Dict[str, int]] = None,
) -> BoundCertificate:
    per_vertex, offset, formula = claim
    used_d1, used_d2 = count_classes(coloring)
    cert = BoundCertificate(
        algorithm=algorithm,
        n=g.n,
        threshold=threshold,
        s_size=len(s),
        s_prime_size=len(s_prime),
        used_d1=used_d1,
        used_d2=used_d2,
        radicand=per_vertex * g.n,
        offset=offset,
        formula=formula,
        lower_bound=lower_bound,
        details=dict(details or {}),
    )
    if not cert.holds():
        logger.warning("%s: %d distance-2 classes exceed the claim %s", algorithm, used_d2, formula)
    return cert


def high_degree_set(g: Graph, squared_threshold: Fraction) -> VertexSet:
    """Vertices with ``deg(v) >= sqrt(squared_threshold)``."""
    return frozenset(v for v in g.vertices if g.degree(v) ** 2 >= squared_threshold)


# ---------------------------------------------------------------------------
# Cluster partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClusterPartition:
    """Connected parts at pairwise distance at least 4, grown from a seed set."""
    s_prime: VertexSet
    parts: Tuple[VertexSet, ...]
    seed_size: int


# ---------------------------------------------------------------------------
# Finishing pass
# ---------------------------------------------------------------------------

def compact(g: Graph, c: MixedColoring, a: int) -> MixedColoring:
    """Move each D2 vertex, in vertex order, to the smallest D1 class free around it."""
    colors: List[Color] = list(c.colors)
    for v in g.vertices:
        if colors[v][0] is not Tag.D2:
            continue
        taken = {colors[w][1] for w in g.adjacency[v] if colors[w][0] is Tag.D1}
        for i in range(a):
            if i not in taken:
                colors[v] = (Tag.D1, i)
                break
    return MixedColoring(tuple(colors))


def finish(g: Graph, a: int, colors: Sequence[Optional[Color]], algorithm: str, compact_pass: bool) -> MixedColoring:
    """Compact, canonicalize and verify a colorer's raw assignment."""
    c = MixedColoring(tuple(colors))
    if compact_pass:
        c = compact(g, c, a)
    c = canonicalize(c)
    _, used_d2 = count_classes(c)
    violations = verify(g, Params(a, used_d2), c)
    if violations:
        raise OracleFailure(f"{algorithm} produced an invalid coloring: {violations[0]}")
    return c
