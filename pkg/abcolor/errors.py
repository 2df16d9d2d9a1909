"""
Exception hierarchy for abcolor.

Input-shaped problems (bad graphs, malformed files, inputs outside a
colorer's graph class) derive from ``ValueError`` as well as from
``AbColorError`` so callers can catch either.  Failures of an internal
oracle are ``RuntimeError``s.
"""

from typing import Optional, Tuple


class AbColorError(Exception):
    """Base class for every error raised by the package."""


# ---------------------------------------------------------------------------
# Input errors
# ---------------------------------------------------------------------------

class GraphError(AbColorError, ValueError):
    """Rejected edge list: self-loop or endpoint outside 0..n-1."""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class FormatError(AbColorError, ValueError):
    """Malformed text input (graph, certificate, DIMACS or gadget file)."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ColoringError(AbColorError, ValueError):
    """A coloring handed to an operation that cannot accept it."""

    def __init__(self, message: str, vertex: Optional[int] = None):
        super().__init__(message)
        self.vertex = vertex


class PreconditionError(AbColorError, ValueError):
    """The input graph lies outside the class a colorer is defined on."""


class GadgetRejected(AbColorError, ValueError):
    """A gadget failed one of the behavioral properties a reduction needs."""

    def __init__(self, message: str, prop: str = ""):
        super().__init__(message)
        self.prop = prop


class ReductionError(AbColorError, ValueError):
    """Slot exhaustion, an invalid source coloring or a failed structural check."""


# ---------------------------------------------------------------------------
# Runtime errors
# ---------------------------------------------------------------------------

class OracleFailure(AbColorError, RuntimeError):
    """A subroutine broke its contract: the exact solver gave up, or a colorer emitted an invalid coloring."""


class EnumerationOverflow(AbColorError, RuntimeError):
    """More colorings exist than the enumeration cap allows."""

    def __init__(self, cap: int):
        super().__init__(f"more than {cap} colorings; raise the cap")
        self.cap = cap
