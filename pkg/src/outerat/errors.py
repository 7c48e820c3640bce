"""Exception types shared across the package."""

from __future__ import annotations

from enum import Enum


class OuteratError(Exception):
    """Base class for every error raised by this package."""


class GraphError(OuteratError, ValueError):
    """Malformed graph input or an invalid embedding."""


class CrossingChords(GraphError):
    pass


class DuplicateChord(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class Reason(str, Enum):
    """Why an instance is outside the class an operation needs.

    Checked in declaration order, so the first failing reason is reported.
    """

    NOT_TWO_CONNECTED = "NotTwoConnected"
    NOT_OUTERPLANAR = "NotOuterplanar"
    ODD_CYCLE_WITH_EMPTY_S = "OddCycleWithEmptyS"
    EVEN_CYCLE_WITH_EMPTY_S = "EvenCycleWithEmptyS"
    NOT_BIPARTITE = "NotBipartite"


class ClassRejected(OuteratError):
    def __init__(self, reason: Reason, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


class DecompositionError(OuteratError):
    """A structural request that the graph cannot satisfy (e.g. an ear-chain of a cycle)."""


class IsCycle(DecompositionError):
    pass


class IsK2(DecompositionError):
    pass


class TooManyArcs(OuteratError):
    pass


class StateSpaceTooLarge(OuteratError):
    pass


class OrientationMismatch(OuteratError, ValueError):
    """An orientation does not orient exactly the edges of the graph."""


class InvariantBreach(OuteratError, AssertionError):
    """An inductive step produced an orientation violating its bound. Should never fire."""
