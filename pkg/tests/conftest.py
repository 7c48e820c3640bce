from __future__ import annotations

import pytest

from outerat.graph import OuterplaneGraph

NAMED = {
    "K2": OuterplaneGraph((0, 1)),
    "C3": OuterplaneGraph((0, 1, 2)),
    "C4": OuterplaneGraph((0, 1, 2, 3)),
    "C5": OuterplaneGraph((0, 1, 2, 3, 4)),
    "C6": OuterplaneGraph((0, 1, 2, 3, 4, 5)),
    "T4": OuterplaneGraph((0, 1, 2, 3), ((0, 2),)),
    "F6": OuterplaneGraph((0, 1, 2, 3, 4, 5), ((0, 3),)),
    "E7": OuterplaneGraph((0, 1, 2, 3, 4, 5, 6), ((0, 4), (1, 3))),
}


@pytest.fixture
def graphs() -> dict[str, OuterplaneGraph]:
    return NAMED


def arcs_of(D) -> set[tuple[int, int, int]]:
    return {(a.tail, a.head, a.weight) for a in D.arcs}
