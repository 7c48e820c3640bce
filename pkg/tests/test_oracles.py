from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import NAMED
from outerat.errors import ClassRejected, StateSpaceTooLarge, TooManyArcs
from outerat.generators import sample_configs
from outerat.oracles import (
    at_poly_coefficient,
    check_bipartite_all_even,
    check_L_coloring,
    eulerian_census,
    eulerian_census_naive,
    is_at,
    solve_paint_game,
    truncated_demand,
)
from outerat.recognition import RawGraph


def directed_cycle(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def random_orientation(G, rng: random.Random) -> list[tuple[int, int]]:
    return [(a, b) if rng.random() < 0.5 else (b, a) for a, b in sorted(G.edges)]


def test_census_examples():
    c = eulerian_census([(1, 0)])
    assert (c.even_count, c.odd_count, c.total, c.diff) == (1, 0, 1, 1)
    c = eulerian_census(directed_cycle(3))
    assert (c.even_count, c.odd_count, c.total, c.diff) == (1, 1, 2, 0)
    c = eulerian_census([(0, 1, 2), (1, 0, 1)])
    assert (c.even_count, c.odd_count, c.total, c.diff) == (1, 0, 1, 1)
    assert str(eulerian_census(directed_cycle(3))) == "even=1 odd=1 diff=0"


def test_census_parity_counts_arcs_not_weight():
    # digon with equal weights 2: the 2-arc subset balances and is even
    c = eulerian_census([(0, 1, 2), (1, 0, 2)])
    assert (c.even_count, c.odd_count) == (2, 0)
    # weight-2 arc balanced by two parallel weight-1 arcs: 3 arcs (odd) of total weight 4
    arcs = [(0, 1, 2), (1, 0, 1), (1, 0, 1)]
    c = eulerian_census(arcs)
    assert (c.even_count, c.odd_count) == (1, 1)
    assert eulerian_census_naive(arcs) == c


def test_is_at_examples():
    assert is_at(directed_cycle(4)) and eulerian_census(directed_cycle(4)).diff == 2
    assert not is_at(directed_cycle(3))
    assert is_at([(0, 1), (0, 2), (1, 2), (2, 3), (1, 3)])


def test_poly_examples():
    assert at_poly_coefficient([(0, 1)]) == 1
    assert at_poly_coefficient(directed_cycle(3)) == 0
    assert at_poly_coefficient([(0, 1), (0, 2), (1, 2)]) == 1
    with pytest.raises(ValueError):
        at_poly_coefficient([(0, 1, 2)])


def test_guards():
    with pytest.raises(TooManyArcs):
        eulerian_census([(i, i + 1) for i in range(31)])
    with pytest.raises(TooManyArcs):
        at_poly_coefficient([(i, i + 1) for i in range(17)])
    big = RawGraph.from_edges(9, directed_cycle(9))
    with pytest.raises(StateSpaceTooLarge):
        solve_paint_game(big, [2] * 9)
    with pytest.raises(StateSpaceTooLarge):
        solve_paint_game(RawGraph.from_edges(2, [(0, 1)]), [6, 1])
    with pytest.raises(StateSpaceTooLarge):
        check_L_coloring(big, {v: range(5) for v in range(9)})


@pytest.mark.parametrize("name", ["C3", "C4", "T4", "K2"])
def test_poly_matches_census_exhaustively(name):
    edges = sorted(NAMED[name].edges)
    for flips in itertools.product((False, True), repeat=len(edges)):
        arcs = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
        assert abs(at_poly_coefficient(arcs)) == abs(eulerian_census(arcs).diff)


@settings(max_examples=200, deadline=None)
@given(data=st.data(), m=st.integers(0, 14))
def test_split_census_matches_naive_and_reversal(data, m):
    arcs = [
        (data.draw(st.integers(0, 5)), data.draw(st.integers(0, 5)), data.draw(st.integers(1, 2)))
        for _ in range(m)
    ]
    arcs = [(t, h, w) for t, h, w in arcs if t != h]
    c = eulerian_census(arcs)
    assert c == eulerian_census_naive(arcs)
    assert c == eulerian_census([(h, t, w) for t, h, w in arcs])
    assert c.total >= 1


def test_bipartite_all_even_examples():
    assert check_bipartite_all_even(directed_cycle(4), directed_cycle(4))
    assert check_bipartite_all_even(directed_cycle(6), directed_cycle(6))
    rng = random.Random(3)
    F6 = NAMED["F6"]
    for _ in range(50):
        assert check_bipartite_all_even(random_orientation(F6, rng), F6.edges)
    with pytest.raises(ClassRejected):
        check_bipartite_all_even(directed_cycle(3), directed_cycle(3))


def test_bipartite_random_instances_have_no_odd_subdigraph():
    rng = random.Random(8)
    for _, G, _ in sample_configs(200, 14, seed=9, bipartite=True):
        assert eulerian_census(random_orientation(G, rng)).odd_count == 0


def test_paint_examples():
    K2 = RawGraph.from_edges(2, [(0, 1)])
    assert solve_paint_game(K2, [1, 1]).winner == "Lister"
    assert solve_paint_game(K2, [1, 2]).winner == "Painter"
    C4 = RawGraph.from_edges(4, directed_cycle(4))
    assert solve_paint_game(C4, [2] * 4).winner == "Painter"
    C3 = RawGraph.from_edges(3, directed_cycle(3))
    assert solve_paint_game(C3, [2] * 3).winner == "Lister"
    assert solve_paint_game(C3, {0: 2, 1: 2, 2: 3}).winner == "Painter"


def test_paint_odd_cycles_need_three_somewhere():
    # odd cycles are not 2-choosable, even cycles are
    for n in (5, 7):
        assert solve_paint_game(RawGraph.from_edges(n, directed_cycle(n)), [2] * n).winner == "Lister"
    for n in (6, 8):
        assert solve_paint_game(RawGraph.from_edges(n, directed_cycle(n)), [2] * n).winner == "Painter"


def test_paint_monotone():
    rng = random.Random(21)
    graphs = [NAMED[k] for k in ("C3", "C4", "C5", "T4", "F6")]
    for _ in range(60):
        G = RawGraph.from_outerplane(rng.choice(graphs))
        f = [rng.randint(1, 3) for _ in range(G.n)]
        before = solve_paint_game(G, f).winner
        v = rng.randrange(G.n)
        g = list(f)
        g[v] += 1
        if before == "Painter":
            assert solve_paint_game(G, g).winner == "Painter"


def test_l_coloring_examples():
    C3 = RawGraph.from_edges(3, directed_cycle(3))
    assert check_L_coloring(C3, {v: {1, 2} for v in range(3)}) is None
    C4 = RawGraph.from_edges(4, directed_cycle(4))
    col = check_L_coloring(C4, {v: {1, 2} for v in range(4)})
    assert col is not None and all(col[a] != col[b] for a, b in C4.edges)
    K2 = RawGraph.from_edges(2, [(0, 1)])
    assert check_L_coloring(K2, {0: {1}, 1: {1}}) is None


def test_truncated_demand():
    G = NAMED["E7"]
    f = truncated_demand(G.boundary, G.degree, 2)
    assert f == {v: min(2, G.degree(v)) for v in G.boundary}
