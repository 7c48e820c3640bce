"""Brute-force verifiers, kept independent of the constructions they check.

Arcs are accepted either as objects with ``tail``/``head``/``weight``
attributes or as ``(tail, head[, weight])`` tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Mapping, Optional, Sequence

import networkx as nx
import numpy as np

from .errors import ClassRejected, OuteratError, Reason, StateSpaceTooLarge, TooManyArcs

MAX_CENSUS_ARCS = 30
MAX_POLY_ARCS = 16
MAX_GAME_VERTICES = 8
MAX_GAME_TOKENS = 5
MAX_LIST_PRODUCT = 10**6


def _normalize(arcs: Iterable[Any]) -> list[tuple[int, int, int]]:
    out = []
    for a in arcs:
        if hasattr(a, "tail"):
            out.append((a.tail, a.head, getattr(a, "weight", 1)))
        elif len(a) == 2:
            out.append((a[0], a[1], 1))
        else:
            out.append((a[0], a[1], a[2]))
    return out


@dataclass(frozen=True)
class EulerianCensus:
    even_count: int
    odd_count: int

    @property
    def total(self) -> int:
        return self.even_count + self.odd_count

    @property
    def diff(self) -> int:
        return self.even_count - self.odd_count

    def __str__(self) -> str:
        return f"even={self.even_count} odd={self.odd_count} diff={self.diff}"


def _half(arcs: list[tuple[int, int, int]], index: dict[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Net out-minus-in vectors and arc-count parities of every subset of ``arcs``."""
    vec = np.zeros((1, len(index)), dtype=np.int64)
    par = np.zeros(1, dtype=np.int64)
    for t, h, w in arcs:
        step = np.zeros(len(index), dtype=np.int64)
        step[index[t]] += w
        step[index[h]] -= w
        vec = np.concatenate([vec, vec + step])
        par = np.concatenate([par, par ^ 1])
    return vec, par


def eulerian_census(arcs: Iterable[Any]) -> EulerianCensus:
    """Count balanced arc subsets by parity of their arc count.

    Every one of the 2^m subsets is accounted for: the arcs are split in two
    halves, each half enumerated exhaustively, and subset pairs whose net
    degree vectors cancel are matched.
    """
    arcs = _normalize(arcs)
    if len(arcs) > MAX_CENSUS_ARCS:
        raise TooManyArcs(f"{len(arcs)} arcs exceed the census guard of {MAX_CENSUS_ARCS}")
    verts = sorted({v for t, h, _ in arcs for v in (t, h)})
    if not arcs:
        return EulerianCensus(1, 0)
    index = {v: i for i, v in enumerate(verts)}
    mid = len(arcs) // 2
    left_vec, left_par = _half(arcs[:mid], index)
    right_vec, right_par = _half(arcs[mid:], index)

    table: dict[bytes, list[int]] = {}
    rows, counts = np.unique(np.column_stack([left_vec, left_par]), axis=0, return_counts=True)
    for row, c in zip(rows, counts):
        table.setdefault(row[:-1].tobytes(), [0, 0])[int(row[-1])] += int(c)
    even = odd = 0
    rows, counts = np.unique(np.column_stack([-right_vec, right_par]), axis=0, return_counts=True)
    for row, c in zip(rows, counts):
        hit = table.get(row[:-1].tobytes())
        if hit is None:
            continue
        if row[-1] == 0:
            even += int(c) * hit[0]
            odd += int(c) * hit[1]
        else:
            even += int(c) * hit[1]
            odd += int(c) * hit[0]
    return EulerianCensus(even, odd)


def eulerian_census_naive(arcs: Iterable[Any]) -> EulerianCensus:
    """One subset at a time. Slow; meant for cross-checking small cases."""
    arcs = _normalize(arcs)
    if len(arcs) > 20:
        raise TooManyArcs("the naive census is limited to 20 arcs")
    even = odd = 0
    for mask in range(1 << len(arcs)):
        bal: dict[int, int] = {}
        size = 0
        for i, (t, h, w) in enumerate(arcs):
            if mask >> i & 1:
                size += 1
                bal[t] = bal.get(t, 0) + w
                bal[h] = bal.get(h, 0) - w
        if all(b == 0 for b in bal.values()):
            if size % 2:
                odd += 1
            else:
                even += 1
    return EulerianCensus(even, odd)


def is_at(arcs: Iterable[Any]) -> bool:
    return eulerian_census(arcs).diff != 0


def at_poly_coefficient(arcs: Iterable[Any]) -> int:
    """Coefficient of prod x_v^{outdeg(v)} in prod over arcs (u,v) of (x_u - x_v)."""
    arcs = _normalize(arcs)
    if any(w != 1 for _, _, w in arcs):
        raise ValueError("the polynomial coefficient is defined for unweighted orientations only")
    if len(arcs) > MAX_POLY_ARCS:
        raise TooManyArcs(f"{len(arcs)} arcs exceed the expansion guard of {MAX_POLY_ARCS}")
    verts = sorted({v for t, h, _ in arcs for v in (t, h)})
    index = {v: i for i, v in enumerate(verts)}
    target = [0] * len(verts)
    for t, _, _ in arcs:
        target[index[t]] += 1
    poly: dict[tuple[int, ...], int] = {tuple([0] * len(verts)): 1}
    for t, h, _ in arcs:
        nxt: dict[tuple[int, ...], int] = {}
        for mono, c in poly.items():
            for v, sign in ((index[t], 1), (index[h], -1)):
                # exponents never decrease, so overshooting terms cannot reach the target
                if mono[v] == target[v]:
                    continue
                m = list(mono)
                m[v] += 1
                key = tuple(m)
                nxt[key] = nxt.get(key, 0) + sign * c
        poly = {m: c for m, c in nxt.items() if c}
    return poly.get(tuple(target), 0)


def check_bipartite_all_even(arcs: Iterable[Any], edges: Iterable[tuple[int, int]]) -> bool:
    """True iff the orientation has no odd Eulerian subdigraph; ``edges`` must span a bipartite graph."""
    g = nx.Graph()
    g.add_edges_from(edges)
    if not nx.is_bipartite(g):
        raise ClassRejected(Reason.NOT_BIPARTITE)
    return eulerian_census(arcs).odd_count == 0


def truncated_demand(vertices: Iterable[int], degree, k: int) -> dict[int, int]:
    """f(v) = min(k, d(v)); ``degree`` is a callable vertex -> degree."""
    return {v: min(k, degree(v)) for v in vertices}


@dataclass(frozen=True)
class GameResult:
    winner: str  # "Lister" or "Painter"
    trace: tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        return self.winner


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def solve_paint_game(G, f: Sequence[int] | Mapping[int, int]) -> GameResult:
    """Exact minimax for the f-painting game on ``G`` (vertices ``0..n-1``).

    Painter only ever answers with a maximal independent subset of the
    offered set: colouring an extra vertex removes it from later rounds and
    spends none of its tokens, so it never helps Lister.
    """
    n, edges = G.n, G.edges
    if n > MAX_GAME_VERTICES:
        raise StateSpaceTooLarge(f"{n} vertices exceed the game guard of {MAX_GAME_VERTICES}")
    tokens0 = tuple(f[v] for v in range(n))
    if any(t > MAX_GAME_TOKENS for t in tokens0):
        raise StateSpaceTooLarge(f"token counts above {MAX_GAME_TOKENS} are not supported")
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    full = (1 << n) - 1
    if any(t <= 0 for t in tokens0):
        return GameResult("Lister", ("a vertex starts without tokens",))

    @lru_cache(maxsize=None)
    def maximal_independent(U: int) -> tuple[int, ...]:
        out = []
        verts = list(_bits(U))
        for size in range(len(verts), 0, -1):
            for combo in itertools.combinations(verts, size):
                I = sum(1 << v for v in combo)
                if any(adj[v] & I for v in combo):
                    continue
                if any((I & m) == I for m in out):
                    continue
                out.append(I)
        return tuple(out)

    @lru_cache(maxsize=None)
    def painter_wins(uncoloured: int, tokens: tuple[int, ...]) -> bool:
        if uncoloured == 0:
            return True
        for v in _bits(uncoloured):
            # more tokens than uncoloured neighbours: Painter can always finish v
            if tokens[v] > bin(adj[v] & uncoloured).count("1"):
                rest = uncoloured & ~(1 << v)
                return painter_wins(rest, tuple(t if rest >> i & 1 else 0 for i, t in enumerate(tokens)))
        U = uncoloured
        while U:
            if not any(_survives(uncoloured, tokens, U, I) for I in maximal_independent(U)):
                return False
            U = (U - 1) & uncoloured
        return True

    def _survives(uncoloured: int, tokens: tuple[int, ...], U: int, I: int) -> bool:
        rest = uncoloured & ~I
        nt = list(tokens)
        for v in _bits(U & ~I):
            nt[v] -= 1
            if nt[v] == 0:
                return False
        for v in _bits(I):
            nt[v] = 0
        return painter_wins(rest, tuple(nt))

    if painter_wins(full, tokens0):
        return GameResult("Painter")
    U = full
    while U:
        if not any(_survives(full, tokens0, U, I) for I in maximal_independent(U)):
            return GameResult("Lister", (f"Lister opens with {sorted(_bits(U))}",))
        U = (U - 1) & full
    return GameResult("Lister")


def check_L_coloring(G, lists: Mapping[int, Iterable[Any]]) -> Optional[dict[int, Any]]:
    """A proper colouring of ``G`` choosing each colour from the vertex's list, or None."""
    edges = G.edges
    lists = {v: sorted(set(L), key=repr) for v, L in lists.items()}
    size = 1
    for L in lists.values():
        size *= max(len(L), 1)
    if size > MAX_LIST_PRODUCT:
        raise StateSpaceTooLarge(f"list product {size} exceeds {MAX_LIST_PRODUCT}")
    nbrs: dict[int, set[int]] = {v: set() for v in lists}
    for a, b in edges:
        if a not in lists or b not in lists:
            raise OuteratError(f"edge {a}-{b} has an endpoint without a list")
        nbrs[a].add(b)
        nbrs[b].add(a)
    order = sorted(lists, key=lambda v: (len(lists[v]), v))
    colour: dict[int, Any] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in lists[v]:
            if all(colour.get(w) != c for w in nbrs[v]):
                colour[v] = c
                if place(i + 1):
                    return True
                del colour[v]
        return False

    return dict(colour) if place(0) else None
