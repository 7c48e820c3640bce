"""Seeded instance generation by recursive polygon splitting."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import GraphError
from .graph import Edge, OuterplaneGraph

CYCLE_SHARE = 0.15


@dataclass(frozen=True)
class GenConfig:
    n: int
    chord_prob: float = 0.5
    seed: int = 0
    bipartite: bool = False
    s_prob: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GraphError("n must be at least 2")
        if not (0 <= self.chord_prob <= 1 and 0 <= self.s_prob <= 1):
            raise GraphError("probabilities must lie in [0, 1]")
        if self.bipartite and self.n % 2:
            raise GraphError("bipartite instances need an even number of vertices")


def gen_cycle(n: int) -> OuterplaneGraph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return OuterplaneGraph(tuple(range(n)))


def _split(n: int, rng: random.Random, chord_prob: float, bipartite: bool) -> list[Edge]:
    chords = []
    stack = [list(range(n))]
    while stack:
        poly = stack.pop()
        k = len(poly)
        # bipartite chords must join positions an odd distance apart, at least 3
        gaps = [g for g in range(2, k - 1) if not bipartite or g % 2 == 1]
        if not gaps or rng.random() >= chord_prob:
            continue
        # favour short cuts half of the time so ears and fans show up often
        gap = min(gaps) if rng.random() < 0.5 else rng.choice(gaps)
        a = rng.randrange(k)
        b = (a + gap) % k
        chords.append((min(poly[a], poly[b]), max(poly[a], poly[b])))
        inside = [poly[(a + t) % k] for t in range(gap + 1)]
        outside = [poly[(b + t) % k] for t in range(k - gap + 1)]
        stack.extend([inside, outside])
    return sorted(chords)


def _sample_S(G: OuterplaneGraph, rng: random.Random, s_prob: float, force: bool) -> tuple[Edge, ...]:
    S = [e for e in G.boundary_edges if rng.random() < s_prob]
    if force and not S:
        S = [rng.choice(G.boundary_edges)]
    return tuple(sorted(S))


def gen_random_outerplanar(cfg: GenConfig) -> tuple[OuterplaneGraph, tuple[Edge, ...]]:
    if cfg.n < 3:
        raise GraphError("random outerplanar graphs need n >= 3")
    rng = random.Random(cfg.seed)
    G = OuterplaneGraph(tuple(range(cfg.n)), tuple(_split(cfg.n, rng, cfg.chord_prob, False)))
    return G, _sample_S(G, rng, cfg.s_prob, force=G.is_cycle)


def gen_random_bipartite_outerplanar(cfg: GenConfig) -> tuple[OuterplaneGraph, tuple[Edge, ...]]:
    if cfg.n < 4 or cfg.n % 2:
        raise GraphError(f"bipartite instances need an even n >= 4, got {cfg.n}")
    rng = random.Random(cfg.seed)
    G = OuterplaneGraph(tuple(range(cfg.n)), tuple(_split(cfg.n, rng, cfg.chord_prob, True)))
    return G, _sample_S(G, rng, cfg.s_prob, force=False)


def generate(cfg: GenConfig) -> tuple[OuterplaneGraph, tuple[Edge, ...]]:
    return gen_random_bipartite_outerplanar(cfg) if cfg.bipartite else gen_random_outerplanar(cfg)


def sample_configs(
    count: int,
    n_max: int,
    seed: int,
    *,
    bipartite: bool = False,
    max_edges: int | None = None,
    s_prob_max: float = 0.6,
) -> Iterator[tuple[GenConfig, OuterplaneGraph, tuple[Edge, ...]]]:
    """``count`` reproducible instances with 3 <= n <= n_max (even n >= 4 when bipartite).

    Bare cycles make up about ``CYCLE_SHARE`` of the sample; draws that come
    out chordless by chance, or with more than ``max_edges`` edges, are redrawn.
    """
    low = 4 if bipartite else 3
    if n_max < low:
        raise GraphError(f"n_max must be at least {low}")
    sizes = [n for n in range(low, n_max + 1) if not bipartite or n % 2 == 0]
    draw = random.Random(seed)
    made = 0
    while made < count:
        cfg = GenConfig(
            n=draw.choice(sizes),
            # a fixed share of bare cycles; otherwise lean towards chords so chains are common
            chord_prob=0.0 if draw.random() < CYCLE_SHARE else round(draw.uniform(0.4, 1.0), 3),
            seed=draw.getrandbits(63),
            bipartite=bipartite,
            s_prob=round(draw.uniform(0, s_prob_max), 3),
        )
        G, S = generate(cfg)
        if max_edges is not None and len(G.edges) > max_edges:
            continue
        if G.is_cycle and cfg.chord_prob > 0:
            continue
        made += 1
        yield cfg, G, S
