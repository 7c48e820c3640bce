"""Outerplane graphs: a Hamiltonian boundary cycle plus non-crossing chords.

Vertices are plain ints. Graphs read from user input carry the labels
``0..n-1``; the smaller instances produced while peeling keep the labels of
the graph they came from, so any set of distinct ints is accepted here.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CrossingChords, DuplicateChord, GraphError, LoopEdge, OrientationMismatch

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalized undirected edge key."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class OuterplaneGraph:
    """A 2-connected outerplane graph, or K2 when the boundary has two vertices.

    ``boundary`` lists the outer face in cyclic order; ``chords`` are the
    remaining edges, stored normalized and sorted.
    """

    boundary: tuple[int, ...]
    chords: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(int(v) for v in self.boundary))
        object.__setattr__(self, "chords", tuple(sorted(edge(int(a), int(b)) for a, b in self.chords)))
        n = len(self.boundary)
        if n < 2:
            raise GraphError("an outerplane graph needs at least two boundary vertices")
        if len(set(self.boundary)) != n:
            raise GraphError(f"boundary repeats a vertex: {list(self.boundary)}")
        if n == 2 and self.chords:
            raise GraphError("K2 has no chords")
        pos = self.position
        seen: set[Edge] = set()
        ring = set(self.boundary_edges)
        for a, b in self.chords:
            if a == b:
                raise LoopEdge(f"loop at vertex {a}")
            if a not in pos or b not in pos:
                raise GraphError(f"chord {a}-{b} uses a vertex not on the boundary")
            if (a, b) in seen:
                raise DuplicateChord(f"chord {a}-{b} listed twice")
            if (a, b) in ring:
                raise DuplicateChord(f"chord {a}-{b} duplicates a boundary edge")
            seen.add((a, b))
        spans = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in self.chords)
        for i, (a, b) in enumerate(spans):
            for c, d in spans[i + 1:]:
                if a < c < b < d:
                    raise CrossingChords(
                        f"chords at positions {a}-{b} and {c}-{d} cross"
                    )

    @property
    def n(self) -> int:
        return len(self.boundary)

    @property
    def is_k2(self) -> bool:
        return len(self.boundary) == 2

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.boundary)}

    @cached_property
    def boundary_edges(self) -> tuple[Edge, ...]:
        """Boundary edge at each position ``i`` (joins ``boundary[i]`` and its successor)."""
        b = self.boundary
        if len(b) == 2:
            return (edge(b[0], b[1]),)
        return tuple(edge(b[i], b[(i + 1) % len(b)]) for i in range(len(b)))

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.boundary_edges) | frozenset(self.chords)

    @cached_property
    def _adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.boundary}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def is_boundary_edge(self, e: Edge) -> bool:
        return edge(*e) in self._boundary_index

    def boundary_position(self, e: Edge) -> int:
        try:
            return self._boundary_index[edge(*e)]
        except KeyError:
            raise GraphError(f"{e} is not a boundary edge") from None

    @cached_property
    def _boundary_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.boundary_edges)}

    @property
    def is_cycle(self) -> bool:
        return self.n >= 3 and not self.chords

    def _check_vertex(self, v: int) -> None:
        if v not in self.position:
            raise GraphError(f"vertex {v} is not in the graph")

    def inner_faces(self) -> list[tuple[int, ...]]:
        """Bounded faces, each listed in boundary order.

        Faces are sorted so that a face closing earlier along the boundary
        comes first (by descending position tuple).
        """
        if self.is_k2:
            raise GraphError("K2 has no inner faces")
        n = self.n
        pos = self.position
        rotation: dict[int, list[int]] = {}
        for v in self.boundary:
            rotation[v] = sorted(self._adjacency[v], key=lambda w, v=v: (pos[w] - pos[v]) % n)
        outer = {(self.boundary[(i + 1) % n], self.boundary[i]) for i in range(n)}
        used: set[tuple[int, int]] = set()
        faces = []
        for a, b in sorted(self.edges):
            for u, v in ((a, b), (b, a)):
                if (u, v) in outer or (u, v) in used:
                    continue
                verts = []
                cur = (u, v)
                while cur not in used:
                    used.add(cur)
                    x, y = cur
                    verts.append(x)
                    ring = rotation[y]
                    off = (pos[x] - pos[y]) % n
                    # next edge: the neighbour just before x in y's rotation
                    before = [w for w in ring if (pos[w] - pos[y]) % n < off]
                    cur = (y, before[-1] if before else ring[-1])
                faces.append(tuple(sorted(verts, key=pos.__getitem__)))
        faces.sort(key=lambda f: sorted((pos[v] for v in f), reverse=True))
        return faces

    def remove_vertices(self, removed: Iterable[int]) -> "OuterplaneGraph":
        """Delete vertices; the survivors keep their boundary order."""
        removed = set(removed)
        for v in removed:
            self._check_vertex(v)
        keep = [v for v in self.boundary if v not in removed]
        if len(keep) < 2:
            raise GraphError("removal leaves fewer than two vertices")
        pairs = [(keep[0], keep[1])] if len(keep) == 2 else [
            (keep[i], keep[(i + 1) % len(keep)]) for i in range(len(keep))
        ]
        for a, b in pairs:
            if not self.has_edge(a, b):
                raise GraphError(f"removal does not leave an outerplane graph: {a}-{b} missing")
        ring = {edge(a, b) for a, b in pairs}
        alive = set(keep)
        chords = [c for c in self.chords if c[0] in alive and c[1] in alive and c not in ring]
        return OuterplaneGraph(tuple(keep), tuple(chords))

    def canonical(self) -> "OuterplaneGraph":
        """Rotation/reflection of the boundary with the lexicographically least encoding."""
        b = list(self.boundary)
        candidates = []
        for seq in (b, b[::-1]):
            for i in range(len(seq)):
                candidates.append(tuple(seq[i:] + seq[:i]))
        return OuterplaneGraph(min(candidates), self.chords)

    def to_dict(self, S: Sequence[Edge] | None = None) -> dict:
        data: dict = {"boundary": list(self.boundary), "chords": [list(c) for c in self.chords]}
        if S is not None:
            data["S"] = sorted([self.boundary_position(e)] for e in S)
        return data


def boundary_multiset(G: OuterplaneGraph, edges: Iterable[Edge]) -> tuple[Edge, ...]:
    """Validate and normalize a multiset of boundary edges (sorted tuple)."""
    S = tuple(sorted(edge(*e) for e in edges))
    counts = Counter(S)
    for e, k in counts.items():
        if not G.is_boundary_edge(e):
            what = "a chord" if e in G.edges else "not an edge"
            raise GraphError(f"S entry {e} is {what}")
        if k > (2 if G.is_k2 else 1):
            raise GraphError(f"S repeats {e} {k} times")
    return S


def graph_from_dict(data: dict, *, dense: bool = True) -> tuple[OuterplaneGraph, tuple[Edge, ...] | None]:
    if not isinstance(data, dict) or "boundary" not in data:
        raise GraphError("graph JSON must be an object with a 'boundary' array")
    try:
        boundary = [int(v) for v in data["boundary"]]
        chords = [(int(c[0]), int(c[1])) for c in data.get("chords", [])]
        if any(len(c) != 2 for c in data.get("chords", [])):
            raise GraphError("each chord must be a pair")
    except (TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    if dense and sorted(boundary) != list(range(len(boundary))):
        raise GraphError("boundary must be a permutation of 0..n-1")
    for a, b in chords:
        if a == b:
            raise LoopEdge(f"loop at vertex {a}")
    G = OuterplaneGraph(tuple(boundary), tuple(chords))
    S = None
    if "S" in data:
        S_edges = []
        for item in data["S"]:
            i = item[0] if isinstance(item, list) else item
            if not isinstance(i, int) or not 0 <= i < len(G.boundary_edges):
                raise GraphError(f"bad S descriptor {item!r}")
            S_edges.append(G.boundary_edges[i])
        S = boundary_multiset(G, S_edges)
    return G, S


def parse_instance(text: str) -> tuple[OuterplaneGraph, tuple[Edge, ...] | None]:
    """Parse graph JSON into a canonical graph and its optional S multiset."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    G, S = graph_from_dict(data)
    return G.canonical(), S


def parse_graph(text: str) -> OuterplaneGraph:
    return parse_instance(text)[0]


def serialize_graph(G: OuterplaneGraph, S: Sequence[Edge] | None = None) -> str:
    G = G.canonical()
    return json.dumps(G.to_dict(S), separators=(", ", ": "))


def to_dot(G: OuterplaneGraph, orientation=None, name: str = "G") -> str:
    """Graphviz source; weight-2 arcs are drawn red and labelled with their weight.

    ``orientation`` is any iterable of objects with ``tail``, ``head`` and
    ``weight`` attributes covering every edge exactly once.
    """
    lines = []
    if orientation is None:
        lines.append(f"graph {name} {{")
        for v in G.boundary:
            lines.append(f"  {v};")
        for a, b in sorted(G.edges):
            style = "" if G.is_boundary_edge((a, b)) else " [style=dashed]"
            lines.append(f"  {a} -- {b}{style};")
    else:
        arcs = list(orientation)
        covered = Counter(edge(a.tail, a.head) for a in arcs)
        if set(covered) != set(G.edges) or any(k != 1 for k in covered.values()):
            raise OrientationMismatch("orientation does not orient exactly the edges of the graph")
        lines.append(f"digraph {name} {{")
        for v in G.boundary:
            lines.append(f"  {v};")
        for a in sorted(arcs, key=lambda a: (a.tail, a.head)):
            attrs = f' [label="{a.weight}", color=red, penwidth=2]' if a.weight != 1 else ""
            lines.append(f"  {a.tail} -> {a.head}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
