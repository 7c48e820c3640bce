"""Weak dual trees, ears and ear-chains, and the peeling steps of both inductions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import ClassRejected, DecompositionError, IsCycle, IsK2, Reason
from .graph import Edge, OuterplaneGraph, boundary_multiset, edge
from .recognition import bipartition


@dataclass(frozen=True)
class WeakDualTree:
    """Inner faces joined when they share a chord, rooted at the face on the last boundary edge."""

    faces: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, Edge], ...]
    root: int

    def neighbors(self, i: int) -> list[tuple[int, Edge]]:
        out = []
        for a, b, c in self.edges:
            if a == i:
                out.append((b, c))
            elif b == i:
                out.append((a, c))
        return out

    def rooted(self) -> tuple[dict[int, int | None], dict[int, int], dict[int, list[int]]]:
        """BFS parent, depth and children maps from the root."""
        parent: dict[int, int | None] = {self.root: None}
        depth = {self.root: 0}
        children: dict[int, list[int]] = {i: [] for i in range(len(self.faces))}
        queue = deque([self.root])
        while queue:
            i = queue.popleft()
            for j, _ in sorted(self.neighbors(i)):
                if j not in parent:
                    parent[j] = i
                    depth[j] = depth[i] + 1
                    children[i].append(j)
                    queue.append(j)
        return parent, depth, children

    def chord_between(self, i: int, j: int) -> Edge:
        for a, b, c in self.edges:
            if {a, b} == {i, j}:
                return c
        raise KeyError((i, j))


def face_edges(face: Sequence[int]) -> list[Edge]:
    return [edge(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]


def weak_dual(G: OuterplaneGraph) -> WeakDualTree:
    if G.is_k2:
        raise IsK2("K2 has no inner faces")
    faces = G.inner_faces()
    by_chord: dict[Edge, list[int]] = {c: [] for c in G.chords}
    for i, f in enumerate(faces):
        for e in face_edges(f):
            if e in by_chord:
                by_chord[e].append(i)
    tree_edges = tuple(sorted((min(fs), max(fs), c) for c, fs in by_chord.items()))
    last = G.boundary_edges[-1]
    root = next(i for i, f in enumerate(faces) if last in face_edges(f))
    return WeakDualTree(tuple(faces), tree_edges, root)


@dataclass(frozen=True)
class Ear:
    """A path ``u_1 .. u_r`` around an inner face; ``u_1 u_r`` is the root edge."""

    path: tuple[int, ...]

    @property
    def root_edge(self) -> Edge:
        return edge(self.path[0], self.path[-1])

    @property
    def internal(self) -> tuple[int, ...]:
        return self.path[1:-1]

    @property
    def path_edges(self) -> list[Edge]:
        return [edge(a, b) for a, b in zip(self.path, self.path[1:])]

    def reversed(self) -> "Ear":
        return Ear(self.path[::-1])


@dataclass(frozen=True)
class EarChain:
    """Induced cycle ``v_1 .. v_s`` with ears on some of its edges; ``v_1 v_s`` is the base edge.

    ``ears`` holds ``(j, ear)`` pairs: the ear is rooted at ``cycle[j] cycle[j+1]``
    (0-based) and its path runs from ``cycle[j]`` to ``cycle[j+1]``.
    """

    cycle: tuple[int, ...]
    ears: tuple[tuple[int, Ear], ...]

    @property
    def v1(self) -> int:
        return self.cycle[0]

    @property
    def vs(self) -> int:
        return self.cycle[-1]

    @property
    def base_edge(self) -> Edge:
        return edge(self.cycle[0], self.cycle[-1])

    def ear_at(self, j: int) -> Ear | None:
        for k, ear in self.ears:
            if k == j:
                return ear
        return None

    @property
    def removed_vertices(self) -> frozenset[int]:
        out = set(self.cycle[1:-1])
        for _, ear in self.ears:
            out.update(ear.internal)
        return frozenset(out)

    @property
    def edges(self) -> list[Edge]:
        """E(F): cycle edges except the base edge, plus every ear path edge."""
        out = [edge(a, b) for a, b in zip(self.cycle, self.cycle[1:])]
        for _, ear in self.ears:
            out.extend(ear.path_edges)
        return out

    def reversed(self) -> "EarChain":
        s = len(self.cycle)
        ears = tuple(sorted((s - 2 - j, ear.reversed()) for j, ear in self.ears))
        return EarChain(self.cycle[::-1], ears)


def _long_way(face: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    """Path from a to b around ``face`` that avoids the face edge ab."""
    r = len(face)
    p, q = face.index(a), face.index(b)
    step = -1 if (p + 1) % r == q else 1
    out = [a]
    i = p
    while face[i] != b:
        i = (i + step) % r
        out.append(face[i])
    return tuple(out)


def _cyclic_distance(k: int, targets: list[int], s: int) -> int:
    return min(min(abs(k - t), s - abs(k - t)) for t in targets)


def find_ear_chain(G: OuterplaneGraph) -> EarChain:
    """Ear-chain at a deepest non-leaf face of the rooted weak dual."""
    if G.is_k2:
        raise IsK2("K2 has no ear-chain")
    if G.is_cycle:
        raise IsCycle(f"C{G.n} has no ear-chain")
    tree = weak_dual(G)
    parent, depth, children = tree.rooted()
    node = min((i for i in children if children[i]), key=lambda i: (-depth[i], i))
    face = tree.faces[node]
    ring = face_edges(face)
    ear_roots = {tree.chord_between(node, c): c for c in children[node]}
    if parent[node] is not None:
        base = tree.chord_between(node, parent[node])
    else:
        # whole graph is one chain: use the free face edge farthest from the ears
        rooted_at = [k for k, e in enumerate(ring) if e in ear_roots]
        free = [k for k, e in enumerate(ring) if e not in ear_roots]
        # free edges of the root face are boundary edges (any chord would lead to a child)
        k = min(free, key=lambda k: (-_cyclic_distance(k, rooted_at, len(ring)), G.boundary_position(ring[k])))
        base = ring[k]
    k = ring.index(base)
    cycle = tuple(face[(k + 1 + i) % len(face)] for i in range(len(face)))
    ears = []
    for j in range(len(cycle) - 1):
        e = edge(cycle[j], cycle[j + 1])
        if e in ear_roots:
            ears.append((j, Ear(_long_way(tree.faces[ear_roots[e]], cycle[j], cycle[j + 1]))))
    return EarChain(cycle, tuple(ears))


def validate_ear_chain(G: OuterplaneGraph, F: EarChain) -> None:
    """Raise DecompositionError unless F is an ear-chain of G."""
    s = len(F.cycle)
    if s < 3 or len(set(F.cycle)) != s:
        raise DecompositionError("chain cycle must have at least three distinct vertices")
    ring = face_edges(F.cycle)
    for e in ring:
        if not G.has_edge(*e):
            raise DecompositionError(f"cycle edge {e} missing")
    cyc = set(F.cycle)
    for a in F.cycle:
        for b in F.cycle:
            if a < b and G.has_edge(a, b) and edge(a, b) not in ring:
                raise DecompositionError(f"cycle is not induced: chord {a}-{b}")
    idx = [j for j, _ in F.ears]
    if not F.ears or idx != sorted(set(idx)) or idx[-1] >= s - 1 or idx[0] < 0 or len(idx) > s - 1:
        raise DecompositionError(f"bad ear attachment indices {idx}")
    allowed = set(cyc)
    for j, ear in F.ears:
        if (ear.path[0], ear.path[-1]) != (F.cycle[j], F.cycle[j + 1]) or len(ear.path) < 3:
            raise DecompositionError(f"ear {ear.path} is not rooted at cycle edge {j}")
        for e in ear.path_edges:
            if not G.has_edge(*e):
                raise DecompositionError(f"ear edge {e} missing")
        for u in ear.internal:
            if G.degree(u) != 2 or u in cyc:
                raise DecompositionError(f"ear vertex {u} must have degree 2 and lie off the cycle")
        allowed.update(ear.internal)
    for v in F.cycle[1:-1]:
        if not G.neighbors(v) <= allowed:
            raise DecompositionError(f"chain vertex {v} has edges leaving the chain")


def find_even_ear(G: OuterplaneGraph) -> Ear:
    """Leaf face of the weak dual, as a path whose root edge is its only chord."""
    if G.is_k2:
        raise IsK2("K2 has no ear")
    if G.is_cycle:
        raise IsCycle(f"C{G.n} has no ear with two branch vertices")
    if bipartition(G) is None:
        raise ClassRejected(Reason.NOT_BIPARTITE)
    tree = weak_dual(G)
    leaves = []
    for i, face in enumerate(tree.faces):
        nb = tree.neighbors(i)
        if len(nb) == 1:
            leaves.append((nb[0][1], face))
    chord, face = min(leaves)
    k = face_edges(face).index(chord)
    path = tuple(face[(k + 1 + i) % len(face)] for i in range(len(face)))
    return Ear(path)


@dataclass(frozen=True)
class PeelResult:
    reduced: OuterplaneGraph
    reduced_S: tuple[Edge, ...]
    removed: Union[EarChain, Ear]
    removed_vertices: frozenset[int] = field(default_factory=frozenset)

    @property
    def edge_map(self) -> dict[Edge, Edge]:
        # vertex labels survive peeling, so surviving edges map to themselves
        return {e: e for e in self.reduced.edges}


def peel_general(G: OuterplaneGraph, S: Sequence[Edge], F: EarChain) -> PeelResult:
    validate_ear_chain(G, F)
    gone = F.removed_vertices
    reduced = G.remove_vertices(gone)
    kept = [e for e in S if e in reduced.edges]
    S2 = boundary_multiset(reduced, kept + [F.base_edge])
    return PeelResult(reduced, S2, F, gone)


def cycle_reduction_path(G: OuterplaneGraph, S: Sequence[Edge]) -> Ear:
    """Path covering a bipartite cycle minus one designated edge.

    The designated edge is the S-edge at the least boundary position, or the
    last boundary edge when S is empty. The path starts at the endpoint with
    the smaller boundary position.
    """
    b = G.boundary
    n = G.n
    in_S = [i for i, e in enumerate(G.boundary_edges) if e in set(S)]
    i = in_S[0] if in_S else n - 1
    if i == n - 1:
        return Ear(b)
    return Ear(tuple(b[(i - t) % n] for t in range(n)))


def peel_bipartite(G: OuterplaneGraph, S: Sequence[Edge]) -> PeelResult:
    if G.is_k2:
        raise IsK2("K2 cannot be peeled")
    ear = cycle_reduction_path(G, S) if G.is_cycle else find_even_ear(G)
    gone = frozenset(ear.internal)
    reduced = G.remove_vertices(gone)
    path = set(ear.path_edges)
    kept = [e for e in S if e not in path]
    S2 = boundary_multiset(reduced, kept + [ear.root_edge])
    return PeelResult(reduced, S2, ear, gone)
