"""Certify that raw edge lists belong to the input classes of the constructions."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import networkx as nx

from .errors import ClassRejected, GraphError, Reason
from .graph import Edge, OuterplaneGraph, boundary_multiset, edge

# guided backtracking for the boundary cycle is exponential in the worst case
MAX_RECOGNITION_VERTICES = 64


@dataclass(frozen=True)
class RawGraph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise GraphError(f"loop at vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"edge {a}-{b} out of range for n={self.n}")
            norm.add(edge(a, b))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "RawGraph":
        edges = list(edges)
        if len({edge(a, b) for a, b in edges}) != len(edges):
            raise GraphError("duplicate edge")
        return cls(n, frozenset(edges))

    @classmethod
    def from_outerplane(cls, G: OuterplaneGraph) -> "RawGraph":
        if sorted(G.boundary) != list(range(G.n)):
            raise GraphError("RawGraph needs vertex labels 0..n-1")
        return cls(G.n, G.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def parse_edge_list(text: str) -> RawGraph:
    """Parse ``n m`` followed by ``m`` lines ``u v``."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (IndexError, ValueError) as exc:
        raise GraphError(f"malformed edge list: {exc}") from exc
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    return RawGraph.from_edges(n, pairs)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


def is_cycle(G: OuterplaneGraph) -> Optional[Parity]:
    if not G.is_cycle:
        return None
    return Parity.EVEN if G.n % 2 == 0 else Parity.ODD


def _is_k2(G: RawGraph) -> bool:
    return G.n == 2 and G.edges == {(0, 1)}


def check_two_connected(G: RawGraph) -> bool:
    """Connected without a cut vertex; K2 is admitted."""
    if _is_k2(G):
        return True
    if G.n < 3:
        return False
    return nx.is_biconnected(G.to_networkx())


def _hamiltonian_cycle(G: RawGraph) -> Optional[list[int]]:
    adj = {v: sorted(w for e in G.edges for w in e if v in e and w != v) for v in range(G.n)}
    start = min((v for v in adj if len(adj[v]) == 2), default=None)
    if start is None:
        return None
    target = adj[start][1]
    path = [start, adj[start][0]]
    seen = {start, adj[start][0]}

    def stuck() -> bool:
        # every unvisited vertex still needs two usable neighbours
        ends = {path[-1], start}
        for v in adj:
            if v not in seen and sum(1 for w in adj[v] if w not in seen or w in ends) < 2:
                return True
        return False

    def extend() -> bool:
        if len(path) == G.n:
            return path[-1] == target
        if stuck():
            return False
        for w in adj[path[-1]]:
            if w in seen or (w == target and len(path) < G.n - 1):
                continue
            path.append(w)
            seen.add(w)
            if extend():
                return True
            seen.discard(path.pop())
        return False

    return path if extend() else None


def recognize_outerplanar(G: RawGraph) -> OuterplaneGraph:
    """Embed a 2-connected outerplanar graph as boundary cycle + chords (canonical form)."""
    if not check_two_connected(G):
        raise ClassRejected(Reason.NOT_TWO_CONNECTED)
    if _is_k2(G):
        return OuterplaneGraph((0, 1))
    if G.n > MAX_RECOGNITION_VERTICES:
        raise GraphError(f"recognition is limited to {MAX_RECOGNITION_VERTICES} vertices")
    if len(G.edges) > 2 * G.n - 3:
        raise ClassRejected(Reason.NOT_OUTERPLANAR, "too many edges")
    apexed = G.to_networkx()
    apexed.add_edges_from((G.n, v) for v in range(G.n))
    planar, _ = nx.check_planarity(apexed)
    if not planar:
        raise ClassRejected(Reason.NOT_OUTERPLANAR, "adding an apex vertex breaks planarity")
    cycle = _hamiltonian_cycle(G)
    if cycle is None:
        raise ClassRejected(Reason.NOT_OUTERPLANAR, "no Hamiltonian boundary cycle")
    ring = {edge(cycle[i], cycle[(i + 1) % G.n]) for i in range(G.n)}
    try:
        H = OuterplaneGraph(tuple(cycle), tuple(G.edges - ring))
    except GraphError as exc:
        raise ClassRejected(Reason.NOT_OUTERPLANAR, str(exc)) from exc
    return H.canonical()


def bipartition(G: OuterplaneGraph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Two colour classes (the one holding the least vertex first), or None."""
    g = nx.Graph()
    g.add_nodes_from(G.boundary)
    g.add_edges_from(G.edges)
    if not nx.is_bipartite(g):
        return None
    first = min(G.boundary)
    colour = {first: 0}
    for u, v in nx.bfs_edges(g, first):
        colour[v] = 1 - colour[u]
    return (
        frozenset(v for v, c in colour.items() if c == 0),
        frozenset(v for v, c in colour.items() if c == 1),
    )


@dataclass(frozen=True)
class ClassCertificate:
    cls: str  # "Q", "B" or "Rejected"
    reason: Optional[Reason] = None
    embedding: Optional[OuterplaneGraph] = None
    S: tuple[Edge, ...] = ()
    bipartition: Optional[tuple[frozenset[int], frozenset[int]]] = None

    @property
    def accepted(self) -> bool:
        return self.cls != "Rejected"


def require_q(G: OuterplaneGraph, S: Sequence[Edge]) -> tuple[Edge, ...]:
    """Return S normalized if (G, S) is in the general class, else raise ClassRejected."""
    S = boundary_multiset(G, S)
    if G.is_k2 and not S:
        raise ClassRejected(Reason.NOT_TWO_CONNECTED, "K2 is admitted only with one or two copies of its edge in S")
    if G.is_cycle and not S:
        parity = is_cycle(G)
        reason = Reason.ODD_CYCLE_WITH_EMPTY_S if parity is Parity.ODD else Reason.EVEN_CYCLE_WITH_EMPTY_S
        raise ClassRejected(reason, f"C{G.n} needs a nonempty S")
    return S


def require_b(G: OuterplaneGraph, S: Sequence[Edge]) -> tuple[Edge, ...]:
    """Return S normalized if (G, S) is in the bipartite class, else raise ClassRejected."""
    S = boundary_multiset(G, S)
    if G.is_k2 and not S:
        raise ClassRejected(Reason.NOT_TWO_CONNECTED, "K2 is admitted only with one or two copies of its edge in S")
    if bipartition(G) is None:
        raise ClassRejected(Reason.NOT_BIPARTITE)
    return S


def classify_instance(G: RawGraph, S: Sequence[Edge] = (), bipartite_mode: bool = False) -> ClassCertificate:
    S = [edge(*e) for e in S]
    for e in S:
        if e not in G.edges:
            raise GraphError(f"S entry {e} is not an edge")
    try:
        H = recognize_outerplanar(G)
        S_norm = require_b(H, S) if bipartite_mode else require_q(H, S)
    except ClassRejected as exc:
        return ClassCertificate("Rejected", reason=exc.reason)
    if bipartite_mode:
        return ClassCertificate("B", embedding=H, S=S_norm, bipartition=bipartition(H))
    return ClassCertificate("Q", embedding=H, S=S_norm)
