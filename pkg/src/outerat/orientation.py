"""Valid orientations built by peeling ear-chains (general) or even ears (bipartite).

The general construction carries an oriented set of boundary edges, the
"bank": an arrow (u, v) tightens the out-degree allowance of u and loosens
that of v. Peeling an ear-chain deposits its base edge in the bank; putting
the chain back pays the debt by orienting the chain edges.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Sequence

from .decomposition import Ear, EarChain, find_ear_chain, peel_bipartite, peel_general
from .errors import ClassRejected, InvariantBreach, OrientationMismatch, Reason, TooManyArcs
from .graph import Edge, OuterplaneGraph, edge, graph_from_dict
from .oracles import EulerianCensus, eulerian_census
from .recognition import Parity, is_cycle, require_b, require_q

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    weight: int = 1

    @property
    def edge(self) -> Edge:
        return edge(self.tail, self.head)

    def reversed(self) -> "Arc":
        return Arc(self.head, self.tail, self.weight)


@dataclass(frozen=True)
class WeightedOrientation:
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs, key=lambda a: (a.edge, a.tail))))

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def out_degree(self, v: int) -> int:
        return sum(a.weight for a in self.arcs if a.tail == v)

    def in_degree(self, v: int) -> int:
        return sum(a.weight for a in self.arcs if a.head == v)

    def arc(self, e: Edge) -> Arc:
        e = edge(*e)
        for a in self.arcs:
            if a.edge == e:
                return a
        raise KeyError(e)

    def replace(self, e: Edge, new: Arc) -> "WeightedOrientation":
        e = edge(*e)
        return WeightedOrientation(tuple(new if a.edge == e else a for a in self.arcs))


@dataclass(frozen=True)
class OrientedBoundary:
    """Orientation of the S multiset; one arrow per copy."""

    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrows", tuple(sorted((int(t), int(h)) for t, h in self.arrows)))

    def out_degree(self, v: int) -> int:
        return sum(1 for t, _ in self.arrows if t == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, h in self.arrows if h == v)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(edge(t, h) for t, h in self.arrows))


class CaseTag(str, Enum):
    BASE_K2 = "Base_K2"
    BASE_CYCLE = "Base_Cycle"
    CASE1 = "Case1"
    CASE2_1 = "Case2_1"
    CASE2_2 = "Case2_2"
    CASE3_1 = "Case3_1"
    CASE3_2 = "Case3_2"
    CASE4_1 = "Case4_1"
    CASE4_2 = "Case4_2"
    BIPARTITE_NO_S = "Bipartite_NoS"
    BIPARTITE_S = "Bipartite_S"


class Mode(str, Enum):
    GENERAL = "general"
    BIPARTITE = "bipartite"


@dataclass(frozen=True)
class StepRecord:
    """One level of the induction: the instance, its orientation, and the bookkeeping at v1."""

    case: CaseTag
    graph: OuterplaneGraph
    S: tuple[Edge, ...]
    orientation: WeightedOrientation
    boundary: OrientedBoundary
    v1: Optional[int] = None
    vs: Optional[int] = None
    l: Optional[int] = None
    r: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "graph": {"boundary": list(self.graph.boundary), "chords": [list(c) for c in self.graph.chords]},
            "S": [list(e) for e in self.S],
            **orientation_to_dict(self.orientation, self.boundary),
            "v1": self.v1,
            "vs": self.vs,
            "l": self.l,
            "r": self.r,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StepRecord":
        G, _ = graph_from_dict(data["graph"], dense=False)
        D, A = orientation_from_dict(data)
        return cls(
            CaseTag(data["case"]), G, tuple(tuple(e) for e in data["S"]), D, A,
            data.get("v1"), data.get("vs"), data.get("l"), data.get("r"),
        )


@dataclass
class ValidityReport:
    mode: Mode
    census: Optional[EulerianCensus] = None
    parity_ok: Optional[bool] = None
    slack: dict[int, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    steps: list[StepRecord] = field(default_factory=list)

    @property
    def degree_ok(self) -> bool:
        return not self.violations

    @property
    def valid(self) -> bool:
        return self.parity_ok is True and self.degree_ok

    def summary(self) -> str:
        parity = {True: "ok", False: "FAILED", None: "unchecked"}[self.parity_ok]
        census = f" ({self.census})" if self.census else ""
        verdict = "valid" if self.valid else "INVALID"
        return f"{verdict}: parity {parity}{census}; degree {'ok' if self.degree_ok else 'FAILED'}"


class Certificate(NamedTuple):
    orientation: WeightedOrientation
    boundary: OrientedBoundary
    report: ValidityReport


def bound(mode: Mode, G: OuterplaneGraph, A: OrientedBoundary, v: int) -> int:
    """Out-degree allowance of v given the bank arrows A."""
    if mode is Mode.GENERAL:
        return min(4 - 2 * A.out_degree(v), G.degree(v) - 1 + A.in_degree(v))
    return min(3 - A.out_degree(v), G.degree(v) - 1 + A.in_degree(v))


def _degree_violations(mode: Mode, G: OuterplaneGraph, D: WeightedOrientation, A: OrientedBoundary) -> tuple[dict[int, int], list[str]]:
    slack = {v: bound(mode, G, A, v) - D.out_degree(v) for v in sorted(G.boundary)}
    bad = [f"vertex {v}: out-degree {D.out_degree(v)} exceeds {bound(mode, G, A, v)}" for v, s in slack.items() if s < 0]
    return slack, bad


# ---------------------------------------------------------------- general case


def _k2(G: OuterplaneGraph, S: Sequence[Edge], hint: Optional[int]) -> tuple[WeightedOrientation, OrientedBoundary]:
    u = hint if hint in G.position else G.boundary[0]
    v = G.boundary[1] if u == G.boundary[0] else G.boundary[0]
    return WeightedOrientation((Arc(v, u),)), OrientedBoundary(tuple((u, v) for _ in S))


def _base_cycle(G: OuterplaneGraph, S: Sequence[Edge]) -> tuple[WeightedOrientation, OrientedBoundary]:
    n, b = G.n, G.boundary
    i = min(G.boundary_position(e) for e in S)
    # v_n = b[i], v_1 = b[i+1], continuing along the boundary
    order = [b[(i + 1 + t) % n] for t in range(n)]
    arcs = [Arc(order[t], order[t + 1]) for t in range(n - 1)] + [Arc(order[0], order[-1])]
    base = edge(order[0], order[-1])
    arrows = []
    for e in S:
        if e == base:
            arrows.append((order[-1], order[0]))
        else:
            t = min(order.index(e[0]), order.index(e[1]))
            arrows.append((order[t + 1], order[t]))
    return WeightedOrientation(tuple(arcs)), OrientedBoundary(tuple(arrows))


def canonical_orientation(F: EarChain, S: Sequence[Edge] = ()) -> tuple[dict[Edge, Arc], list[tuple[int, int]]]:
    """Every path of the chain directed from v_1 to v_s, weight 1; S-edges of F follow suit."""
    arcs = [Arc(a, b) for a, b in zip(F.cycle, F.cycle[1:])]
    for _, ear in F.ears:
        arcs.extend(Arc(a, b) for a, b in zip(ear.path, ear.path[1:]))
    by_edge = {a.edge: a for a in arcs}
    arrows = [(by_edge[e].tail, by_edge[e].head) for e in S if e in by_edge]
    return by_edge, arrows


def classify_case(F: EarChain, S: Sequence[Edge]) -> CaseTag:
    S = set(S)
    v = F.cycle
    first = F.ear_at(0)

    def opening_in_S(ear: Optional[Ear]) -> bool:
        return ear is not None and edge(ear.path[0], ear.path[1]) in S

    if first is None:
        if edge(v[0], v[1]) not in S:
            return CaseTag.CASE1
        j1, h1 = F.ears[0]
        if j1 == 1 and opening_in_S(h1):
            return CaseTag.CASE2_1
        return CaseTag.CASE2_2
    second = opening_in_S(F.ear_at(1))
    if not opening_in_S(first):
        return CaseTag.CASE3_1 if second else CaseTag.CASE3_2
    return CaseTag.CASE4_1 if second else CaseTag.CASE4_2


def _apply_case(F: EarChain, case: CaseTag, arcs: dict[Edge, Arc]) -> None:
    v = F.cycle

    def flip(a: int, b: int) -> None:
        e = edge(a, b)
        arcs[e] = arcs[e].reversed()

    if case is CaseTag.CASE1:
        return
    flip(v[0], v[1])
    if case is CaseTag.CASE2_1:
        h1 = F.ears[0][1]
        flip(h1.path[0], h1.path[1])
    elif case in (CaseTag.CASE3_1, CaseTag.CASE3_2):
        h1 = F.ear_at(0)
        e = edge(h1.path[0], h1.path[1])
        arcs[e] = Arc(arcs[e].tail, arcs[e].head, 2)
        if case is CaseTag.CASE3_1:
            h2 = F.ear_at(1)
            flip(h2.path[0], h2.path[1])
    elif case in (CaseTag.CASE4_1, CaseTag.CASE4_2):
        h1 = F.ear_at(0)
        flip(h1.path[0], h1.path[1])
        if case is CaseTag.CASE4_1:
            h2 = F.ear_at(1)
            flip(h2.path[0], h2.path[1])


def _remove_one(arrows: Iterable[tuple[int, int]], arrow: tuple[int, int]) -> list[tuple[int, int]]:
    out = list(arrows)
    out.remove(arrow)
    return out


def _check_step(mode: Mode, G: OuterplaneGraph, D: WeightedOrientation, A: OrientedBoundary, where: str) -> None:
    _, bad = _degree_violations(mode, G, D, A)
    if bad:
        raise InvariantBreach(f"{where}: " + "; ".join(bad))


def _general(G: OuterplaneGraph, S: tuple[Edge, ...], hint: Optional[int], steps: list[StepRecord]) -> tuple[WeightedOrientation, OrientedBoundary]:
    if G.is_k2:
        D, A = _k2(G, S, hint)
        _check_step(Mode.GENERAL, G, D, A, "K2 base")
        steps.append(StepRecord(CaseTag.BASE_K2, G, S, D, A))
        return D, A
    if G.is_cycle:
        D, A = _base_cycle(G, S)
        _check_step(Mode.GENERAL, G, D, A, "cycle base")
        steps.append(StepRecord(CaseTag.BASE_CYCLE, G, S, D, A))
        return D, A

    F = find_ear_chain(G)
    peel = peel_general(G, S, F)
    D1, A1 = _general(peel.reduced, peel.reduced_S, F.v1, steps)
    if (F.v1, F.vs) not in A1.arrows:
        F = F.reversed()
    v1, vs = F.v1, F.vs
    if (v1, vs) not in A1.arrows:
        raise InvariantBreach(f"base edge {v1}-{vs} missing from the reduced bank")

    chain_edges = set(F.edges)
    S_F = [e for e in S if e in chain_edges]
    arcs, new_arrows = canonical_orientation(F, S_F)
    case = classify_case(F, S)
    _apply_case(F, case, arcs)
    if any(a.weight != 1 for a in arcs.values()) != (case in (CaseTag.CASE3_1, CaseTag.CASE3_2)):
        raise InvariantBreach(f"{case.value}: unexpected arc weights")

    D = WeightedOrientation(D1.arcs + tuple(arcs.values()))
    A = OrientedBoundary(tuple(_remove_one(A1.arrows, (v1, vs))) + tuple(new_arrows))

    if case in (CaseTag.CASE2_2, CaseTag.CASE3_2, CaseTag.CASE4_2):
        opens_at_v2 = F.ear_at(1) is not None
        if opens_at_v2 and A.out_degree(F.cycle[1]) != 0:
            log.warning("%s: v2=%d has bank out-degree %d", case.value, F.cycle[1], A.out_degree(F.cycle[1]))

    l1 = D.out_degree(v1) - D1.out_degree(v1)
    r1 = bound(Mode.GENERAL, G, A, v1) - bound(Mode.GENERAL, peel.reduced, A1, v1)
    if l1 > r1:
        raise InvariantBreach(f"{case.value}: l(v1)={l1} > r(v1)={r1}")
    _check_step(Mode.GENERAL, G, D, A, case.value)
    steps.append(StepRecord(case, G, S, D, A, v1, vs, l1, r1))
    return D, A


# -------------------------------------------------------------- bipartite case


def _bipartite(G: OuterplaneGraph, S: tuple[Edge, ...], hint: Optional[int], steps: list[StepRecord]) -> tuple[WeightedOrientation, OrientedBoundary]:
    if G.is_k2:
        D, A = _k2(G, S, hint)
        _check_step(Mode.BIPARTITE, G, D, A, "K2 base")
        steps.append(StepRecord(CaseTag.BASE_K2, G, S, D, A))
        return D, A

    peel = peel_bipartite(G, S)
    ear: Ear = peel.removed
    D1, A1 = _bipartite(peel.reduced, peel.reduced_S, ear.path[0], steps)
    if (ear.path[0], ear.path[-1]) not in A1.arrows:
        ear = ear.reversed()
    path = ear.path
    v1, vt = path[0], path[-1]
    if (v1, vt) not in A1.arrows:
        raise InvariantBreach(f"root edge {v1}-{vt} missing from the reduced bank")

    S_set = set(S)
    arcs = [Arc(a, b) for a, b in zip(path, path[1:])]
    new_arrows = [(a, b) for a, b in zip(path, path[1:]) if edge(a, b) in S_set]
    if edge(path[0], path[1]) in S_set:
        case = CaseTag.BIPARTITE_S
        arcs[0] = arcs[0].reversed()
    else:
        case = CaseTag.BIPARTITE_NO_S

    D = WeightedOrientation(D1.arcs + tuple(arcs))
    A = OrientedBoundary(tuple(_remove_one(A1.arrows, (v1, vt))) + tuple(new_arrows))
    l1 = D.out_degree(v1) - D1.out_degree(v1)
    r1 = bound(Mode.BIPARTITE, G, A, v1) - bound(Mode.BIPARTITE, peel.reduced, A1, v1)
    if l1 > r1:
        raise InvariantBreach(f"{case.value}: l(v1)={l1} > r(v1)={r1}")
    _check_step(Mode.BIPARTITE, G, D, A, case.value)
    steps.append(StepRecord(case, G, S, D, A, v1, vt, l1, r1))
    return D, A


# ------------------------------------------------------------------ verification


def _check_covers(G: OuterplaneGraph, S: Sequence[Edge], D: WeightedOrientation, A: OrientedBoundary) -> None:
    covered = Counter(a.edge for a in D.arcs)
    if set(covered) != set(G.edges) or any(k != 1 for k in covered.values()):
        raise OrientationMismatch("orientation does not orient exactly the edges of the graph")
    if any(a.weight < 1 for a in D.arcs):
        raise OrientationMismatch("arc weights must be positive")
    if Counter(A.edges) != Counter(edge(*e) for e in S):
        raise OrientationMismatch("bank arrows do not orient exactly the S multiset")


def verify_valid(
    G: OuterplaneGraph,
    S: Sequence[Edge],
    D: WeightedOrientation,
    A: OrientedBoundary,
    mode: Mode = Mode.GENERAL,
    *,
    parity: bool = True,
) -> ValidityReport:
    """Evaluate both validity clauses; ``parity=False`` skips the exponential census."""
    mode = Mode(mode)
    _check_covers(G, S, D, A)
    slack, bad = _degree_violations(mode, G, D, A)
    if mode is Mode.BIPARTITE and any(a.weight != 1 for a in D.arcs):
        bad.append("bipartite orientations must be unweighted")
    report = ValidityReport(mode, slack=slack, violations=bad)
    if parity:
        census = eulerian_census(D.arcs)
        report.census = census
        report.parity_ok = census.odd_count == 0 if mode is Mode.BIPARTITE else census.total % 2 == 1
    return report


def verify_truncated(G: OuterplaneGraph, D: WeightedOrientation, k: int) -> bool:
    """Out-degree at most min(k, d(v)) - 1 everywhere."""
    return all(D.out_degree(v) <= min(k, G.degree(v)) - 1 for v in G.boundary)


def truncated_report(G: OuterplaneGraph, D: WeightedOrientation, k: int, mode: Mode, *, parity: bool = True) -> ValidityReport:
    slack = {v: min(k, G.degree(v)) - 1 - D.out_degree(v) for v in sorted(G.boundary)}
    bad = [f"vertex {v}: out-degree {D.out_degree(v)} exceeds {min(k, G.degree(v)) - 1}" for v, s in slack.items() if s < 0]
    report = ValidityReport(Mode(mode), slack=slack, violations=bad)
    if parity:
        try:
            census = eulerian_census(D.arcs)
        except TooManyArcs:
            return report
        report.census = census
        report.parity_ok = census.diff != 0
        if mode is Mode.BIPARTITE:
            report.parity_ok = report.parity_ok and census.odd_count == 0
    return report


def replay_trace(steps: Sequence[StepRecord], mode: Mode, *, parity: bool = True) -> list[str]:
    """Re-verify every recorded intermediate certificate; returns the list of problems."""
    mode = Mode(mode)
    problems = []
    for i, st in enumerate(steps):
        rep = verify_valid(st.graph, st.S, st.orientation, st.boundary, mode, parity=parity)
        if not rep.degree_ok or rep.parity_ok is False:
            problems.append(f"step {i} ({st.case.value}): {rep.summary()}")
        if st.l is not None and st.l > st.r:
            problems.append(f"step {i} ({st.case.value}): l(v1)={st.l} > r(v1)={st.r}")
    return problems


# -------------------------------------------------------------------- entry points


def _finish(mode: Mode, G, S, D, A, steps, check: bool) -> Certificate:
    try:
        report = verify_valid(G, S, D, A, mode, parity=True)
    except TooManyArcs:
        report = verify_valid(G, S, D, A, mode, parity=False)
    report.steps = steps
    if report.violations or report.parity_ok is False:
        raise InvariantBreach(report.summary() + "; " + "; ".join(report.violations))
    if check:
        problems = replay_trace(steps, mode, parity=True)
        if problems:
            raise InvariantBreach("; ".join(problems))
    return Certificate(D, A, report)


def orient_valid(G: OuterplaneGraph, S: Sequence[Edge] = (), *, check: bool = False) -> Certificate:
    """Valid arc-weighted orientation of (G, S) with its bank; ``check`` re-verifies every level."""
    S = require_q(G, S)
    steps: list[StepRecord] = []
    D, A = _general(G, S, None, steps)
    return _finish(Mode.GENERAL, G, S, D, A, steps, check)


def orient_bipartite_valid(G: OuterplaneGraph, S: Sequence[Edge] = (), *, check: bool = False) -> Certificate:
    S = require_b(G, S)
    steps: list[StepRecord] = []
    D, A = _bipartite(G, S, None, steps)
    return _finish(Mode.BIPARTITE, G, S, D, A, steps, check)


def directed_cycle(G: OuterplaneGraph) -> WeightedOrientation:
    b = G.boundary
    return WeightedOrientation(tuple(Arc(b[i], b[(i + 1) % len(b)]) for i in range(len(b))))


def orient_general(G: OuterplaneGraph, *, check: bool = False) -> tuple[WeightedOrientation, ValidityReport]:
    """Orientation with out-degree <= min(4, d(v) - 1) and nonzero diff."""
    if G.is_k2:
        raise ClassRejected(Reason.NOT_TWO_CONNECTED, "K2 admits no orientation with out-degrees below min(5, d)")
    parity = is_cycle(G)
    if parity is Parity.ODD:
        raise ClassRejected(Reason.ODD_CYCLE_WITH_EMPTY_S, f"C{G.n} is an odd cycle")
    if parity is Parity.EVEN:
        D = directed_cycle(G)
        steps: list[StepRecord] = []
    else:
        D, _, rep = orient_valid(G, (), check=check)
        steps = rep.steps
    report = truncated_report(G, D, 5, Mode.GENERAL)
    report.steps = steps
    if report.violations or report.parity_ok is False:
        raise InvariantBreach(report.summary())
    return D, report


def orient_bipartite(G: OuterplaneGraph, *, check: bool = False) -> tuple[WeightedOrientation, ValidityReport]:
    """Unweighted orientation with out-degree <= min(3, d(v) - 1); AT by bipartiteness."""
    if G.is_k2:
        raise ClassRejected(Reason.NOT_TWO_CONNECTED, "K2 admits no orientation with out-degrees below min(4, d)")
    D, _, rep = orient_bipartite_valid(G, (), check=check)
    report = truncated_report(G, D, 4, Mode.BIPARTITE)
    report.steps = rep.steps
    if report.violations or report.parity_ok is False:
        raise InvariantBreach(report.summary())
    return D, report


# ------------------------------------------------------------------ serialization


def orientation_to_dict(D: WeightedOrientation, A: Optional[OrientedBoundary] = None) -> dict:
    data = {"arcs": [{"tail": a.tail, "head": a.head, "w": a.weight} for a in D.arcs]}
    data["S_arrows"] = [{"tail": t, "head": h} for t, h in (A.arrows if A else ())]
    return data


def orientation_from_dict(data: dict) -> tuple[WeightedOrientation, OrientedBoundary]:
    try:
        arcs = tuple(Arc(int(a["tail"]), int(a["head"]), int(a.get("w", 1))) for a in data["arcs"])
        arrows = tuple((int(a["tail"]), int(a["head"])) for a in data.get("S_arrows", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise OrientationMismatch(f"malformed orientation JSON: {exc}") from exc
    return WeightedOrientation(arcs), OrientedBoundary(arrows)


def dump_orientation(D: WeightedOrientation, A: Optional[OrientedBoundary] = None) -> str:
    return json.dumps(orientation_to_dict(D, A))


def load_orientation(text: str) -> tuple[WeightedOrientation, OrientedBoundary]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OrientationMismatch(f"malformed JSON: {exc}") from exc
    return orientation_from_dict(data)
