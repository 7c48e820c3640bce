"""Command-line driver.

Exit codes: 0 success, 1 I/O or parse error, 2 class rejection,
3 internal invariant breach, 4 census guard exceeded, 5 certificate invalid.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import ClassRejected, GraphError, InvariantBreach, OrientationMismatch, TooManyArcs
from .generators import GenConfig, generate, sample_configs
from .graph import parse_instance, serialize_graph, to_dot
from .oracles import MAX_CENSUS_ARCS, eulerian_census, solve_paint_game
from .orientation import (
    Mode,
    StepRecord,
    dump_orientation,
    load_orientation,
    orient_bipartite,
    orient_bipartite_valid,
    orient_general,
    orient_valid,
    replay_trace,
    truncated_report,
    verify_truncated,
    verify_valid,
)
from .recognition import RawGraph, parse_edge_list, recognize_outerplanar

EXIT_OK, EXIT_IO, EXIT_CLASS, EXIT_INTERNAL, EXIT_TOO_MANY_ARCS, EXIT_INVALID = 0, 1, 2, 3, 4, 5


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def load_graph(path: str):
    """Graph JSON (canonicalized) or an edge list run through recognition."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return parse_instance(text)
    return recognize_outerplanar(parse_edge_list(text)), None


def cmd_orient(args) -> int:
    G, S = load_graph(args.input)
    bipartite = args.bipartite or args.k == 4
    k = args.k or (4 if bipartite else 5)
    if S is not None:
        D, A, report = (orient_bipartite_valid if bipartite else orient_valid)(G, S)
    else:
        D, report = (orient_bipartite if bipartite else orient_general)(G)
        A = None
        # the bipartite construction also meets the looser 5-truncated bound
        if not verify_truncated(G, D, k):
            raise InvariantBreach(f"orientation does not meet the {k}-truncated bound")
    _write(args.out, dump_orientation(D, A))
    if args.trace:
        mode = Mode.BIPARTITE if bipartite else Mode.GENERAL
        doc = {"mode": mode.value, "steps": [st.to_dict() for st in report.steps]}
        Path(args.trace).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    print(report.summary(), file=sys.stderr)
    return EXIT_OK


def _slack_table(report) -> str:
    rows = ["vertex  slack"]
    rows += [f"{v:>6}  {s:>5}" for v, s in sorted(report.slack.items())]
    return "\n".join(rows)


def cmd_verify(args) -> int:
    G, S = load_graph(args.graph)
    D, A = load_orientation(_read(args.orientation))
    mode = Mode(args.mode)
    if args.k is not None:
        report = truncated_report(G, D, args.k, mode, parity=False)
        report.census = eulerian_census(D.arcs)
        report.parity_ok = report.census.diff != 0 and (mode is Mode.GENERAL or report.census.odd_count == 0)
    else:
        report = verify_valid(G, S or (), D, A, mode)
    print(f"census: {report.census} total={report.census.total}")
    print(_slack_table(report))
    for line in report.violations:
        print(line)
    print(report.summary())
    return EXIT_OK if report.valid else EXIT_INVALID


@dataclass
class BatchReport:
    instances: int = 0
    passes: int = 0
    failures: list[dict] = field(default_factory=list)
    parity_unchecked: int = 0
    odd_subdigraphs: int = 0
    wall_time: float = 0.0

    def summary(self) -> str:
        lines = [
            f"instances={self.instances} passes={self.passes} failures={len(self.failures)} "
            f"parity_unchecked={self.parity_unchecked} odd_subdigraphs={self.odd_subdigraphs} "
            f"wall_time={self.wall_time:.2f}s"
        ]
        for f in self.failures:
            lines.append(f"FAIL {f['config']}: {f['clause']}" + (f" [{f['artifact']}]" if f.get("artifact") else ""))
        return "\n".join(lines)


def run_instance(cfg: GenConfig) -> dict:
    """Generate, orient and verify one instance; never raises."""
    G, S = generate(cfg)
    mode = Mode.BIPARTITE if cfg.bipartite else Mode.GENERAL
    out = {"config": asdict(cfg), "ok": False, "unchecked": False, "odd": 0, "clause": None}
    try:
        D, A, _ = (orient_bipartite_valid if cfg.bipartite else orient_valid)(G, S)
        check_parity = len(D.arcs) <= MAX_CENSUS_ARCS
        report = verify_valid(G, S, D, A, mode, parity=check_parity)
    except (InvariantBreach, ClassRejected, GraphError) as exc:
        out["clause"] = f"{type(exc).__name__}: {exc}"
        return out
    out["unchecked"] = report.parity_ok is None
    out["odd"] = report.census.odd_count if report.census else 0
    if report.violations:
        out["clause"] = "degree: " + "; ".join(report.violations)
    elif report.parity_ok is False:
        out["clause"] = f"parity: {report.census}"
    else:
        out["ok"] = True
    return out


def cmd_batch(args) -> int:
    seed = int(os.environ.get("ATO_SEED", args.seed))
    start = time.perf_counter()
    configs = [cfg for cfg, _, _ in sample_configs(args.count, args.n_max, seed, bipartite=args.bipartite)]
    if args.workers > 1 and configs:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(run_instance, configs, chunksize=8))
    else:
        results = [run_instance(cfg) for cfg in configs]
    report = BatchReport(instances=len(results))
    for cfg, res in zip(configs, results):
        report.parity_unchecked += res["unchecked"]
        report.odd_subdigraphs += res["odd"]
        if res["ok"]:
            report.passes += 1
            continue
        failure = {"config": res["config"], "clause": res["clause"], "artifact": None}
        if args.out_dir:
            Path(args.out_dir).mkdir(parents=True, exist_ok=True)
            G, S = generate(cfg)
            path = Path(args.out_dir) / f"fail_{cfg.seed}.json"
            path.write_text(serialize_graph(G, S) + "\n", encoding="utf-8")
            failure["artifact"] = str(path)
        report.failures.append(failure)
    report.wall_time = time.perf_counter() - start
    print(report.summary())
    return EXIT_OK if not report.failures else EXIT_INVALID


def cmd_census(args) -> int:
    D, _ = load_orientation(_read(args.orientation))
    print(eulerian_census(D.arcs))
    return EXIT_OK


def cmd_paint(args) -> int:
    text = _read(args.graph)
    if text.lstrip().startswith("{"):
        G, _ = parse_instance(text)
        raw = RawGraph.from_outerplane(G)
    else:
        raw = parse_edge_list(text)
    if args.f:
        f = [int(x) for x in args.f.split(",")]
        if len(f) != raw.n:
            raise GraphError(f"--f lists {len(f)} values for {raw.n} vertices")
    else:
        deg = [sum(1 for e in raw.edges if v in e) for v in range(raw.n)]
        f = [min(args.k, d) for d in deg]
    print(solve_paint_game(raw, f).winner)
    return EXIT_OK


def cmd_dot(args) -> int:
    G, _ = load_graph(args.graph)
    D = load_orientation(_read(args.orientation))[0] if args.orientation else None
    _write(args.out, to_dot(G, D))
    return EXIT_OK


def cmd_replay(args) -> int:
    doc = json.loads(_read(args.trace))
    steps = [StepRecord.from_dict(st) for st in doc["steps"]]
    problems = replay_trace(steps, Mode(doc["mode"]), parity=not args.no_parity)
    for p in problems:
        print(p)
    print(f"{len(steps)} steps replayed, {len(problems)} problems")
    return EXIT_OK if not problems else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="outerat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orient", help="orient a graph (JSON or edge list)")
    p.add_argument("input")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--k", type=int, choices=(4, 5))
    p.add_argument("--trace", help="write the per-step induction ledger here")
    p.add_argument("--out", help="orientation JSON destination (default stdout)")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("verify", help="check an orientation against a graph")
    p.add_argument("graph")
    p.add_argument("orientation")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="general")
    p.add_argument("--k", type=int, help="check the k-truncated bound and diff != 0 instead of validity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="generate, orient and verify random instances")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", help="write failing instances here")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("census", help="Eulerian subdigraph census of an orientation")
    p.add_argument("orientation")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("paint", help="solve the painting game")
    p.add_argument("graph")
    p.add_argument("--k", type=int, default=5, help="use f(v) = min(k, d(v))")
    p.add_argument("--f", help="comma-separated token counts, overriding --k")
    p.set_defaults(func=cmd_paint)

    p = sub.add_parser("dot", help="Graphviz export")
    p.add_argument("graph")
    p.add_argument("--orientation")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("replay", help="re-verify every step of a --trace file")
    p.add_argument("trace")
    p.add_argument("--no-parity", action="store_true")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClassRejected as exc:
        print(exc.reason.value + (f": {exc.detail}" if exc.detail else ""), file=sys.stderr)
        return EXIT_CLASS
    except TooManyArcs as exc:
        print(f"TooManyArcs: {exc}", file=sys.stderr)
        return EXIT_TOO_MANY_ARCS
    except InvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GraphError, OrientationMismatch, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
