"""Alon-Tarsi orientations of 2-connected outerplanar graphs, with brute-force verifiers."""

from .decomposition import EarChain, Ear, WeakDualTree, find_ear_chain, find_even_ear, peel_bipartite, peel_general, weak_dual
from .errors import ClassRejected, GraphError, InvariantBreach, OuteratError, Reason, TooManyArcs
from .generators import GenConfig, gen_cycle, gen_random_bipartite_outerplanar, gen_random_outerplanar
from .graph import OuterplaneGraph, parse_graph, parse_instance, serialize_graph, to_dot
from .oracles import EulerianCensus, at_poly_coefficient, check_L_coloring, eulerian_census, is_at, solve_paint_game
from .orientation import (
    Arc,
    CaseTag,
    Mode,
    OrientedBoundary,
    WeightedOrientation,
    orient_bipartite,
    orient_bipartite_valid,
    orient_general,
    orient_valid,
    replay_trace,
    verify_truncated,
    verify_valid,
)
from .recognition import RawGraph, classify_instance, recognize_outerplanar

__version__ = "0.1.0"
