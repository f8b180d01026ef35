"""Deterministic (1+eps)-approximate maximum matching over multi-pass edge streams."""

from .engine import Mode, Params, RunStats, compute_params, delta, run
from .matching import AugPath, Matching, augment_along, greedy_maximal, validate_matching
from .stream import EdgeList, EdgeStream, OrderPolicy, generate, parse_edge_list
from .structures import CheckLevel, InvariantViolation, PhaseState

__all__ = [
    "AugPath", "CheckLevel", "EdgeList", "EdgeStream", "InvariantViolation", "Matching",
    "Mode", "OrderPolicy", "Params", "PhaseState", "RunStats", "augment_along",
    "compute_params", "delta", "generate", "greedy_maximal", "parse_edge_list", "run",
    "validate_matching",
]
