"""Solver toolkit for the intermittent traveling salesman problem (ITSP)."""

from .evaluator import ObjectiveBreakdown, Schedule, Visit, evaluate, evaluate_greedy, evaluate_ptl
from .ga import GAParams, GAResult, run
from .instances import generate_instance, metric_closure, read_instance, write_instance
from .oracle import brute_force_optimum, held_karp_tsp, simulate_timeline
from .representations import OneList, ThreeList, TwoList, check_valid
from .temperature import Instance, ProfileKind, ProfilePair, max_consecutive, max_splits, profile_value

__version__ = "0.1.0"
