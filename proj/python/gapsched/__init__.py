"""Exact solvers for gap-aware scheduling of unit jobs."""

from ._gapsched import (
    Error,
    InfeasibleError,
    Instance,
    Job,
    Objective,
    block_cost,
    check_feasible,
    gap_stats,
    generate,
    greedy_min_hitting,
    max_gaps,
    max_throughput,
    min_gaps,
    min_gaps_for_throughput,
    min_gaps_max_flow,
    min_gaps_total_flow,
    min_max_flow,
    min_max_gap,
    min_max_gap_cont,
    min_total_flow,
    oracle,
    select_kth,
    viable,
)

__all__ = [
    "Error",
    "InfeasibleError",
    "Instance",
    "Job",
    "Objective",
    "block_cost",
    "check_feasible",
    "gap_stats",
    "generate",
    "greedy_min_hitting",
    "max_gaps",
    "max_throughput",
    "min_gaps",
    "min_gaps_for_throughput",
    "min_gaps_max_flow",
    "min_gaps_total_flow",
    "min_max_flow",
    "min_max_gap",
    "min_max_gap_cont",
    "min_total_flow",
    "oracle",
    "select_kth",
    "viable",
]
