"""Preemptive bipartite scheduling with a per-packet setup overhead."""

from .baselines import a1_packet_choice, round_up_weights, run_a1, run_apbs
from .exact import (
    OracleLimitExceeded,
    SearchLimits,
    full_range_optimal_makespan,
    min_total_duration_decomposition,
    optimal_makespan,
)
from .kernels import BACKEND
from .model import (
    Instance,
    InstanceError,
    NodeMetrics,
    Packet,
    Schedule,
    ValidationReport,
    lower_bound,
    makespan,
    node_metrics,
    validate_schedule,
)
from .sga import removal_weight, run_sga, split_graph

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Instance",
    "InstanceError",
    "NodeMetrics",
    "OracleLimitExceeded",
    "Packet",
    "Schedule",
    "SearchLimits",
    "ValidationReport",
    "a1_packet_choice",
    "full_range_optimal_makespan",
    "lower_bound",
    "makespan",
    "min_total_duration_decomposition",
    "node_metrics",
    "optimal_makespan",
    "removal_weight",
    "round_up_weights",
    "run_a1",
    "run_apbs",
    "run_sga",
    "split_graph",
    "validate_schedule",
]
