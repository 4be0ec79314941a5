"""endonet: deterministic simulation of endogenous social networks.

Two agent-based models on one substrate. The reinforcement model
regrows a fitness-weighted preferential attachment network every
period and lets random edge shocks feed rewards back into fitness.
The tribes model keeps one network alive and reshapes it: bounded
confidence exchange pulls connected agents together while per-edge
decay, death and similarity-weighted rewiring sort the graph into
like-minded clusters. A Monte Carlo harness, serialization helpers
and a CLI sit on top. Everything is seedable and bit-reproducible.
"""

from .errors import ConfigError
from .generation import (
    GrowthParams,
    generate_network,
    grow_edge_array,
    select_by_kernel,
)
from .graph import (
    EdgeState,
    EmptyGraphError,
    SocialGraph,
    UnionFind,
    connected_components,
    new_graph,
)
from .io import (
    ResultTable,
    config_dict,
    export_dot,
    export_edge_list,
    load_config,
    load_edge_list,
    read_results_csv,
    read_results_json,
    run_metadata,
    write_records,
    write_results,
)
from .montecarlo import (
    AggregateRow,
    ReplicationRecord,
    SweepResult,
    SweepSpec,
    aggregate,
    apply_point,
    fixed_ratio_shocks,
    grid_points,
    run_replication,
    run_sweep,
)
from .reinforcement import (
    ReinforcementConfig,
    ReinforcementResult,
    RewardScheme,
    RunSummary,
    draw_reward,
    run_period,
    simulate_reinforcement,
    summarize,
)
from .seeding import make_rng
from .tribes import (
    KERNEL_INGROUP,
    KERNEL_RECIPROCAL,
    PeriodMetrics,
    TribeMetrics,
    TribesConfig,
    bounded_confidence_update,
    count_groups,
    decay_q,
    rewire_target,
    similarity_weight,
    simulate_tribes,
    step_period,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateRow",
    "ConfigError",
    "EdgeState",
    "EmptyGraphError",
    "GrowthParams",
    "KERNEL_INGROUP",
    "KERNEL_RECIPROCAL",
    "PeriodMetrics",
    "ReinforcementConfig",
    "ReinforcementResult",
    "ReplicationRecord",
    "ResultTable",
    "RewardScheme",
    "RunSummary",
    "SocialGraph",
    "SweepResult",
    "SweepSpec",
    "TribeMetrics",
    "TribesConfig",
    "UnionFind",
    "aggregate",
    "apply_point",
    "bounded_confidence_update",
    "config_dict",
    "connected_components",
    "count_groups",
    "decay_q",
    "draw_reward",
    "export_dot",
    "export_edge_list",
    "fixed_ratio_shocks",
    "generate_network",
    "grid_points",
    "grow_edge_array",
    "load_config",
    "load_edge_list",
    "make_rng",
    "new_graph",
    "read_results_csv",
    "read_results_json",
    "rewire_target",
    "run_metadata",
    "run_period",
    "run_replication",
    "run_sweep",
    "select_by_kernel",
    "similarity_weight",
    "simulate_reinforcement",
    "simulate_tribes",
    "step_period",
    "summarize",
    "write_records",
    "write_results",
]
