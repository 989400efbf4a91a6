"""Deterministic counting for weighted hypergraph matchings and
independent sets, with certified error bounds from correlation decay on
self-avoiding-walk trees."""

from .branching import (
    BranchingMatrices,
    ReversibilityResult,
    TypedHypergraph,
    TypedNeighborhood,
    feasible_size,
    format_branching,
    format_typed_hypergraph,
    generate_typed,
    invariant_marginal_residual,
    local_convergence_rate,
    neighborhood_key,
    next_feasible_size,
    parse_branching,
    parse_typed_hypergraph,
    reversibility,
    signed_matrices,
    stationary_distributions,
    tree_neighborhood,
    validate_branching,
)
from .counting import (
    ApproxResult,
    NoGuaranteeError,
    Regime,
    approx_log_partition,
    approx_partition,
    classify_regime,
    depth_for_error,
    hardness_threshold,
)
from .decay import (
    DecayBounds,
    ModelParams,
    RatioInterval,
    contraction_ratio,
    critical_activity,
    decay_rate_bounds,
    extremal_ratio_sequences,
    fixed_point,
    regular_root_extremes,
    tree_recursion_step,
    truncated_marginal,
    two_periodic_points,
)
from .hypergraph import (
    ActivityVector,
    ExactResult,
    Hypergraph,
    HypergraphStats,
    OCCUPIED,
    UNOCCUPIED,
    dualize,
    exact_partition,
    format_hypergraph,
    format_pinning,
    gadget_reduce,
    is_valid_pinning,
    parse_hypergraph,
    parse_pinning,
    validate_and_stats,
    validate_pinning,
)
from .sawtree import (
    EdgeOrdering,
    ExpansionLimitError,
    SawNode,
    build_saw_tree,
    dump_saw_tree,
    evaluate_root_ratio,
    saw_marginal_exact,
)

__version__ = "0.1.0"

__all__ = [
    "ActivityVector",
    "ApproxResult",
    "BranchingMatrices",
    "DecayBounds",
    "EdgeOrdering",
    "ExactResult",
    "ExpansionLimitError",
    "Hypergraph",
    "HypergraphStats",
    "ModelParams",
    "NoGuaranteeError",
    "OCCUPIED",
    "RatioInterval",
    "Regime",
    "ReversibilityResult",
    "SawNode",
    "TypedHypergraph",
    "TypedNeighborhood",
    "UNOCCUPIED",
    "approx_log_partition",
    "approx_partition",
    "build_saw_tree",
    "classify_regime",
    "contraction_ratio",
    "critical_activity",
    "decay_rate_bounds",
    "depth_for_error",
    "dualize",
    "dump_saw_tree",
    "evaluate_root_ratio",
    "exact_partition",
    "extremal_ratio_sequences",
    "feasible_size",
    "fixed_point",
    "format_branching",
    "format_hypergraph",
    "format_pinning",
    "format_typed_hypergraph",
    "gadget_reduce",
    "generate_typed",
    "hardness_threshold",
    "invariant_marginal_residual",
    "is_valid_pinning",
    "local_convergence_rate",
    "neighborhood_key",
    "next_feasible_size",
    "parse_branching",
    "parse_hypergraph",
    "parse_pinning",
    "parse_typed_hypergraph",
    "regular_root_extremes",
    "reversibility",
    "saw_marginal_exact",
    "signed_matrices",
    "stationary_distributions",
    "tree_neighborhood",
    "tree_recursion_step",
    "truncated_marginal",
    "two_periodic_points",
    "validate_and_stats",
    "validate_branching",
    "validate_pinning",
]
