"""Random chordal graph generation via contraction-minimal subtree representations."""

from .experiments import (
    Histogram,
    RunReport,
    SizeRatioReport,
    clique_sizes,
    histogram,
    lower_bound_family,
    run_report,
    size_ratio_report,
    subtree_leaf_count,
    write_histogram_csv,
    write_size_ratio_csv,
    write_stats_csv,
)
from .generator import (
    DensityExhaustedError,
    GenConfig,
    GenResult,
    generate,
    generate_k_connected,
    generate_with_density,
)
from .graph import (
    CliqueSet,
    EdgeListFormatError,
    EliminationOrder,
    Graph,
    brute_force_connectivity,
    connected_components,
    is_chordal,
    maximal_cliques,
    read_edge_list,
    write_edge_list,
)
from .representation import (
    MultiplicityMap,
    PruningRecord,
    PruningTrace,
    Representation,
    RepresentationFormatError,
    SeparatorReport,
    Tree,
    clique_tree_check,
    contract_edge,
    edge_load_bound_check,
    intersection_graph,
    is_minimal,
    minimal_separators,
    minimize,
    pruning_trace,
    read_rep_json,
    rep_from_json,
    rep_to_json,
    representation_size,
    write_rep_json,
)
from .rng import SplitMix64, derive_stream

__version__ = "0.1.0"

__all__ = [
    "CliqueSet",
    "DensityExhaustedError",
    "EdgeListFormatError",
    "EliminationOrder",
    "GenConfig",
    "GenResult",
    "Graph",
    "Histogram",
    "MultiplicityMap",
    "PruningRecord",
    "PruningTrace",
    "Representation",
    "RepresentationFormatError",
    "RunReport",
    "SeparatorReport",
    "SizeRatioReport",
    "SplitMix64",
    "Tree",
    "brute_force_connectivity",
    "clique_sizes",
    "clique_tree_check",
    "connected_components",
    "contract_edge",
    "derive_stream",
    "edge_load_bound_check",
    "generate",
    "generate_k_connected",
    "generate_with_density",
    "histogram",
    "intersection_graph",
    "is_chordal",
    "is_minimal",
    "lower_bound_family",
    "maximal_cliques",
    "minimal_separators",
    "minimize",
    "pruning_trace",
    "read_edge_list",
    "read_rep_json",
    "rep_from_json",
    "rep_to_json",
    "representation_size",
    "run_report",
    "size_ratio_report",
    "subtree_leaf_count",
    "write_edge_list",
    "write_histogram_csv",
    "write_rep_json",
    "write_size_ratio_csv",
    "write_stats_csv",
]
