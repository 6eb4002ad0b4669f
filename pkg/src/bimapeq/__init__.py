"""Community detection for bipartite networks with tunable node-type information.

The walker alternates between the two node types; how much of that
1-bit type signal the codebooks may use is set by the flipping rate
``alpha`` (or, more intuitively, by the information ``1 - H(alpha)``
in bits).  ``alpha = 1/2`` reduces to the standard one-type objective
on two-step visit rates; ``alpha = 0`` keeps the full signal and stops
charging for what the types already say.
"""

from .bruteforce import OracleResult, best_partition_bruteforce
from .codelength import (
    CodeLength,
    TwoLevelState,
    codebook_bits,
    codelength,
    one_level_codelength,
)
from .flow import CodebookFlows, FlowSummary, RatePair, VisitRates, flow_summary, mixed_rate, visit_rates
from .metrics import PartitionMetrics, compute_metrics, effective_module_size, extra_compression
from .network import (
    BipartiteNetwork,
    NetworkFormatError,
    format_network,
    is_connected,
    largest_connected_component,
    parse_network,
)
from .partition import PartitionTree, dense_assignment, one_module_tree, two_level_tree
from .search import SearchParams, SearchResult, optimize_hierarchical, optimize_two_level, run_trials
from .serialize import ParsedTree, TreeRecord, parse_tree, run_summary_json, write_sweep_csv, write_tree
from .sweep import SweepRecord, info_grid, run_sweep
from .synth import nested_blocks, planted_blocks, random_bipartite
from .typeinfo import NodeTypeRate, info_to_alpha, type_entropy, type_information

__version__ = "0.1.0"

__all__ = [
    "BipartiteNetwork",
    "CodeLength",
    "CodebookFlows",
    "FlowSummary",
    "NetworkFormatError",
    "NodeTypeRate",
    "OracleResult",
    "ParsedTree",
    "PartitionMetrics",
    "PartitionTree",
    "RatePair",
    "SearchParams",
    "SearchResult",
    "SweepRecord",
    "TreeRecord",
    "TwoLevelState",
    "VisitRates",
    "best_partition_bruteforce",
    "codebook_bits",
    "codelength",
    "compute_metrics",
    "dense_assignment",
    "effective_module_size",
    "extra_compression",
    "flow_summary",
    "format_network",
    "info_grid",
    "info_to_alpha",
    "is_connected",
    "largest_connected_component",
    "mixed_rate",
    "nested_blocks",
    "one_level_codelength",
    "one_module_tree",
    "optimize_hierarchical",
    "optimize_two_level",
    "parse_network",
    "parse_tree",
    "planted_blocks",
    "random_bipartite",
    "run_summary_json",
    "run_sweep",
    "run_trials",
    "two_level_tree",
    "type_entropy",
    "type_information",
    "visit_rates",
    "write_sweep_csv",
    "write_tree",
]
