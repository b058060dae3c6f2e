"""Sparse, nearly b-regular subgraph construction via auction-based matching.

The package builds degree-capped subgraphs from dense weighted graphs (or
from feature vectors through a Gaussian kernel) using the auction algorithm
for linear assignment, its top-b generalizations, and a row-partitioned
parallel engine with barrier price synchronization.  Exact brute-force
oracles and quality metrics support verification at small scale.
"""

from .auction import (AuctionNonTermination, Bid, PriceState, auction_assign,
                      compute_bid, default_epsilon, matched_weight)
from .engine import PartitionPlan, partition_rows, run_parallel_auction
from .graph import (BipartiteProblem, DegreeCapError, EdgeSelection,
                    GraphError, SelectionError, WeightedGraph,
                    apply_selection, to_bipartite_shadow)
from .ingest import (MatrixMarketError, build_gaussian_adjacency,
                     gen_two_moons, gen_uniform_bipartite,
                     gen_uniform_unipartite, load_edge_list,
                     load_matrix_market, parse_matrix_market, save_edge_list,
                     save_matrix_market, save_points, save_report)
from .metrics import MetricsReport, cs_residual_max, evaluate
from .oracle import (OracleSizeError, exact_assignment,
                     exact_assignment_bruteforce, exact_bmatching,
                     exact_bmatching_edges)
from .sparsify import (SparsifyConfig, auction_b_rounds, auction_multibid,
                       knn_select, percentile_repair, symmetrize_max,
                       symmetrize_min)

__version__ = "0.1.0"

__all__ = [
    "AuctionNonTermination", "Bid", "BipartiteProblem", "DegreeCapError",
    "EdgeSelection", "GraphError", "MatrixMarketError", "MetricsReport",
    "OracleSizeError", "PartitionPlan", "PriceState", "SelectionError",
    "SparsifyConfig", "WeightedGraph", "apply_selection", "auction_assign",
    "auction_b_rounds", "auction_multibid", "build_gaussian_adjacency",
    "compute_bid", "cs_residual_max", "default_epsilon", "evaluate",
    "exact_assignment", "exact_assignment_bruteforce", "exact_bmatching",
    "exact_bmatching_edges", "gen_two_moons", "gen_uniform_bipartite",
    "gen_uniform_unipartite", "knn_select", "load_edge_list",
    "load_matrix_market", "matched_weight", "parse_matrix_market",
    "partition_rows", "percentile_repair", "run_parallel_auction",
    "save_edge_list", "save_matrix_market", "save_points", "save_report",
    "symmetrize_max", "symmetrize_min", "to_bipartite_shadow",
]
