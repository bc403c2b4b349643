"""Common-subsequence and chaining solvers between a sequence and a
pangenome graph, all reduced to longest paths in product DAGs, with
independent brute-force oracles for verification."""

from .chaining import (
    Chain,
    Seed,
    SeedError,
    build_seed_graph,
    parse_seeds,
    solve_memc,
    solve_msp,
    strictly_precedes,
    total_length,
)
from .daglp import (
    CycleError,
    DagError,
    LongestPathResult,
    MatchDag,
    longest_path_edge,
    longest_path_vertex,
    parse_dag,
    topo_sort,
)
from .fglcs import GapParams, build_gap_match_graph, solve_fglcs_sg
from .generate import GenProfile, Instance, generate_instance, instance_to_tsv, parse_instance
from .graph import (
    CharDistMatrix,
    CharGraph,
    GraphError,
    PangenomeGraph,
    ReachMatrix,
    build_char_graph,
    char_distances,
    parse_graph,
    reachability,
    spell,
)
from .lcs import Alignment, AlignmentError, MatchPoint, build_match_graph, solve_lcs_sg
from .oracle import (
    DEFAULT_BUDGET,
    OracleBudget,
    OracleError,
    classic_lcs_dp,
    embeddable,
    enumerate_mems,
    fglcs_bruteforce,
    gap_profiles,
    lcs_sg_bruteforce,
    memc_bruteforce,
    msp_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AlignmentError",
    "Chain",
    "CharDistMatrix",
    "CharGraph",
    "CycleError",
    "DEFAULT_BUDGET",
    "DagError",
    "GapParams",
    "GenProfile",
    "GraphError",
    "Instance",
    "LongestPathResult",
    "MatchDag",
    "MatchPoint",
    "OracleBudget",
    "OracleError",
    "PangenomeGraph",
    "ReachMatrix",
    "Seed",
    "SeedError",
    "build_char_graph",
    "build_gap_match_graph",
    "build_match_graph",
    "build_seed_graph",
    "char_distances",
    "classic_lcs_dp",
    "embeddable",
    "enumerate_mems",
    "fglcs_bruteforce",
    "gap_profiles",
    "generate_instance",
    "instance_to_tsv",
    "lcs_sg_bruteforce",
    "longest_path_edge",
    "longest_path_vertex",
    "memc_bruteforce",
    "msp_bruteforce",
    "parse_dag",
    "parse_graph",
    "parse_instance",
    "parse_seeds",
    "reachability",
    "solve_fglcs_sg",
    "solve_lcs_sg",
    "solve_memc",
    "solve_msp",
    "spell",
    "strictly_precedes",
    "topo_sort",
    "total_length",
]
