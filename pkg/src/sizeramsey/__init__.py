"""Constructive size-Ramsey toolkit for powers of paths.

Build sparse pseudo-random hosts, blow them up into clusters, let an
adversary 2-colour the edges, and extract an independently checkable
monochromatic power of a path.
"""

from .adversary import Adversary, color_with
from .cover import (
    PartitionCover,
    RamseyTable,
    SearchExhausted,
    auxiliary_coloring,
    cover_blue_paths_red_multipartite,
    find_biclique,
    find_mono_clique,
    kst_edge_bound_check,
    verify_cover,
)
from .dfs import TransversalInstance, find_transversal_path, replay_trace
from .experiment import ExperimentSpec, edge_budget_report, replay_failure, run_experiment
from .graph import (
    BlowupMap,
    Color,
    Graph,
    TwoColoring,
    Witness,
    complete_blowup,
    complete_graph,
    graph_power,
    verify_witness,
)
from .host import (
    certify_expansion_exact,
    certify_expansion_sampled,
    degree_prune,
    paper_constants,
    sample_host,
)
from .lift import (
    SolveConfig,
    SolveReport,
    claim_dichotomy,
    lift_blue,
    lift_red_greedy,
    lift_red_resample,
    select_majority_side,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "Adversary",
    "auxiliary_coloring",
    "BlowupMap",
    "certify_expansion_exact",
    "certify_expansion_sampled",
    "claim_dichotomy",
    "Color",
    "color_with",
    "complete_blowup",
    "complete_graph",
    "cover_blue_paths_red_multipartite",
    "degree_prune",
    "edge_budget_report",
    "ExperimentSpec",
    "find_biclique",
    "find_mono_clique",
    "find_transversal_path",
    "Graph",
    "graph_power",
    "kst_edge_bound_check",
    "lift_blue",
    "lift_red_greedy",
    "lift_red_resample",
    "paper_constants",
    "PartitionCover",
    "RamseyTable",
    "replay_failure",
    "replay_trace",
    "run_experiment",
    "sample_host",
    "SearchExhausted",
    "select_majority_side",
    "solve",
    "SolveConfig",
    "SolveReport",
    "TransversalInstance",
    "TwoColoring",
    "verify_cover",
    "verify_witness",
    "Witness",
]
