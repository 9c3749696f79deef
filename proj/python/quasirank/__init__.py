"""Parameter-free quasi-stationary centrality measures over directed graphs.

Thin wrapper around the compiled core. The interesting entry points:

    parse_graph / load_graph   build an immutable graph from an edge list
    decompose                  ESCC / POUT partition and component stats
    rank_all                   every centrality measure plus lambda1
    pagerank                   the damped walk alone
    kendall_tau                rank correlation between two score vectors
    generate_album_graph       deterministic synthetic site family
    simulate_conditioned       Monte-Carlo check of the conditioned walk
    expansion_report           first-order perturbation residuals
"""

from ._core import (
    GraphParseError,
    GraphValidationError,
    SimulationError,
    SolverConvergenceError,
    WebGraph,
    decompose,
    expansion_report,
    generate_album_graph,
    kendall_tau,
    load_graph,
    pagerank,
    parse_graph,
    rank_all,
    simulate_conditioned,
)

__all__ = [
    "GraphParseError",
    "GraphValidationError",
    "SimulationError",
    "SolverConvergenceError",
    "WebGraph",
    "decompose",
    "expansion_report",
    "generate_album_graph",
    "kendall_tau",
    "load_graph",
    "pagerank",
    "parse_graph",
    "rank_all",
    "simulate_conditioned",
]
