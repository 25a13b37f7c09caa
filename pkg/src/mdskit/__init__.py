"""Minimum dominating set toolkit.

Exact branch-and-bound solving with optimum enumeration, greedy / random /
probability-map construction heuristics with pruning, an iterated-greedy
metaheuristic, GCN probability-map inference, dataset tooling, and a
benchmark CLI.
"""

from mdskit.exact import (
    BlockingSet,
    BudgetExceededError,
    ExactResult,
    SolveBudget,
    brute_force_gamma,
    enumerate_optima,
    solve_exact,
)
from mdskit.gcn import (
    GcnWeights,
    ProbabilityMaps,
    forward,
    load_weights,
    normalized_adjacency,
    random_weights,
    save_weights,
)
from mdskit.graph import (
    Graph,
    VertexSet,
    closed_neighborhood,
    generate_ba,
    generate_er,
    graph_stats,
    is_dominating,
    read_edgelist,
    relabel,
    write_edgelist,
)
from mdskit.heuristics import (
    Heuristic,
    construct,
    construct_from_maps,
    greedy_heuristic,
    greedy_score,
    map_heuristic,
    prune,
    random_heuristic,
)
from mdskit.ig import (
    IgConfig,
    IgTrace,
    local_improvement,
    random_destruction,
    reconstruction,
    run_ig,
)

__version__ = "0.1.0"
