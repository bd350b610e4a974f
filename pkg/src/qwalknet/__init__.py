"""
Discrete-time quantum walks on graphs and their source-target entanglement.

The walker lives on the arcs of the symmetric digraph of a graph. Its
source-target entanglement is bounded by the largest matching of the
bipartite double cover inside the state's support, which makes
``log |M*(B(G))|`` the entanglement capacity of the graph.
"""

from .arcs import ArcSpace, BipartiteCover, arc_of, bipartite_double_cover, symmetric_digraph
from .entanglement import (
    CoinAssignment,
    SchmidtSpectrum,
    amplitude_matrix,
    coin_assignment_sweep,
    coin_walker_entropy,
    direction_assignment,
    matching_state,
    schmidt_decompose,
    source_target_entropy,
)
from .graphs import (
    Graph,
    GraphMetrics,
    average_clustering,
    generate_ba,
    generate_cycle,
    generate_er,
    is_connected,
    metrics,
    parse_edge_list,
)
from .hadamard import hadamard_line_walk
from .matching import (
    CapacityReport,
    Matching,
    count_maximum_matchings,
    entanglement_capacity,
    karp_sipser_expected,
    largest_matching_in_support,
    matching_scatter,
    max_matching_bipartite,
    max_matching_general,
    solve_fixed_point,
)
from .walk import (
    CoinOperator,
    Trajectory,
    WalkerState,
    apply_coin,
    apply_shift,
    basis_state,
    evolve,
    grover_coin,
    haar_random_state,
)
from .experiments import ExperimentConfig, RunRecord, pearson, plateau_average, run_ensemble

__version__ = "0.1.0"
