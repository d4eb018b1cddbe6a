"""Exact tools for exponentially independent and exponentially dominating
vertex sets in graphs: verifiers over exact dyadic arithmetic, generators
for the extremal tree families, constructive lower-bound procedures, exact
solvers, and a reproducible experiment harness."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    EdgeListError,
    parse_edge_list,
    write_edge_list,
    to_dot,
    bfs_distances,
    absorbing_bfs,
    d_neighborhood,
    longest_path,
    is_connected,
    is_tree,
    is_subcubic,
    endvertices,
    degree2_vertices,
    induced_subgraph,
    connected_components,
    INF,
)
from .weights import (
    Dyadic,
    WeightReport,
    blocked_distance,
    weight,
    weight_details,
    is_exponentially_independent,
    is_exponentially_dominating,
    ei_holds,
    ed_holds,
)
from .families import (
    LabeledGraph,
    gen_tk,
    canonical_set_tk,
    gen_tprime,
    tprime_dense_set,
    endvertex_set,
    gen_tdelta,
    grandchild_set,
    gen_perfect_binary,
    leaf_set,
    gen_path,
    gen_cycle,
    random_subcubic_tree,
    random_subcubic_graph,
    enumerate_trees,
    free_trees,
    tree_code,
)
from .constructors import (
    PackingParams,
    GoodSetTrace,
    TraceStep,
    InvariantViolation,
    packing_separation,
    greedy_packing,
    expansion_condition_holds,
    expansion_separation,
    expansion_margin_holds,
    tree_good_set,
    good_set_audit,
)
from .solvers import (
    SearchResult,
    InfeasibleError,
    alpha_e_exact,
    alpha_e_bruteforce,
    gamma_e_exact,
    greedy_dominating_set,
    find_maximal_ei_not_ed,
)
from .experiments import (
    CorpusError,
    CsvTable,
    ExperimentConfig,
    ScanReport,
    ForcingReport,
    parse_corpus,
    bound_table,
    random_ei_probability,
    conjecture_scan,
    forced_endvertex_study,
)
