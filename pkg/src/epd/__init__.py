"""Digraph minors, directed tree decompositions, grid generators and
pack-or-hit engines, cross-verified by brute-force oracles at desk scale."""

from .digraph import (
    BlockGraph,
    Digraph,
    butterfly_contract,
    cycle_graph,
    degrees,
    delete_vertices,
    from_json,
    induced_subgraph,
    is_butterfly_contractible,
    is_isomorphic,
    is_vertex_cyclic,
    is_weakly_connected,
    path_graph,
    strong_components,
    subdivide_edge,
    to_dot,
    to_json,
)
from .dtd import (
    Arborescence,
    DirectedTreeDecomposition,
    Linkage,
    compute_dtd_exact,
    compute_special_dtd,
    find_model_bounded_dtw,
    is_z_normal,
    restrict_dtd,
    sigma_linkage,
    validate_dtd,
    validate_special_dtd,
)
from .engine import (
    EPConfig,
    LClusterSet,
    PackOrHit,
    classify_vertex_cyclic,
    find_l_clusters,
    is_l_transit_free,
    menger_paths,
    pack_or_hit_bipartite_clusters,
    pack_or_hit_bounded_dtw,
    pack_or_hit_strongly_connected,
    pack_or_hit_two_cycles,
)
from .generators import (
    acyclic_grid,
    attach_to_grid,
    attach_to_wall,
    cylindrical_grid,
    cylindrical_wall,
    left_acyclic_attachment,
    right_acyclic_attachment,
    three_component_attachment,
    two_cycles_pattern,
    two_edge_attachment,
)
from .minors import (
    ButterflyModel,
    TopologicalModel,
    butterfly_to_topological,
    find_butterfly_model,
    find_topological_model,
    is_s_embeddable,
    is_ultra_homogeneous,
    validate_butterfly_model,
    validate_topological_model,
)
from .oracle import (
    BudgetExceeded,
    OracleBudget,
    oracle_has_minor,
    oracle_max_packing,
    oracle_min_hitting_set,
    oracle_min_l_cycle_hitting,
    oracle_sigma_linkage,
)

__version__ = "0.1.0"
