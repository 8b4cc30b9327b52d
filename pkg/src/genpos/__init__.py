"""genpos: general position numbers of graphs.

Exact solving at desk scale, certified lower/upper bounds, family
generators with predicted values, and the independence-to-general-position
hardness lift.
"""

__version__ = "0.1.0"

from .errors import (
    DiameterTooSmallError,
    DisconnectedError,
    EmptySetError,
    FormatError,
    GenposError,
    InvalidCoverError,
    NotAnEdgeError,
    ParameterError,
    SelfLoopError,
    TimedOutError,
    TooLargeError,
    VertexOutOfRangeError,
)
from .graph import (
    BlockDecomposition,
    DistanceMatrix,
    Graph,
    all_pairs_distances,
    bfs_leaf_count,
    bfs_parents,
    block_decomposition,
    build_graph,
    diameter,
    edge_distance,
    is_block_graph,
    simplicial_vertices,
)
from .geodesic import (
    GeneralPositionSet,
    TripleSet,
    collinear_triples,
    is_between,
    verify_general_position,
)
from .solver import (
    SolveResult,
    gp_brute_force,
    gp_exact,
    gp_greedy,
    independence_number_exact,
)
from .bounds import (
    BoundEntry,
    BoundsReport,
    IsometricCover,
    PackingCertificate,
    bfs_leaf_bound_check,
    bounds_report,
    cover_lemma_bound,
    diametral_violation_triple,
    distant_edge_bound,
    geodesic_cover_from_vertex,
    ip_from_vertex,
    is_isometric_subgraph,
    k_packing_number,
    packing_lower_bound,
    validate_cover,
    vertex_path_bound_check,
)
from .families import (
    FamilyInstance,
    make_complete,
    make_complete_binary_tree,
    make_cycle,
    make_glued_binary_tree,
    make_gn_counterexample,
    make_path,
    make_petersen,
    make_random_block_graph,
    make_spider_triangles,
    make_star,
    make_theta,
)
from .reduction import (
    ReductionInstance,
    build_reduction,
    verify_membership_claim,
    verify_value_claim,
)
from .formats import (
    iter_graph6,
    parse_edge_list,
    parse_graph6,
    serialize_edge_list,
    serialize_graph6,
)
from .report import RunReport, build_family, graph_from_dict, graph_to_dict, reverify
