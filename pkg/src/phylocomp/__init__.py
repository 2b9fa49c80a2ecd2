"""Compression, class recognition and cluster containment for rooted phylogenetic networks."""

__version__ = "0.1.0"

from .classify import (
    ClassificationReport,
    classification_report,
    is_binary,
    is_galled,
    is_quasi_galled,
    is_quasi_reticulation_visible,
    is_reticulation_visible,
    is_tree_based,
    is_tree_child,
    is_tree_sibling,
)
from .compression import CompressionResult, compress, image_subgraph, is_inner, path_image
from .containment import (
    Color,
    Coloring,
    SccInstance,
    build_n_double_prime,
    build_n_prime,
    color_compression,
    make_instance,
    scc_report,
    solve_cc,
    solve_scc,
    solve_scc_exposed,
)
from .decomposition import (
    ComponentKind,
    Decomposition,
    check_component_bound,
    decompose,
    is_exposed,
    is_isolated,
)
from .enewick import export_dot, parse_edge_list, parse_enewick, write_edge_list, write_enewick
from .generators import GenSpec, generate, size_ladder
from .network import (
    Network,
    NodeKind,
    is_ancestor,
    is_dominator,
    is_isomorphic,
    leaves_below,
    node_kind,
    suppress_redundant,
    validate,
    visible_nodes,
)
