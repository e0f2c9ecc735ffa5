"""Exact checks of quantum-classical correspondences on finite graphs.

The transfer operator on non-backtracking paths, the edge Laplacian
(non-backtracking matrix) and the vertex Laplacian equalizer are built as
exact rational matrices; their eigenspaces are compared, explicit maps
between them are verified, and the Poisson transform on truncated
universal covering trees is checked against the local eigen-equations.
"""
from .graph import (Graph, GraphError, ParseError, UnknownVertex, ValidationError,
                    branching, complete_bipartite_graph, complete_graph, cycle_graph,
                    cyclomatic_number, distance, is_bipartite, load_graph, parse_graph,
                    petersen_graph)
from .operators import (adjacency_matrix, edge_laplacian_matrix, edge_spectrum,
                        vertex_equalizer_matrix, zeta_determinant)
from .paths import enumerate_paths, transfer_matrix
from .qcc import (check_all_eigenvalues, check_dimension_formulas, check_exceptional,
                  check_generic, map_edge_to_vertex, map_vertex_to_edge)
from .tree import build_tree_ball, edge_poisson_transform, poisson_transform

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "ParseError", "UnknownVertex", "ValidationError",
    "branching", "complete_bipartite_graph", "complete_graph", "cycle_graph",
    "cyclomatic_number", "distance", "is_bipartite", "load_graph", "parse_graph",
    "petersen_graph", "adjacency_matrix", "edge_laplacian_matrix", "edge_spectrum",
    "vertex_equalizer_matrix", "zeta_determinant", "enumerate_paths", "transfer_matrix",
    "check_all_eigenvalues", "check_dimension_formulas", "check_exceptional",
    "check_generic", "map_edge_to_vertex", "map_vertex_to_edge", "build_tree_ball",
    "edge_poisson_transform", "poisson_transform",
]
