"""Graph core: DAG model, file format, ancestral graphs and path metrics."""

from .dag import (
    Dag,
    DagError,
    GraphSyntaxError,
    CycleError,
    DuplicateEdgeError,
    UnknownNodeError,
    parse_dag,
    load_dag,
    serialize_dag,
    ancestral_graph,
    is_connected_skeleton,
    validate_query,
    dag_to_dot,
)
from .paths import (
    GraphTooLargeError,
    longest_directed_path,
    longest_undirected_path,
    shortest_unblocked_path,
    unblocked_path_search,
    is_unblocked,
    diameter,
    path_metrics,
)

__all__ = [
    "Dag",
    "DagError",
    "GraphSyntaxError",
    "CycleError",
    "DuplicateEdgeError",
    "UnknownNodeError",
    "parse_dag",
    "load_dag",
    "serialize_dag",
    "ancestral_graph",
    "is_connected_skeleton",
    "validate_query",
    "dag_to_dot",
    "GraphTooLargeError",
    "longest_directed_path",
    "longest_undirected_path",
    "shortest_unblocked_path",
    "unblocked_path_search",
    "is_unblocked",
    "diameter",
    "path_metrics",
]
