"""
DAG data model for d-separation queries.

A `Dag` is an immutable wrapper over a frozen networkx DiGraph with
precomputed parent/child indices. Node identifiers are opaque,
case-sensitive strings; wherever an order is needed it is lexicographic.

Graph files are UTF-8 text:

    # comment
    node a
    edge a b        (parent child)

`node` lines are optional for nodes that appear in an edge.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import graphviz
import networkx as nx

from models.schemas import DSepQuery

Edge = Tuple[str, str]


class DagError(ValueError):
    """Base class for malformed graphs."""


class GraphSyntaxError(DagError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CycleError(DagError):
    def __init__(self, cycle: List[str]):
        super().__init__("cycle detected: " + " -> ".join(cycle + cycle[:1]))
        self.cycle = cycle


class DuplicateEdgeError(DagError):
    def __init__(self, edge: Edge, line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}duplicate edge {edge[0]} -> {edge[1]}")
        self.edge = edge
        self.line = line


class UnknownNodeError(DagError):
    def __init__(self, node: str):
        super().__init__(f"unknown node '{node}'")
        self.node = node


class Dag:
    """Immutable directed acyclic graph with named nodes."""

    __slots__ = ("_graph", "_nodes", "_edges", "_parents", "_children")

    def __init__(self, nodes: Iterable[str], edges: Iterable[Edge]):
        node_set = set(nodes)
        edge_list = [tuple(e) for e in edges]
        seen: set = set()
        for parent, child in edge_list:
            for endpoint in (parent, child):
                if endpoint not in node_set:
                    raise UnknownNodeError(endpoint)
            if parent == child:
                raise CycleError([parent])
            if (parent, child) in seen:
                raise DuplicateEdgeError((parent, child))
            seen.add((parent, child))

        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(node_set))
        graph.add_edges_from(sorted(seen))
        try:
            cycle = nx.find_cycle(graph)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            raise CycleError([u for u, _ in cycle])

        self._graph = nx.freeze(graph)
        self._nodes: Tuple[str, ...] = tuple(sorted(node_set))
        self._edges: FrozenSet[Edge] = frozenset(seen)
        self._parents: Dict[str, FrozenSet[str]] = {
            v: frozenset(graph.predecessors(v)) for v in self._nodes
        }
        self._children: Dict[str, FrozenSet[str]] = {
            v: frozenset(graph.successors(v)) for v in self._nodes
        }

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._nodes

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    @property
    def graph(self) -> nx.DiGraph:
        """The frozen networkx view; callers must not mutate it."""
        return self._graph

    def parents(self, node: str) -> FrozenSet[str]:
        self._require(node)
        return self._parents[node]

    def children(self, node: str) -> FrozenSet[str]:
        self._require(node)
        return self._children[node]

    def neighbors(self, node: str) -> FrozenSet[str]:
        return self.parents(node) | self.children(node)

    def ancestors(self, nodes: Iterable[str]) -> FrozenSet[str]:
        """Strict ancestors of the given nodes (the nodes themselves excluded unless reached)."""
        result: set = set()
        for node in nodes:
            self._require(node)
            result |= nx.ancestors(self._graph, node)
        return frozenset(result)

    def descendants(self, nodes: Iterable[str]) -> FrozenSet[str]:
        result: set = set()
        for node in nodes:
            self._require(node)
            result |= nx.descendants(self._graph, node)
        return frozenset(result)

    def topological_order(self) -> List[str]:
        return list(nx.lexicographical_topological_sort(self._graph))

    def skeleton(self) -> nx.Graph:
        return self._graph.to_undirected(as_view=False)

    def subgraph(self, nodes: Iterable[str]) -> "Dag":
        """Induced subgraph on `nodes`."""
        keep = set(nodes)
        for node in keep:
            self._require(node)
        return Dag(keep, [(u, v) for u, v in self._edges if u in keep and v in keep])

    def edge_subgraph(self, edges: Iterable[Edge]) -> "Dag":
        """Subgraph made of `edges` and their endpoints; edges must exist in this DAG."""
        edge_list = list(edges)
        nodes = {n for e in edge_list for n in e}
        return Dag(nodes, edge_list)

    def has_edge(self, parent: str, child: str) -> bool:
        return (parent, child) in self._edges

    def _require(self, node: str) -> None:
        if node not in self._parents:
            raise UnknownNodeError(node)

    def __contains__(self, node: object) -> bool:
        return node in self._parents

    def __len__(self) -> int:
        return len(self._nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._nodes, self._edges))

    def __repr__(self) -> str:
        return f"Dag(nodes={len(self._nodes)}, edges={len(self._edges)})"


def parse_dag(text: str) -> Dag:
    """Parse the edge-list graph format into a `Dag`."""
    nodes: Dict[str, None] = {}
    edges: List[Edge] = []
    seen: set = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword = parts[0]
        if keyword == "node":
            if len(parts) != 2:
                raise GraphSyntaxError(lineno, "expected 'node <id>'")
            nodes.setdefault(parts[1])
        elif keyword == "edge":
            if len(parts) != 3:
                raise GraphSyntaxError(lineno, "expected 'edge <parent> <child>'")
            edge = (parts[1], parts[2])
            if edge in seen:
                raise DuplicateEdgeError(edge, lineno)
            seen.add(edge)
            edges.append(edge)
            nodes.setdefault(parts[1])
            nodes.setdefault(parts[2])
        else:
            raise GraphSyntaxError(lineno, f"unknown directive '{keyword}'")

    return Dag(nodes, edges)


def load_dag(path: str) -> Dag:
    with open(path, encoding="utf-8") as handle:
        return parse_dag(handle.read())


def serialize_dag(g: Dag) -> str:
    """Nodes first, then edges, both sorted."""
    lines = [f"node {v}" for v in g.nodes]
    lines += [f"edge {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def ancestral_graph(g: Dag, k: Iterable[str]) -> Dag:
    """Induced subgraph on `k` and all of its ancestors."""
    keep = set(k)
    for node in keep:
        if node not in g:
            raise UnknownNodeError(node)
    return g.subgraph(keep | g.ancestors(keep))


def is_connected_skeleton(g: Dag) -> bool:
    if len(g) == 0:
        return True
    return nx.is_connected(g.skeleton())


def validate_query(g: Dag, q: DSepQuery) -> None:
    """Raise `UnknownNodeError` if the query names a node missing from `g`."""
    for node in sorted(q.members):
        if node not in g:
            raise UnknownNodeError(node)


def dag_to_dot(g: Dag, c_set: Iterable[str] = (), name: str = "G") -> str:
    """DOT text for `g`; edges leaving a conditioning node are dashed."""
    conditioned = set(c_set)
    dot = graphviz.Digraph(name=name)
    for node in g.nodes:
        dot.node(node)
    for parent, child in sorted(g.edges):
        if parent in conditioned:
            # graphviz has no dash-dot line style; dashed is the closest
            dot.edge(parent, child, style="dashed")
        else:
            dot.edge(parent, child)
    return dot.source
