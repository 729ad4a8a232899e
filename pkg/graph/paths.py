"""Path metrics over DAGs: longest paths, shortest unblocked paths, diameter.

Lengths are edge counts. An unbounded length (every path blocked) is
`None`, never a sentinel integer.
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from config import LONGEST_PATH_NODE_CAP
from models.schemas import DSepQuery, PathMetrics

from .dag import Dag, UnknownNodeError, ancestral_graph, validate_query


class GraphTooLargeError(ValueError):
    """An exponential routine was asked to run above its node cap."""

    def __init__(self, what: str, nodes: int, cap: int):
        super().__init__(f"{what}: graph has {nodes} nodes, cap is {cap}; raise the cap explicitly")
        self.nodes = nodes
        self.cap = cap


# Direction a path arrived at a node: UP = came from a child (against the
# edge), DOWN = came from a parent (along the edge).
UP = "up"
DOWN = "down"


def longest_directed_path(g: Dag) -> int:
    """Edge count of the longest directed path (topological-order DP)."""
    if len(g) == 0:
        return 0
    return nx.dag_longest_path_length(g.graph)


def longest_undirected_path(g: Dag, cap: Optional[int] = None) -> int:
    """Edge count of the longest simple path in the undirected skeleton.

    Exhaustive DFS; refuses graphs above `cap` nodes (default from config).
    """
    cap = LONGEST_PATH_NODE_CAP if cap is None else cap
    if len(g) > cap:
        raise GraphTooLargeError("longest_undirected_path", len(g), cap)

    adjacency = {v: sorted(g.neighbors(v)) for v in g.nodes}
    upper = len(g) - 1
    best = 0

    def _extend(node: str, visited: set, depth: int) -> None:
        nonlocal best
        if depth > best:
            best = depth
        if best == upper:
            return
        for nxt in adjacency[node]:
            if nxt not in visited:
                visited.add(nxt)
                _extend(nxt, visited, depth + 1)
                visited.discard(nxt)
                if best == upper:
                    return

    for start in g.nodes:
        _extend(start, {start}, 0)
        if best == upper:
            break
    return best


def _activated(g: Dag, c_set: FrozenSet[str]) -> FrozenSet[str]:
    """Nodes that open as colliders: members of C and their ancestors."""
    return c_set | g.ancestors(c_set)


def unblocked_path_search(
    g: Dag,
    sources: Iterable[str],
    targets: Iterable[str],
    c_set: Iterable[str],
) -> Optional[List[str]]:
    """Shortest unblocked path from any source to any target, or None.

    Breadth-first search over (node, arrival direction) states. Cutting a
    loop out of an active walk keeps it active, so the first target reached
    ends a shortest simple unblocked path.
    """
    c = frozenset(c_set)
    source_list = sorted(set(sources))
    target_set = set(targets)
    for node in list(source_list) + sorted(target_set) + sorted(c):
        if node not in g:
            raise UnknownNodeError(node)
    activated = _activated(g, c)

    previous: Dict[Tuple[str, str], Optional[Tuple[str, str]]] = {}
    frontier: deque = deque()
    for src in source_list:
        for parent in sorted(g.parents(src)):
            state = (parent, UP)
            if state not in previous:
                previous[state] = (src, "start")
                frontier.append(state)
        for child in sorted(g.children(src)):
            state = (child, DOWN)
            if state not in previous:
                previous[state] = (src, "start")
                frontier.append(state)

    while frontier:
        node, direction = frontier.popleft()
        if node in target_set:
            return _rebuild(previous, (node, direction))

        moves: List[Tuple[str, str]] = []
        if direction == UP:
            if node not in c:
                moves += [(p, UP) for p in sorted(g.parents(node))]
                moves += [(ch, DOWN) for ch in sorted(g.children(node))]
        else:
            if node not in c:
                moves += [(ch, DOWN) for ch in sorted(g.children(node))]
            if node in activated:
                moves += [(p, UP) for p in sorted(g.parents(node))]

        for state in moves:
            if state not in previous:
                previous[state] = (node, direction)
                frontier.append(state)
    return None


def _rebuild(previous: Dict, state: Tuple[str, str]) -> List[str]:
    path = [state[0]]
    link = previous[state]
    while link[1] != "start":
        path.append(link[0])
        link = previous[link]
    path.append(link[0])
    path.reverse()
    return path


def shortest_unblocked_path(g: Dag, src: str, dst: str, c_set: Iterable[str]) -> Optional[int]:
    """Edge count of the shortest path from src to dst unblocked given C; None if all blocked."""
    c = frozenset(c_set)
    if src == dst:
        raise ValueError("src and dst must differ")
    if src in c or dst in c:
        raise ValueError("src and dst must not be conditioned on")
    path = unblocked_path_search(g, [src], [dst], c)
    return None if path is None else len(path) - 1


def is_unblocked(g: Dag, path: Sequence[str], c_set: Iterable[str]) -> bool:
    """Check a concrete node sequence against the blocking rules.

    Every collider must be in C or have a descendant in C; every other
    interior node must be outside C. The path must be simple and follow edges.
    """
    c = set(c_set)
    if len(path) < 2 or len(set(path)) != len(path):
        return False
    for u, v in zip(path, path[1:]):
        if not (g.has_edge(u, v) or g.has_edge(v, u)):
            return False
    for prev, node, nxt in zip(path, path[1:], path[2:]):
        collider = g.has_edge(prev, node) and g.has_edge(nxt, node)
        if collider:
            if node not in c and not (g.descendants([node]) & c):
                return False
        elif node in c:
            return False
    return True


def diameter(g: Dag) -> int:
    """Longest shortest-path distance in the skeleton, maximized per component."""
    if len(g) == 0:
        return 0
    skeleton = g.skeleton()
    return max(
        nx.diameter(skeleton.subgraph(component))
        for component in nx.connected_components(skeleton)
    )


def path_metrics(g: Dag, q: DSepQuery, cap: Optional[int] = None) -> PathMetrics:
    """Aggregate the path quantities used by the clash-time bounds."""
    validate_query(g, q)
    an = ancestral_graph(g, q.members)
    l_ij: Dict[str, Dict[str, Optional[int]]] = {}
    for a in sorted(q.a_set):
        l_ij[a] = {b: shortest_unblocked_path(an, a, b, q.c_set) for b in sorted(q.b_set)}

    metrics = PathMetrics(
        l_an=longest_undirected_path(an, cap),
        l_an_d=longest_directed_path(an),
        l_ij=l_ij,
        diameter=diameter(g),
        e_an=len(an.edges),
    )
    logging.debug(
        "path metrics: l_an=%s l_an_d=%s min_l_ij=%s e_an=%s",
        metrics.l_an, metrics.l_an_d, metrics.min_l_ij, metrics.e_an,
    )
    return metrics
