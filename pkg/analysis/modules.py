"""
Refutation modules: connected subgraphs that certify a dependence.

A module is an unblocked A–B path together with, for every collider on
it, a directed path from that collider down to C. Enumeration composes
every simple unblocked path with every combination of collider links;
each link stops at the first C node it meets. The brute-force subgraph
search below exists only as a check on minimality.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from config import MODULE_NODE_CAP
from graph.dag import Dag, ancestral_graph, is_connected_skeleton, validate_query
from graph.paths import (
    GraphTooLargeError,
    is_unblocked,
    longest_directed_path,
    unblocked_path_search,
)
from models.schemas import DSepQuery, RefutationModule
from oracles.certificate import verify_certificate
from oracles.reach import d_separated_reach

Edge = Tuple[str, str]


class NotApplicableError(ValueError):
    """The query is a yes-instance (or the run independent); no module exists."""


def _path_edges(g: Dag, path: Sequence[str]) -> List[Edge]:
    return [(u, v) if g.has_edge(u, v) else (v, u) for u, v in zip(path, path[1:])]


def _colliders(g: Dag, path: Sequence[str]) -> List[str]:
    return [
        node
        for prev, node, nxt in zip(path, path[1:], path[2:])
        if g.has_edge(prev, node) and g.has_edge(nxt, node)
    ]


def _links_to_c(g: Dag, start: str, c_set: frozenset) -> List[Tuple[str, ...]]:
    """Every directed path from `start` that ends at its first C node."""
    if start in c_set:
        return [(start,)]
    links: List[Tuple[str, ...]] = []
    stack = [(start, (start,))]
    while stack:
        node, trail = stack.pop()
        for child in sorted(g.children(node)):
            if child in trail:
                continue
            if child in c_set:
                links.append(trail + (child,))
            else:
                stack.append((child, trail + (child,)))
    return sorted(links)


def _unblocked_paths(an: Dag, q: DSepQuery) -> Iterator[Tuple[str, ...]]:
    skeleton = an.skeleton()
    for a in sorted(q.a_set):
        for b in sorted(q.b_set):
            for path in nx.all_simple_paths(skeleton, a, b):
                if is_unblocked(an, path, q.c_set):
                    yield tuple(path)


def _module_metrics(an: Dag, edges: Sequence[Edge], q: DSepQuery) -> Tuple[int, int]:
    module = an.edge_subgraph(edges)
    members = set(module.nodes)
    path = unblocked_path_search(
        module, q.a_set & members, q.b_set & members, q.c_set & members
    )
    return longest_directed_path(module), len(path) - 1


def _require_dependent(g: Dag, q: DSepQuery, max_nodes: int) -> Dag:
    validate_query(g, q)
    an = ancestral_graph(g, q.members)
    if len(an) > max_nodes:
        raise GraphTooLargeError("refutation module enumeration", len(an), max_nodes)
    if d_separated_reach(g, q).separated:
        raise NotApplicableError("query holds: C separates A from B, so no refutation module exists")
    return an


def enumerate_refutation_modules(
    g: Dag, q: DSepQuery, max_nodes: int = MODULE_NODE_CAP
) -> List[RefutationModule]:
    """All modules built from an unblocked path plus collider links, one per edge set.

    The node cap applies to the ancestral graph of A ∪ B ∪ C, which holds
    every module.
    """
    an = _require_dependent(g, q, max_nodes)
    seen: Dict[Tuple[Edge, ...], RefutationModule] = {}

    for path in _unblocked_paths(an, q):
        colliders = _colliders(an, path)
        options = [_links_to_c(an, v, q.c_set) for v in colliders]
        for choice in itertools.product(*options):
            edges = set(_path_edges(an, path))
            for link in choice:
                edges.update(zip(link, link[1:]))
            key = tuple(sorted(edges))
            if key in seen:
                continue
            l_d, p_len = _module_metrics(an, key, q)
            module = RefutationModule(
                edges=key,
                active_path=path,
                collider_links=dict(zip(colliders, choice)),
                l_d=l_d,
                p_len=p_len,
            )
            x, y, z_star = certificate_for(module, q)
            if not verify_certificate(g, key, x, y, z_star, q):
                logging.warning("Module %s failed certificate verification; skipped", key)
                continue
            seen[key] = module

    modules = [seen[key] for key in sorted(seen, key=lambda k: (len(k), k))]
    logging.debug("Enumerated %d refutation modules", len(modules))
    return modules


def minimal_refutation_module(
    g: Dag, q: DSepQuery, max_nodes: int = MODULE_NODE_CAP
) -> RefutationModule:
    """Fewest edges; ties go to the lexicographically smallest sorted edge list."""
    modules = enumerate_refutation_modules(g, q, max_nodes)
    return min(modules, key=lambda m: (m.size, m.edges))


def certificate_for(module: RefutationModule, q: DSepQuery) -> Tuple[str, str, frozenset]:
    """(x, y, Z*) for a module: path endpoints and the C nodes it contains."""
    nodes = {v for edge in module.edges for v in edge}
    return module.active_path[0], module.active_path[-1], frozenset(q.c_set & nodes)


def is_refutation_module(g: Dag, q: DSepQuery, module: RefutationModule) -> bool:
    """Check a module against the definition alone, without the enumeration code."""
    edges = set(module.edges)
    if not edges or any(not g.has_edge(u, v) for u, v in edges):
        return False
    if not is_connected_skeleton(Dag({v for e in edges for v in e}, edges)):
        return False

    path = module.active_path
    if len(path) < 2 or len(set(path)) != len(path):
        return False
    if path[0] not in q.a_set or path[-1] not in q.b_set:
        return False
    for u, v in zip(path, path[1:]):
        if (u, v) not in edges and (v, u) not in edges:
            return False

    for prev, node, nxt in zip(path, path[1:], path[2:]):
        head_to_head = (prev, node) in edges and (nxt, node) in edges
        if not head_to_head:
            if node in q.c_set:
                return False
            continue
        if node in q.c_set:
            continue
        link = module.collider_links.get(node)
        if not link or link[0] != node or link[-1] not in q.c_set:
            return False
        if any((u, v) not in edges for u, v in zip(link, link[1:])):
            return False
    return True


def brute_force_minimal_module_size(
    g: Dag, q: DSepQuery, max_edges: int = 20
) -> Optional[int]:
    """Smallest edge subset of the ancestral graph that forms a module, by exhaustive search.

    Returns None for a yes-instance.
    """
    validate_query(g, q)
    an = ancestral_graph(g, q.members)
    edges = sorted(an.edges)
    if len(edges) > max_edges:
        raise GraphTooLargeError("brute-force module search (edges)", len(edges), max_edges)

    for size in range(1, len(edges) + 1):
        for subset in itertools.combinations(edges, size):
            if _is_module_edge_set(subset, q):
                return size
    return None


def _is_module_edge_set(edges: Sequence[Edge], q: DSepQuery) -> bool:
    nodes = {v for e in edges for v in e}
    a_side = q.a_set & nodes
    b_side = q.b_set & nodes
    if not a_side or not b_side:
        return False
    sub = Dag(nodes, edges)
    if not is_connected_skeleton(sub):
        return False
    sub_query = DSepQuery(a_set=a_side, b_set=b_side, c_set=q.c_set & nodes)
    return not d_separated_reach(sub, sub_query).separated
