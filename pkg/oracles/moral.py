"""Moral-graph oracle: C separates A from B in the moralized ancestral graph."""

import networkx as nx

from graph.dag import Dag, ancestral_graph, validate_query
from models.schemas import DSepQuery, OracleResult


def d_separated_moral(g: Dag, q: DSepQuery) -> OracleResult:
    """Separated iff no undirected path joins A and B once C is removed.

    Moral-graph paths are not DAG paths, so no witness is returned.
    """
    validate_query(g, q)
    an = ancestral_graph(g, q.members)
    moral = nx.moral_graph(an.graph)
    moral.remove_nodes_from(q.c_set)

    seen = set(q.a_set)
    frontier = list(sorted(q.a_set))
    while frontier:
        node = frontier.pop()
        for nbr in moral.neighbors(node):
            if nbr in q.b_set:
                return OracleResult(separated=False)
            if nbr not in seen:
                seen.add(nbr)
                frontier.append(nbr)
    return OracleResult(separated=True)
