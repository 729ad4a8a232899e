"""Random and exhaustive DAG/query generators for sweeps and crosschecks."""

import itertools
import random
import string
from typing import Iterator, List, Sequence

import networkx as nx

from config import DEFAULT_EDGE_PROBABILITY
from models.schemas import DSepQuery

from .dag import Dag


def node_names(n: int) -> List[str]:
    """Short names sorting in creation order: a..z for small graphs, v00.. beyond."""
    if n <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:n])
    width = len(str(n - 1))
    return [f"v{i:0{width}d}" for i in range(n)]


def random_dag(n: int, p: float = DEFAULT_EDGE_PROBABILITY, rng: random.Random = None) -> Dag:
    """Shuffle the nodes into a topological order, keep each forward edge with probability p."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = rng or random.Random()
    names = node_names(n)
    order = list(names)
    rng.shuffle(order)
    edges = [
        (order[i], order[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Dag(names, edges)


def all_labeled_dags(n: int) -> Iterator[Dag]:
    """Every labeled DAG on n nodes (543 for n = 4), in a fixed order.

    Each unordered pair carries no edge or one of its two orientations;
    cyclic combinations are dropped.
    """
    names = node_names(n)
    pairs = list(itertools.combinations(names, 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = []
        for (u, v), pick in zip(pairs, choice):
            if pick == 1:
                edges.append((u, v))
            elif pick == 2:
                edges.append((v, u))
        graph = nx.DiGraph(edges)
        if edges and not nx.is_directed_acyclic_graph(graph):
            continue
        yield Dag(names, edges)


def singleton_queries(g: Dag, c_sizes: Sequence[int] = (0, 1, 2)) -> Iterator[DSepQuery]:
    """All queries with |A| = |B| = 1 and |C| drawn from `c_sizes`."""
    for a, b in itertools.permutations(g.nodes, 2):
        rest = [v for v in g.nodes if v not in (a, b)]
        for size in c_sizes:
            for c in itertools.combinations(rest, size):
                yield DSepQuery(a_set=frozenset([a]), b_set=frozenset([b]), c_set=frozenset(c))


def random_query(g: Dag, rng: random.Random, max_side: int = 2, max_c: int = 2) -> DSepQuery:
    """Random disjoint (A, B, C) with nonempty A and B; needs at least two nodes."""
    if len(g) < 2:
        raise ValueError("a query needs at least two nodes")
    pool = list(g.nodes)
    rng.shuffle(pool)
    a_size = rng.randint(1, min(max_side, len(pool) - 1))
    b_size = rng.randint(1, min(max_side, len(pool) - a_size))
    a_set = pool[:a_size]
    b_set = pool[a_size:a_size + b_size]
    rest = pool[a_size + b_size:]
    c_size = rng.randint(0, min(max_c, len(rest)))
    c_set = rest[:c_size]
    return DSepQuery(a_set=frozenset(a_set), b_set=frozenset(b_set), c_set=frozenset(c_set))
