"""Hypothesis strategies for DAGs and d-separation queries."""

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graph.dag import Dag
from graph.generators import node_names
from models.schemas import DSepQuery

PROPERTY_SETTINGS = settings(
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def dags(draw: st.DrawFn, min_nodes: int = 1, max_nodes: int = 8) -> Dag:
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    names = node_names(n)
    order = draw(st.permutations(names))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                edges.append((order[i], order[j]))
    return Dag(names, edges)


@st.composite
def dags_with_query(draw: st.DrawFn, max_nodes: int = 8, max_c: int = 3):
    g = draw(dags(min_nodes=2, max_nodes=max_nodes))
    pool = list(g.nodes)
    a = draw(st.sampled_from(pool))
    b = draw(st.sampled_from([v for v in pool if v != a]))
    rest = [v for v in pool if v not in (a, b)]
    c = draw(st.lists(st.sampled_from(rest), unique=True, max_size=min(max_c, len(rest)))) if rest else []
    return g, DSepQuery(a_set=frozenset([a]), b_set=frozenset([b]), c_set=frozenset(c))
