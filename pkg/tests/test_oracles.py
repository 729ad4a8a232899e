"""Tests for the sequential d-separation oracles and the certificate checker."""

import random

import pytest
from hypothesis import given

from graph.dag import UnknownNodeError, parse_dag
from graph.generators import random_dag, random_query
from graph.paths import is_unblocked
from models.schemas import DSepQuery
from oracles.certificate import verify_certificate
from oracles.moral import d_separated_moral
from oracles.reach import d_separated_reach

from dstar_strategies import PROPERTY_SETTINGS, dags_with_query


def _query(a, b, c=()):
    return DSepQuery(a_set=frozenset(a), b_set=frozenset(b), c_set=frozenset(c))


EXAMPLES = [
    ("edge a m\nedge m b\n", ({"a"}, {"b"}, set()), False),
    ("edge a m\nedge m b\n", ({"a"}, {"b"}, {"m"}), True),
    ("edge m a\nedge m b\n", ({"a"}, {"b"}, {"m"}), True),
    ("edge a v\nedge b v\n", ({"a"}, {"b"}, set()), True),
    ("edge a v\nedge b v\n", ({"a"}, {"b"}, {"v"}), False),
    ("edge a v\nedge b v\nedge v d\n", ({"a"}, {"b"}, {"d"}), False),
    ("node a\nnode b\n", ({"a"}, {"b"}, set()), True),
]


@pytest.mark.parametrize("text,sets,separated", EXAMPLES)
def test_oracles_on_textbook_cases(text, sets, separated):
    g = parse_dag(text)
    q = _query(*sets)
    assert d_separated_reach(g, q).separated is separated
    assert d_separated_moral(g, q).separated is separated


def test_case_study_dependent_with_witness(case_study, case_query):
    result = d_separated_reach(case_study, case_query)
    assert not result.separated
    assert result.witness_path[0] == "x1"
    assert result.witness_path[-1] == "y1"
    assert is_unblocked(case_study, result.witness_path, case_query.c_set)
    assert not d_separated_moral(case_study, case_query).separated


def test_oracles_reject_unknown_nodes():
    g = parse_dag("edge a b\n")
    q = _query({"a"}, {"b"}, {"ghost"})
    with pytest.raises(UnknownNodeError):
        d_separated_reach(g, q)
    with pytest.raises(UnknownNodeError):
        d_separated_moral(g, q)


@PROPERTY_SETTINGS
@given(dags_with_query(max_nodes=9))
def test_oracles_agree_and_are_symmetric(instance):
    g, q = instance
    reach = d_separated_reach(g, q)
    assert reach.separated == d_separated_moral(g, q).separated
    assert reach.separated == d_separated_reach(g, q.swapped()).separated
    if not reach.separated:
        assert is_unblocked(g, reach.witness_path, q.c_set)


def test_oracles_agree_on_random_set_queries():
    """Multi-node A and B; also checks decomposition over B."""
    rng = random.Random(5)
    for _ in range(1000):
        g = random_dag(rng.randint(2, 10), 0.3, rng)
        q = random_query(g, rng, max_side=3, max_c=3)
        separated = d_separated_reach(g, q).separated
        assert separated == d_separated_moral(g, q).separated
        per_b = [d_separated_reach(g, _query(q.a_set, {b}, q.c_set)).separated for b in q.b_set]
        assert separated == all(per_b)


def test_certificate_accepts_collider_module():
    g = parse_dag("edge a v\nedge b v\nedge v d\n")
    assert verify_certificate(g, [("a", "v"), ("b", "v"), ("v", "d")], "a", "b", {"d"})


def test_certificate_rejections():
    g = parse_dag("edge a v\nedge b v\nedge v d\nnode e\n")
    q = _query({"a"}, {"b"}, {"d"})
    # missing link to d: collider stays closed
    assert not verify_certificate(g, [("a", "v"), ("b", "v")], "a", "b", set())
    # edge not in the graph
    assert not verify_certificate(g, [("a", "v"), ("v", "b")], "a", "b", set())
    # z outside the module
    assert not verify_certificate(g, [("a", "v"), ("b", "v")], "a", "b", {"d"})
    # endpoints swapped against the query
    assert not verify_certificate(g, [("a", "v"), ("b", "v"), ("v", "d")], "b", "a", {"d"}, q)
    assert not verify_certificate(g, [], "a", "b", set())
