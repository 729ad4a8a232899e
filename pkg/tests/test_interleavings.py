"""Every FIFO-respecting delivery order on small DAGs reaches the oracle's verdict.

Node steps are driven directly through `on_receive`; reachable
configurations are memoized so each one is expanded once.
"""

from typing import Dict, Tuple

import pytest

from engine.cug import ColorMessage, NodeRole, initial_state, on_receive
from engine.simulator import seed_color
from graph.dag import parse_dag, serialize_dag
from graph.generators import all_labeled_dags, singleton_queries
from models.schemas import Color, DSepQuery
from oracles.reach import d_separated_reach

Direction = Tuple[str, str]


def _initial_configuration(g, q):
    states = {}
    queues: Dict[Direction, tuple] = {}
    for v in g.nodes:
        states[v] = initial_state(v, g.parents(v), g.children(v), color=seed_color(v, q))
    for v in g.nodes:
        if v in q.members:
            for parent in sorted(g.parents(v)):
                queues[(v, parent)] = queues.get((v, parent), ()) + (states[v].color,)
    return states, queues


def _explore(g, q) -> Tuple[bool, bool, int]:
    """(clash reachable, clash-free quiescence reachable, configurations seen)."""
    roles = {v: NodeRole.IN_C if v in q.c_set else NodeRole.NOT_IN_C for v in g.nodes}
    order = list(g.nodes)
    seen = set()
    stack = [_initial_configuration(g, q)]
    clash = quiet = False

    while stack:
        states, queues = stack.pop()
        key = (tuple(states[v] for v in order), tuple(sorted(queues.items())))
        if key in seen:
            continue
        seen.add(key)
        if not queues:
            quiet = True
            continue

        for direction, pending in queues.items():
            src, dst = direction
            after, out = on_receive(states[dst], ColorMessage(pending[0], src, dst), roles[dst])
            if after.color == Color.CLASH:
                # the run halts on the first clash
                clash = True
                continue
            next_states = {**states, dst: after}
            next_queues = dict(queues)
            if len(pending) > 1:
                next_queues[direction] = pending[1:]
            else:
                del next_queues[direction]
            for reply in out:
                link = (reply.src, reply.dst)
                next_queues[link] = next_queues.get(link, ()) + (reply.payload,)
            stack.append((next_states, next_queues))

    return clash, quiet, len(seen)


def _query(a, b, c=()):
    return DSepQuery(a_set=frozenset(a), b_set=frozenset(b), c_set=frozenset(c))


def test_open_chain_clashes_under_every_order():
    g = parse_dag("edge a m\nedge m b\n")
    clash, quiet, seen = _explore(g, _query({"a"}, {"b"}))
    assert clash
    assert not quiet
    assert seen > 1


def test_blocked_collider_never_clashes():
    g = parse_dag("edge a v\nedge b v\n")
    clash, quiet, _ = _explore(g, _query({"a"}, {"b"}))
    assert not clash
    assert quiet


@pytest.mark.parametrize("n", [3, pytest.param(4, marks=pytest.mark.slow)])
def test_every_delivery_order_matches_the_oracle(n):
    mismatches = []
    for g in all_labeled_dags(n):
        for q in singleton_queries(g):
            separated = d_separated_reach(g, q).separated
            clash, quiet, _ = _explore(g, q)
            # independent: no order clashes; dependent: every order clashes
            if clash == separated or quiet != separated:
                mismatches.append((serialize_dag(g), sorted(q.a_set), sorted(q.b_set), sorted(q.c_set)))
    assert mismatches == []
