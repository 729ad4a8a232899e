"""Active-path reachability oracle for d-separation.

Nodes with a descendant in C (C included) open as colliders. A breadth-first
search over (node, arrival direction) states starting from A finds every
node joined to A by an active trail; A and B are separated iff none of B is
found. Linear in the number of edges.
"""

from collections import deque
from typing import Dict, List, Optional, Tuple

from graph.dag import Dag, validate_query
from models.schemas import DSepQuery, OracleResult

# arrival directions
FROM_CHILD = 0
FROM_PARENT = 1

State = Tuple[str, int]


def _open_colliders(g: Dag, c_set) -> set:
    opened = set()
    frontier = list(c_set)
    while frontier:
        node = frontier.pop()
        if node in opened:
            continue
        opened.add(node)
        frontier.extend(g.parents(node))
    return opened


def d_separated_reach(g: Dag, q: DSepQuery) -> OracleResult:
    validate_query(g, q)
    c = q.c_set
    opened = _open_colliders(g, c)

    came_from: Dict[State, Optional[State]] = {}
    queue: deque = deque()
    for a in sorted(q.a_set):
        # a start node behaves like a non-collider: every neighbor is open
        state = (a, FROM_CHILD)
        came_from[state] = None
        queue.append(state)

    while queue:
        state = queue.popleft()
        node, arrival = state
        if node in q.b_set:
            return OracleResult(separated=False, witness_path=_walk_back(came_from, state))

        nxt: List[State] = []
        if arrival == FROM_CHILD and node not in c:
            nxt.extend((p, FROM_CHILD) for p in sorted(g.parents(node)))
            nxt.extend((ch, FROM_PARENT) for ch in sorted(g.children(node)))
        elif arrival == FROM_PARENT:
            if node not in c:
                nxt.extend((ch, FROM_PARENT) for ch in sorted(g.children(node)))
            if node in opened:
                nxt.extend((p, FROM_CHILD) for p in sorted(g.parents(node)))

        for candidate in nxt:
            if candidate not in came_from:
                came_from[candidate] = state
                queue.append(candidate)

    return OracleResult(separated=True)


def _walk_back(came_from: Dict[State, Optional[State]], state: State) -> List[str]:
    path = []
    cursor: Optional[State] = state
    while cursor is not None:
        path.append(cursor[0])
        cursor = came_from[cursor]
    path.reverse()
    return path
