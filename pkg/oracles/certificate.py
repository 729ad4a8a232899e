"""Deterministic check of a dependence certificate (module edges plus x, y, Z*)."""

import logging
from typing import Iterable, Optional, Tuple

from pydantic import ValidationError

from graph.dag import DagError, Dag, is_connected_skeleton
from models.schemas import DSepQuery

from .reach import d_separated_reach


def verify_certificate(
    g: Dag,
    module_edges: Iterable[Tuple[str, str]],
    x: str,
    y: str,
    z_subset: Iterable[str],
    q: Optional[DSepQuery] = None,
) -> bool:
    """True iff the edges form a connected subgraph of `g` in which x and y are
    dependent given `z_subset`.

    With `q`, x must come from A, y from B and `z_subset` from C. Malformed
    certificates return False.
    """
    edges = [tuple(e) for e in module_edges]
    z = frozenset(z_subset)
    if not edges or any(not g.has_edge(u, v) for u, v in edges):
        return False
    if q is not None and (x not in q.a_set or y not in q.b_set or not z <= q.c_set):
        return False

    try:
        module = g.edge_subgraph(edges)
        if x not in module or y not in module or not all(v in module for v in z):
            return False
        if not is_connected_skeleton(module):
            return False
        sub_query = DSepQuery(a_set=frozenset([x]), b_set=frozenset([y]), c_set=z)
        return not d_separated_reach(module, sub_query).separated
    except (DagError, ValidationError) as exc:
        logging.debug("Certificate rejected: %s", exc)
        return False
