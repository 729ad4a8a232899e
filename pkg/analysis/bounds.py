"""Clash-time bounds for dependent runs, computed with the run's own alpha + beta."""

import logging

from config import MODULE_NODE_CAP
from graph.dag import Dag
from graph.paths import path_metrics
from models.schemas import BoundReport, Decision, DSepQuery, ExecutionTrace, SimulationParams

from .modules import NotApplicableError, enumerate_refutation_modules

# float slack for comparisons between sums of sampled delays and products
TOLERANCE = 1e-9


def check_bounds(
    g: Dag,
    q: DSepQuery,
    trace: ExecutionTrace,
    params: SimulationParams,
    max_nodes: int = MODULE_NODE_CAP,
) -> BoundReport:
    """Compare the measured clash time against the path, module and longest-path bounds."""
    verdict = trace.verdict
    if verdict.decision != Decision.DEPENDENT:
        raise NotApplicableError("bounds apply to dependent runs only")

    hop = params.hop
    metrics = path_metrics(g, q)
    modules = enumerate_refutation_modules(g, q, max_nodes)
    minimal = min(modules, key=lambda m: (m.size, m.edges))

    path_bound = hop * (metrics.l_an_d + metrics.min_l_ij)
    module_bound = hop * min(m.l_d + m.p_len for m in modules)
    longest_bound = hop * (metrics.l_an_d + metrics.l_an)
    measured = verdict.clash_time

    report = BoundReport(
        measured_clash_time=measured,
        alpha=params.alpha,
        beta=params.beta,
        path_bound=path_bound,
        module_bound=module_bound,
        longest_path_bound=longest_bound,
        minimal_module_edges=minimal.size,
        within_path_bound=measured <= path_bound + TOLERANCE,
        within_module_bound=measured <= module_bound + TOLERANCE,
        module_bound_tighter=module_bound <= path_bound + TOLERANCE,
    )
    if not report.satisfied:
        logging.warning("Bound check failed: %s", report.model_dump())
    return report
