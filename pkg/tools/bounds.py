"""
Bounds command

Runs the simulator on a dependent query and compares the measured clash
time with the analytic bounds. Independent queries are reported as not
applicable, which is not an error.
"""

import logging
from typing import Any, Dict, Optional

from analysis.bounds import check_bounds
from engine.simulator import run_query
from graph.dag import Dag, DagError
from graph.paths import GraphTooLargeError
from models.schemas import BoundReport, Decision, DSepQuery, ExecutionTrace, RunConfig, SimulationParams
from utils.formatters import format_bound_report

from .inputs import InputError, error_result, load_inputs, write_json

NOT_APPLICABLE_LINE = "NOT APPLICABLE (independent)"


def bound_report(
    g: Dag,
    q: DSepQuery,
    params: SimulationParams,
    trace: Optional[ExecutionTrace] = None,
) -> Optional[BoundReport]:
    """Bound report for a dependent run, None for an independent one.

    Simulates first when no virtual-time trace is given.
    """
    if trace is None:
        _, trace = run_query(g, q, params)
    if trace.verdict.decision != Decision.DEPENDENT:
        return None
    return check_bounds(g, q, trace, params)


def bound_payload(report: Optional[BoundReport]) -> Dict[str, Any]:
    if report is None:
        return {"status": "not_applicable", "verdict": "INDEPENDENT"}
    return {"status": "success", **report.model_dump(), "satisfied": report.satisfied}


def cmd_bounds(config: RunConfig) -> Dict[str, Any]:
    """Bound report for one query as a status dict (same shape as `cmd_query`)."""
    try:
        g, q = load_inputs(config)
    except InputError as exc:
        return error_result(str(exc), exc.suggestion)

    try:
        report = bound_report(g, q, config.params)
    except GraphTooLargeError as exc:
        return error_result(str(exc), "Raise DSTAR_MODULE_CAP or DSTAR_LONGEST_PATH_CAP explicitly.")
    except DagError as exc:
        return error_result(str(exc), "Centralized initialization needs a known source and a connected graph.")

    payload = bound_payload(report)
    try:
        if config.bounds_path:
            write_json(config.bounds_path, payload)
    except OSError as exc:
        return error_result(f"Cannot write bound report: {exc}", "Check that --check-bounds is writable.")

    if report is None:
        logging.info("Bounds not applicable: query on %s is independent", config.graph_path)
        return {"status": "not_applicable", "exit_code": 0, "lines": [NOT_APPLICABLE_LINE], "report": payload}

    logging.info("Bounds for %s: satisfied=%s", config.graph_path, report.satisfied)
    return {"status": "success", "exit_code": 0, "lines": format_bound_report(report), "report": payload}
