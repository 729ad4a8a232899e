"""
Query command

Loads a graph file, poses (A ⟂ B | C) to the selected engine and writes
any requested artifacts (trace JSON, snapshot DOT files, bound report).
Results come back as a status dict; `exit_code` follows the CLI protocol:
0 success, 1 input error, 2 `--expect` mismatch.
"""

import logging
from typing import Any, Dict

from analysis.accounting import account_messages
from engine.trace import write_snapshot_dots, write_trace
from graph.dag import DagError
from graph.paths import GraphTooLargeError
from models.schemas import Decision, InitMode, RunConfig
from services.engine_provider import ENGINE_NAMES, get_engine
from utils.formatters import format_outcome

from .bounds import bound_payload, bound_report
from .inputs import InputError, error_result, load_inputs, write_json

EXPECT_TO_DECISION = {"dep": Decision.DEPENDENT, "indep": Decision.INDEPENDENT}


def cmd_query(config: RunConfig) -> Dict[str, Any]:
    """Run one query and report the verdict.

    Returns:
        {
            "status": "success" | "mismatch" | "error",
            "exit_code": 0 | 2 | 1,
            "decision": "DEPENDENT" | "INDEPENDENT",
            "lines": [...],          # stdout report, verdict first
            "artifacts": {...},      # paths written
        }
    """
    try:
        g, q = load_inputs(config)
    except InputError as exc:
        return error_result(str(exc), exc.suggestion)
    try:
        run = get_engine(config.engine)
    except ValueError as exc:
        return error_result(str(exc), f"Pick an engine from: {', '.join(ENGINE_NAMES)}.")
    if config.engine == "dstar-concurrent" and config.params.init_mode == InitMode.CENTRAL:
        return error_result(
            "--init central is not supported by the dstar-concurrent engine",
            "Use --engine dstar for centralized initialization.",
        )

    try:
        outcome = run(g, q, config.params)
    except DagError as exc:
        return error_result(str(exc), "Centralized initialization needs a known source and a connected graph.")
    except TimeoutError as exc:
        return error_result(str(exc), "Raise DSTAR_CONCURRENT_TIMEOUT or use --engine dstar.")
    account = account_messages(outcome.trace, g, q) if outcome.trace is not None else None
    artifacts: Dict[str, Any] = {}

    try:
        if outcome.trace is not None and config.trace_path:
            artifacts["trace"] = write_trace(outcome.trace, config.trace_path)
        if outcome.trace is not None and config.snapshot_dir:
            artifacts["snapshots"] = write_snapshot_dots(outcome.trace, g, q, config.snapshot_dir)
        if config.bounds_path:
            # only the simulator's trace is in virtual time
            trace = outcome.trace if outcome.engine == "dstar" else None
            report = bound_report(g, q, config.params, trace)
            artifacts["bounds"] = write_json(config.bounds_path, bound_payload(report))
    except OSError as exc:
        return error_result(f"Cannot write artifact: {exc}", "Check that output paths are writable.")
    except GraphTooLargeError as exc:
        return error_result(str(exc), "Raise DSTAR_MODULE_CAP or DSTAR_LONGEST_PATH_CAP explicitly.")

    result: Dict[str, Any] = {
        "status": "success",
        "exit_code": 0,
        "decision": outcome.decision.value.upper(),
        "lines": format_outcome(outcome, account),
        "artifacts": artifacts,
    }
    if account is not None:
        result["messages"] = account.model_dump()

    if config.expect is not None and EXPECT_TO_DECISION[config.expect] != outcome.decision:
        logging.warning("Expectation mismatch: expected %s, got %s", config.expect, outcome.decision.value)
        result["status"] = "mismatch"
        result["exit_code"] = 2
        result["error_message"] = f"expected {config.expect}, got {outcome.decision.value}"

    logging.info("Query on %s finished: %s", config.graph_path, result["decision"])
    return result
