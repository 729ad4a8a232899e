"""Shared input loading and error payloads for the command tools."""

import json
import os
from typing import Any, Dict, Tuple

from pydantic import ValidationError

from graph.dag import Dag, DagError, load_dag, validate_query
from models.schemas import DSepQuery, RunConfig


class InputError(Exception):
    """Bad graph file or query; carries a suggestion for the user."""

    def __init__(self, message: str, suggestion: str):
        super().__init__(message)
        self.suggestion = suggestion


def error_result(message: str, suggestion: str, recoverable: bool = True) -> Dict[str, Any]:
    return {
        "status": "error",
        "exit_code": 1,
        "error_message": message,
        "recoverable": recoverable,
        "suggestion": suggestion,
    }


def load_inputs(config: RunConfig) -> Tuple[Dag, DSepQuery]:
    """Graph and validated query for a run, or `InputError`."""
    try:
        g = load_dag(config.graph_path)
    except OSError as exc:
        raise InputError(f"Cannot read graph file: {exc}", "Check the --graph path.") from exc
    except UnicodeDecodeError as exc:
        raise InputError(
            f"Graph file is not UTF-8 text: {config.graph_path}",
            "Save the graph file as UTF-8 text.",
        ) from exc
    except DagError as exc:
        raise InputError(f"Invalid graph file: {exc}", "Fix the graph file and retry.") from exc
    try:
        q = config.query()
        validate_query(g, q)
    except (ValidationError, DagError) as exc:
        raise InputError(
            f"Invalid query: {exc}",
            "A and B must be nonempty, A, B and C disjoint, and every node must exist in the graph.",
        ) from exc
    return g, q


def write_json(path: str, payload: Dict[str, Any]) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    return path
