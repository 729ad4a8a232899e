"""D* engine: color grammar, simulated and concurrent runners, trace views."""

from .cug import ColorMessage, NodeRole, NodeState, apply_cug, fold_messages, initial_state, on_receive
from .simulator import DisconnectedGraphError, centralized_initialize, run_query, seed_color
from .concurrent import run_query_concurrent, run_query_concurrent_async
from .trace import (
    TraceRecorder,
    channel_key,
    color_histories,
    quiescence_report,
    snapshot_at,
    snapshot_to_dot,
    trace_to_dict,
    trace_to_json,
    write_snapshot_dots,
    write_trace,
)

__all__ = [
    "ColorMessage",
    "NodeRole",
    "NodeState",
    "apply_cug",
    "fold_messages",
    "initial_state",
    "on_receive",
    "DisconnectedGraphError",
    "centralized_initialize",
    "run_query",
    "seed_color",
    "run_query_concurrent",
    "run_query_concurrent_async",
    "TraceRecorder",
    "channel_key",
    "color_histories",
    "quiescence_report",
    "snapshot_at",
    "snapshot_to_dot",
    "trace_to_dict",
    "trace_to_json",
    "write_snapshot_dots",
    "write_trace",
]
