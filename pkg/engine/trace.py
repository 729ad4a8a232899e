"""
Trace recording and post-run views.

`TraceRecorder` is shared by the discrete-event simulator and the asyncio
runner so both emit the same event vocabulary. The remaining helpers read a
finished `ExecutionTrace`: configuration lookup, color histories, the
post-equilibrium check, JSON export and per-snapshot DOT files.
"""

import json
import logging
import os
from collections import Counter
from typing import Dict, Iterable, List, Optional

import graphviz

from graph.dag import Dag
from models.schemas import (
    Color,
    Decision,
    DSepQuery,
    EventKind,
    ExecutionTrace,
    QuiescenceReport,
    SimulationParams,
    Snapshot,
    TraceEvent,
    Verdict,
)

from .cug import ColorMessage

# Deliveries allowed on one channel direction once colors have settled.
POST_EQUILIBRIUM_DELIVERIES = 2


def channel_key(u: str, v: str) -> str:
    """Undirected channel name, 'u v' with u < v."""
    return f"{u} {v}" if u < v else f"{v} {u}"


class TraceRecorder:
    """Append-only log of one run, plus the live color map used for snapshots."""

    def __init__(self, nodes: Iterable[str]):
        self.events: List[TraceEvent] = []
        self.snapshots: List[Snapshot] = []
        self.colors: Dict[str, Color] = {v: Color.NONE for v in nodes}
        self.per_channel_counts: Dict[str, int] = {}
        self.control_messages = 0
        self.start_times: Dict[str, float] = {}
        self.last_color_change = 0.0
        self.end_time = 0.0

    def _log(self, t: float, kind: EventKind, src=None, dst=None, payload=None) -> int:
        step = len(self.events)
        # model_construct skips validation on the hot path; fields are built here
        self.events.append(
            TraceEvent.model_construct(t=t, step=step, kind=kind, src=src, dst=dst, payload=payload)
        )
        if t > self.end_time:
            self.end_time = t
        return step

    def send(self, t: float, msg: ColorMessage) -> None:
        self._log(t, EventKind.SEND, msg.src, msg.dst, msg.payload.value)
        key = channel_key(msg.src, msg.dst)
        self.per_channel_counts[key] = self.per_channel_counts.get(key, 0) + 1

    def deliver(self, t: float, msg: ColorMessage) -> None:
        self._log(t, EventKind.DELIVER, msg.src, msg.dst, msg.payload.value)

    def control(self, t: float, src: str, dst: str, label: str) -> None:
        self._log(t, EventKind.CONTROL, src, dst, label)
        self.control_messages += 1

    def color_change(self, t: float, node: str, color: Color, snapshot: bool = True) -> int:
        step = self._log(t, EventKind.COLOR_CHANGE, node, None, color.value)
        self.colors[node] = color
        self.last_color_change = t
        if snapshot:
            self.snapshot(t, step)
        return step

    def clash(self, t: float, node: str, transmitter: str) -> None:
        step = self._log(t, EventKind.CLASH, node, transmitter, Color.CLASH.value)
        self.colors[node] = Color.CLASH
        self.snapshot(t, step)

    def snapshot(self, t: float, step: int) -> None:
        """One snapshot per time-cut; a later change at the same `t` replaces it."""
        snap = Snapshot.model_construct(t=t, step=step, colors=dict(self.colors))
        if self.snapshots and self.snapshots[-1].t == t:
            self.snapshots[-1] = snap
        else:
            self.snapshots.append(snap)

    def build(self, verdict: Verdict) -> ExecutionTrace:
        return ExecutionTrace.model_construct(
            events=self.events,
            snapshots=self.snapshots,
            per_channel_counts=dict(sorted(self.per_channel_counts.items())),
            control_messages=self.control_messages,
            start_times=dict(sorted(self.start_times.items())),
            end_time=self.end_time,
            verdict=verdict,
        )


def snapshot_at(trace: ExecutionTrace, t: float) -> Dict[str, Color]:
    """Colors as of the latest configuration change at or before `t`."""
    if t < 0 or t > trace.end_time:
        raise ValueError(f"time {t} outside [0, {trace.end_time}]")
    current: Optional[Snapshot] = None
    for snap in trace.snapshots:
        if snap.t > t:
            break
        current = snap
    if current is None:
        if not trace.snapshots:
            return {}
        return {v: Color.NONE for v in trace.snapshots[0].colors}
    return dict(current.colors)


def color_histories(trace: ExecutionTrace) -> Dict[str, List[Color]]:
    """Per-node color sequence starting from ∅, as driven by the event log."""
    nodes = trace.snapshots[0].colors if trace.snapshots else {}
    histories: Dict[str, List[Color]] = {v: [Color.NONE] for v in nodes}
    for event in trace.events:
        if event.kind == EventKind.COLOR_CHANGE or event.kind == EventKind.CLASH:
            histories.setdefault(event.src, [Color.NONE]).append(Color(event.payload))
    return histories


def quiescence_report(trace: ExecutionTrace, params: SimulationParams) -> QuiescenceReport:
    """Check how an independent run winds down after its last color change."""
    verdict = trace.verdict
    if verdict.decision != Decision.INDEPENDENT:
        raise ValueError("quiescence is only defined for independent runs")

    last_change = -1
    for event in trace.events:
        if event.kind == EventKind.COLOR_CHANGE:
            last_change = event.step

    after = Counter(
        (event.src, event.dst)
        for event in trace.events
        if event.kind == EventKind.DELIVER and event.step > last_change
    )
    late_change = any(
        event.kind in (EventKind.COLOR_CHANGE, EventKind.CLASH)
        and event.t > verdict.equilibrium_time
        for event in trace.events
    )
    latency = verdict.quiescence_time - verdict.equilibrium_time
    bound = 2 * params.hop
    worst = max(after.values(), default=0)
    return QuiescenceReport(
        equilibrium_time=verdict.equilibrium_time,
        quiescence_time=verdict.quiescence_time,
        termination_latency=latency,
        latency_bound=bound,
        max_deliveries_after_equilibrium=worst,
        color_change_after_equilibrium=late_change,
        ok=(worst <= POST_EQUILIBRIUM_DELIVERIES and not late_change and latency <= bound + 1e-9),
    )


def trace_to_dict(trace: ExecutionTrace) -> dict:
    verdict = trace.verdict
    doc: dict = {"verdict": verdict.decision.value.upper()}
    if verdict.decision == Decision.DEPENDENT:
        doc["clash"] = {"node": verdict.clash_node, "time": verdict.clash_time}
    else:
        doc["equilibrium_time"] = verdict.equilibrium_time
        doc["quiescence_time"] = verdict.quiescence_time
    doc["events"] = [
        {
            "t": e.t,
            "kind": EventKind(e.kind).value,
            "src": e.src,
            "dst": e.dst,
            "payload": e.payload,
        }
        for e in trace.events
    ]
    doc["per_channel_counts"] = dict(sorted(trace.per_channel_counts.items()))
    doc["control_messages"] = trace.control_messages
    doc["snapshots"] = [
        {"t": s.t, "step": s.step, "colors": {v: Color(c).value for v, c in sorted(s.colors.items())}}
        for s in trace.snapshots
    ]
    return doc


def trace_to_json(trace: ExecutionTrace) -> str:
    return json.dumps(trace_to_dict(trace), indent=2) + "\n"


def write_trace(trace: ExecutionTrace, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(trace_to_json(trace))
    logging.info("Trace written to %s (%d events)", path, len(trace.events))
    return path


_FILL = {Color.WHITE: "white", Color.GREEN: "green", Color.RED: "red"}


def snapshot_to_dot(g: Dag, snap: Snapshot, q: DSepQuery, name: str = "snapshot") -> str:
    """DOT text of one configuration: filled colors, clash double-circled, C child edges dashed."""
    dot = graphviz.Digraph(name=name)
    dot.attr(label=f"t={snap.t:g} step={snap.step}")
    for node in g.nodes:
        color = Color(snap.colors.get(node, Color.NONE))
        if color == Color.CLASH:
            dot.node(node, shape="doublecircle")
        elif color in _FILL:
            dot.node(node, style="filled", fillcolor=_FILL[color])
        else:
            dot.node(node)
    for parent, child in sorted(g.edges):
        if parent in q.c_set:
            dot.edge(parent, child, style="dashed")
        else:
            dot.edge(parent, child)
    return dot.source


def write_snapshot_dots(trace: ExecutionTrace, g: Dag, q: DSepQuery, directory: str) -> List[str]:
    """One `snapshot_XXXX.dot` per configuration, in trace order."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for index, snap in enumerate(trace.snapshots):
        path = os.path.join(directory, f"snapshot_{index:04d}.dot")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(snapshot_to_dot(g, snap, q, name=f"snapshot_{index:04d}"))
        paths.append(path)
    logging.info("Wrote %d snapshot DOT files to %s", len(paths), directory)
    return paths
