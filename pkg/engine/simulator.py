"""
Seeded discrete-event simulator for D*.

Every message on a channel direction is handled at
`max(send time + channel delay + processing delay, previous handling time
on that direction)`, so channels stay FIFO and one hop never costs more
than alpha + beta. Events with equal times run in enqueue order.

Centralized initialization runs an echo (broadcast of INITIALIZE plus
convergecast of ACK) over the undirected skeleton, then pushes START down
the resulting spanning tree. Color messages that reach a node before its
START wait in a buffer.
"""

import heapq
import logging
import random
from dataclasses import replace
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from graph.dag import Dag, DagError, UnknownNodeError, is_connected_skeleton, validate_query
from models.schemas import (
    Color,
    ControlPhase,
    Decision,
    DSepQuery,
    ExecutionTrace,
    InitMode,
    SchedulePolicy,
    SimulationParams,
    Verdict,
)

from .cug import ColorMessage, NodeRole, NodeState, initial_state, on_receive
from .trace import TraceRecorder

COLOR = "color"
INITIALIZE = "INITIALIZE"
ACK = "ACK"
START = "START"


class DisconnectedGraphError(DagError):
    def __init__(self, source: str, unreachable: List[str]):
        super().__init__(
            f"centralized initialization from '{source}' cannot reach: {', '.join(unreachable)}"
        )
        self.unreachable = unreachable


def seed_color(node: str, q: DSepQuery) -> Color:
    """Color a node assumes on activation; ∅ for nodes outside A ∪ B ∪ C."""
    if node in q.a_set:
        return Color.GREEN
    if node in q.b_set:
        return Color.RED
    if node in q.c_set:
        return Color.WHITE
    return Color.NONE


class _Simulation:
    def __init__(self, g: Dag, q: DSepQuery, params: SimulationParams, colors: bool = True):
        self.g = g
        self.q = q
        self.params = params
        self.colors = colors
        self.rng = random.Random(params.seed)
        self.queue: List[tuple] = []
        self.seq = 0
        self.channel_clock: Dict[Tuple[str, str], float] = {}
        self.recorder = TraceRecorder(g.nodes)
        self.states: Dict[str, NodeState] = {
            v: initial_state(v, g.parents(v), g.children(v)) for v in g.nodes
        }
        self.roles = {v: NodeRole.IN_C if v in q.c_set else NodeRole.NOT_IN_C for v in g.nodes}
        self.verdict: Optional[Verdict] = None

        # centralized mode
        self.central = params.init_mode == InitMode.CENTRAL
        self.started: Set[str] = set()
        self.buffers: Dict[str, List[ColorMessage]] = {}
        self.tree_parent: Dict[str, Optional[str]] = {}
        self.tree_children: Dict[str, Set[str]] = {v: set() for v in g.nodes}
        self.heard: Dict[str, int] = {v: 0 for v in g.nodes}

    def _channel_delay(self) -> float:
        policy = self.params.schedule_policy
        if policy == SchedulePolicy.FIFO:
            return 0.0
        if policy == SchedulePolicy.ADVERSARIAL:
            return self.params.beta
        return self.params.beta * (1.0 - self.rng.random())

    def _processing_delay(self) -> float:
        # processing is never free, so fifo hops still advance by alpha
        if self.params.schedule_policy == SchedulePolicy.RANDOM:
            return self.params.alpha * (1.0 - self.rng.random())
        return self.params.alpha

    def _post(self, t: float, kind: str, src: str, dst: str, payload=None) -> None:
        due = t + self._channel_delay() + self._processing_delay()
        channel = (src, dst)
        due = max(due, self.channel_clock.get(channel, 0.0))
        self.channel_clock[channel] = due
        heapq.heappush(self.queue, (due, self.seq, kind, src, dst, payload))
        self.seq += 1

    def _send_color(self, t: float, msg: ColorMessage) -> None:
        self.recorder.send(t, msg)
        self._post(t, COLOR, msg.src, msg.dst, msg.payload)

    def _send_control(self, t: float, label: str, src: str, dst: str) -> None:
        self.recorder.control_messages += 1
        self._post(t, label, src, dst)

    # -- activation ------------------------------------------------------

    def _self_activate_all(self) -> None:
        seeded = [v for v in self.g.nodes if v in self.q.members]
        for node in seeded:
            color = seed_color(node, self.q)
            self.states[node] = replace(self.states[node], color=color)
            self.recorder.color_change(0.0, node, color, snapshot=False)
        self.recorder.snapshot(0.0, len(self.recorder.events) - 1)
        for node in seeded:
            self._broadcast_seed(0.0, node)

    def _activate(self, t: float, node: str) -> None:
        color = seed_color(node, self.q)
        if color == Color.NONE:
            return
        self.states[node] = replace(self.states[node], color=color)
        self.recorder.color_change(t, node, color)
        self._broadcast_seed(t, node)

    def _broadcast_seed(self, t: float, node: str) -> None:
        color = self.states[node].color
        for parent in sorted(self.g.parents(node)):
            self._send_color(t, ColorMessage(color, node, parent))

    # -- color messages --------------------------------------------------

    def _handle_color(self, t: float, msg: ColorMessage) -> bool:
        """Process one color message; True when it produced the clash."""
        node = msg.dst
        before = self.states[node]
        after, out = on_receive(before, msg, self.roles[node])
        self.states[node] = after
        if after.color == Color.CLASH:
            # the clashing step's outputs are dropped: the run halts here
            self.recorder.clash(t, node, msg.src)
            self.verdict = Verdict(decision=Decision.DEPENDENT, clash_node=node, clash_time=t)
            return True
        if after.color != before.color:
            self.recorder.color_change(t, node, after.color)
        for reply in out:
            self._send_color(t, reply)
        return False

    # -- centralized initialization --------------------------------------

    def _begin_echo(self, source: str) -> None:
        self.tree_parent[source] = None
        neighbors = sorted(self.g.neighbors(source))
        if not neighbors:
            self._start(0.0, source)
            return
        for nbr in neighbors:
            self._send_control(0.0, INITIALIZE, source, nbr)

    def _handle_control(self, t: float, label: str, src: str, dst: str) -> bool:
        self.recorder.control(t, src, dst, label)
        if label == INITIALIZE:
            if dst not in self.tree_parent:
                self.tree_parent[dst] = src
                for nbr in sorted(self.g.neighbors(dst) - {src}):
                    self._send_control(t, INITIALIZE, dst, nbr)
            self.heard[dst] += 1
            return self._maybe_echo(t, dst)
        if label == ACK:
            self.tree_children[dst].add(src)
            self.heard[dst] += 1
            return self._maybe_echo(t, dst)
        return self._start(t, dst)

    def _maybe_echo(self, t: float, node: str) -> bool:
        if self.heard[node] < len(self.g.neighbors(node)):
            return False
        parent = self.tree_parent[node]
        if parent is None:
            return self._start(t, node)
        self._send_control(t, ACK, node, parent)
        return False

    def _start(self, t: float, node: str) -> bool:
        self.started.add(node)
        self.recorder.start_times[node] = t
        for child in sorted(self.tree_children[node]):
            self._send_control(t, START, node, child)
        if not self.colors:
            return False
        self._activate(t, node)
        for msg in self.buffers.pop(node, []):
            if self._handle_color(t, msg):
                return True
        return False

    # -- main loop -------------------------------------------------------

    def run(self) -> None:
        if self.central:
            self._begin_echo(self.params.source)
        elif self.colors:
            self._self_activate_all()

        while self.queue and self.verdict is None:
            t, _, kind, src, dst, payload = heapq.heappop(self.queue)
            if kind == COLOR:
                msg = ColorMessage(payload, src, dst)
                self.recorder.deliver(t, msg)
                if self.central and dst not in self.started:
                    self.buffers.setdefault(dst, []).append(msg)
                    continue
                self._handle_color(t, msg)
            else:
                self._handle_control(t, kind, src, dst)

        if self.verdict is None:
            self.verdict = Verdict(
                decision=Decision.INDEPENDENT,
                equilibrium_time=self.recorder.last_color_change,
                quiescence_time=self.recorder.end_time,
            )


def _check_central(g: Dag, source: str) -> None:
    if source not in g:
        raise UnknownNodeError(source)
    if not is_connected_skeleton(g):
        component = nx.node_connected_component(g.skeleton(), source)
        raise DisconnectedGraphError(source, sorted(set(g.nodes) - component))


def centralized_initialize(
    g: Dag, q: DSepQuery, source: str, params: Optional[SimulationParams] = None
) -> ControlPhase:
    """Run only the INITIALIZE/ACK/START phase and report when each node starts."""
    validate_query(g, q)
    _check_central(g, source)
    base = params or SimulationParams()
    params = base.model_copy(update={"init_mode": InitMode.CENTRAL, "source": source})
    sim = _Simulation(g, q, params, colors=False)
    sim.run()
    return ControlPhase(
        events=sim.recorder.events,
        start_times=dict(sorted(sim.recorder.start_times.items())),
        tree_parent=dict(sorted(sim.tree_parent.items())),
        control_messages=sim.recorder.control_messages,
    )


def run_query(
    g: Dag, q: DSepQuery, params: Optional[SimulationParams] = None
) -> Tuple[Verdict, ExecutionTrace]:
    """Simulate D* on (g, q) and return the verdict with the full trace."""
    params = params or SimulationParams()
    validate_query(g, q)
    if params.init_mode == InitMode.CENTRAL:
        _check_central(g, params.source)

    sim = _Simulation(g, q, params)
    sim.run()
    trace = sim.recorder.build(sim.verdict)
    logging.debug(
        "run_query seed=%s policy=%s -> %s after %d events",
        params.seed, params.schedule_policy.value, sim.verdict.decision.value, len(trace.events),
    )
    return sim.verdict, trace
