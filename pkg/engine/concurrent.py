"""
Real-asynchrony D* runner: one asyncio task per node.

Each node owns its state and reads a single FIFO inbox, so messages from
one sender arrive in send order. An observer counts messages in flight;
the run ends at the first clash (stop event, all tasks cancelled) or when
the in-flight count drops to zero.
"""

import asyncio
import logging
import random
from dataclasses import replace
from typing import Dict, Optional, Tuple

from config import CONCURRENT_JITTER_SECONDS, CONCURRENT_TIMEOUT_SECONDS
from graph.dag import Dag, validate_query
from models.schemas import (
    Color,
    Decision,
    DSepQuery,
    ExecutionTrace,
    InitMode,
    SimulationParams,
    Verdict,
)

from .cug import ColorMessage, NodeRole, NodeState, initial_state, on_receive
from .simulator import seed_color
from .trace import TraceRecorder


class _Network:
    def __init__(self, g: Dag, q: DSepQuery, params: SimulationParams, jitter: float):
        self.g = g
        self.q = q
        self.rng = random.Random(params.seed)
        self.jitter = jitter
        self.inboxes: Dict[str, asyncio.Queue] = {v: asyncio.Queue() for v in g.nodes}
        self.states: Dict[str, NodeState] = {
            v: initial_state(v, g.parents(v), g.children(v)) for v in g.nodes
        }
        self.roles = {v: NodeRole.IN_C if v in q.c_set else NodeRole.NOT_IN_C for v in g.nodes}
        self.recorder = TraceRecorder(g.nodes)
        self.in_flight = 0
        self.quiet = asyncio.Event()
        self.stop = asyncio.Event()
        self.verdict: Optional[Verdict] = None
        self.loop = asyncio.get_running_loop()
        self.t0 = self.loop.time()

    def now(self) -> float:
        return self.loop.time() - self.t0

    def send(self, msg: ColorMessage) -> None:
        self.recorder.send(self.now(), msg)
        self.in_flight += 1
        self.inboxes[msg.dst].put_nowait(msg)

    def activate(self) -> None:
        seeded = [v for v in self.g.nodes if v in self.q.members]
        for node in seeded:
            color = seed_color(node, self.q)
            self.states[node] = replace(self.states[node], color=color)
            self.recorder.color_change(0.0, node, color, snapshot=False)
        self.recorder.snapshot(0.0, len(self.recorder.events) - 1)
        for node in seeded:
            for parent in sorted(self.g.parents(node)):
                self.send(ColorMessage(self.states[node].color, node, parent))

    async def worker(self, node: str) -> None:
        inbox = self.inboxes[node]
        while not self.stop.is_set():
            msg = await inbox.get()
            if self.jitter > 0:
                await asyncio.sleep(self.rng.uniform(0, self.jitter))
            if self.stop.is_set():
                return
            self.handle(msg)

    def handle(self, msg: ColorMessage) -> None:
        # runs between awaits, so one message is processed atomically
        t = self.now()
        self.recorder.deliver(t, msg)
        before = self.states[msg.dst]
        after, out = on_receive(before, msg, self.roles[msg.dst])
        self.states[msg.dst] = after
        self.in_flight -= 1
        if after.color == Color.CLASH:
            self.recorder.clash(t, msg.dst, msg.src)
            self.verdict = Verdict(decision=Decision.DEPENDENT, clash_node=msg.dst, clash_time=t)
            self.stop.set()
            return
        if after.color != before.color:
            self.recorder.color_change(t, msg.dst, after.color)
        for reply in out:
            self.send(reply)
        if self.in_flight == 0:
            self.quiet.set()


async def run_query_concurrent_async(
    g: Dag,
    q: DSepQuery,
    params: Optional[SimulationParams] = None,
    jitter: float = CONCURRENT_JITTER_SECONDS,
    timeout: float = CONCURRENT_TIMEOUT_SECONDS,
) -> Tuple[Verdict, ExecutionTrace]:
    params = params or SimulationParams()
    validate_query(g, q)
    if params.init_mode == InitMode.CENTRAL:
        raise ValueError("the concurrent runner supports self-activation only")

    net = _Network(g, q, params, jitter)
    tasks = [asyncio.create_task(net.worker(v), name=f"dstar-{v}") for v in g.nodes]
    try:
        net.activate()
        if net.in_flight == 0:
            net.quiet.set()
        waiters = [asyncio.create_task(net.quiet.wait()), asyncio.create_task(net.stop.wait())]
        done, pending = await asyncio.wait(
            waiters, timeout=timeout, return_when=asyncio.FIRST_COMPLETED
        )
        for waiter in pending:
            waiter.cancel()
        if not done:
            raise TimeoutError(f"concurrent run did not settle within {timeout}s")
    finally:
        net.stop.set()
        for task in tasks:
            task.cancel()
        await asyncio.gather(*tasks, return_exceptions=True)

    if net.verdict is None:
        net.verdict = Verdict(
            decision=Decision.INDEPENDENT,
            equilibrium_time=net.recorder.last_color_change,
            quiescence_time=net.recorder.end_time,
        )
    logging.info(
        "Concurrent run finished: %s, %d color messages",
        net.verdict.decision.value, sum(net.recorder.per_channel_counts.values()),
    )
    return net.verdict, net.recorder.build(net.verdict)


def run_query_concurrent(
    g: Dag, q: DSepQuery, params: Optional[SimulationParams] = None, **kwargs
) -> Tuple[Verdict, ExecutionTrace]:
    """Blocking wrapper around `run_query_concurrent_async`."""
    return asyncio.run(run_query_concurrent_async(g, q, params, **kwargs))
