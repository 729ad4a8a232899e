from config import BITS_PER_MESSAGE
from engine.trace import channel_key
from graph.dag import Dag, ancestral_graph
from models.schemas import DSepQuery, EventKind, ExecutionTrace, MessageAccount


def account_messages(trace: ExecutionTrace, g: Dag, q: DSepQuery) -> MessageAccount:
    """Color-message totals and whether every message stayed inside the ancestral graph."""
    counts = trace.per_channel_counts
    total = sum(counts.values())

    an = ancestral_graph(g, q.members)
    allowed = {channel_key(u, v) for u, v in an.edges}
    confined = all(key in allowed for key in counts)
    for event in trace.events:
        if event.kind in (EventKind.SEND, EventKind.DELIVER):
            if not (an.has_edge(event.src, event.dst) or an.has_edge(event.dst, event.src)):
                confined = False
                break

    return MessageAccount(
        total_messages=total,
        total_bits=BITS_PER_MESSAGE * total,
        max_per_channel=max(counts.values(), default=0),
        confinement_ok=confined,
        control_messages=trace.control_messages,
    )
