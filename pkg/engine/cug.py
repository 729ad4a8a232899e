"""
Color Update Grammar and the per-node D* step.

A node's color only moves forward: ∅ → white → green | red → clash. The
grammar is total on (non-clash color) × (message color); `on_receive`
wraps it with the reply and broadcast rules.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Tuple

from models.schemas import MESSAGE_COLORS, Color


class NodeRole(str, Enum):
    IN_C = "in-C"
    NOT_IN_C = "not-in-C"


@dataclass(frozen=True, slots=True)
class ColorMessage:
    """One 2-bit color message on the wire."""

    payload: Color
    src: str
    dst: str

    def __post_init__(self):
        if self.payload not in MESSAGE_COLORS:
            raise ValueError(f"only white, green and red travel on channels, got {self.payload}")


@dataclass(frozen=True, slots=True)
class NodeState:
    node: str
    parents: FrozenSet[str]
    children: FrozenSet[str]
    color: Color = Color.NONE
    contacted_children: FrozenSet[str] = field(default_factory=frozenset)


# (current, received) -> next
_GRAMMAR: Dict[Tuple[Color, Color], Color] = {
    (Color.NONE, Color.WHITE): Color.WHITE,
    (Color.NONE, Color.GREEN): Color.GREEN,
    (Color.NONE, Color.RED): Color.RED,
    (Color.WHITE, Color.WHITE): Color.WHITE,
    (Color.GREEN, Color.GREEN): Color.GREEN,
    (Color.RED, Color.RED): Color.RED,
    (Color.WHITE, Color.GREEN): Color.GREEN,
    (Color.WHITE, Color.RED): Color.RED,
    (Color.GREEN, Color.WHITE): Color.GREEN,
    (Color.RED, Color.WHITE): Color.RED,
    (Color.GREEN, Color.RED): Color.CLASH,
    (Color.RED, Color.GREEN): Color.CLASH,
}


def apply_cug(current: Color, received: Color) -> Color:
    """Next color of a node holding `current` that receives `received`."""
    try:
        return _GRAMMAR[(Color(current), Color(received))]
    except KeyError:
        raise ValueError(f"no grammar rule for ({current}, {received})") from None


def fold_messages(start: Color, payloads: Iterable[Color]) -> Color:
    """Apply a message sequence to a start color; clash absorbs everything after it."""
    color = start
    for payload in payloads:
        if color == Color.CLASH:
            break
        color = apply_cug(color, payload)
    return color


def initial_state(node: str, parents: Iterable[str], children: Iterable[str], color: Color = Color.NONE) -> NodeState:
    return NodeState(node=node, parents=frozenset(parents), children=frozenset(children), color=color)


def on_receive(state: NodeState, msg: ColorMessage, role: NodeRole) -> Tuple[NodeState, List[ColorMessage]]:
    """Handle one color message: optional reply, grammar update, broadcast of a new color.

    A clashed node is absorbing and returns itself with no output. On the
    step that produces the clash, the reply (if any) is still returned;
    the runner decides what to do with it.
    """
    if state.color == Color.CLASH:
        return state, []

    from_child = msg.src in state.children
    if role == NodeRole.IN_C and from_child:
        return state, []

    contacted = state.contacted_children | {msg.src} if from_child else state.contacted_children
    out: List[ColorMessage] = []

    if state.color != Color.NONE and state.color != msg.payload:
        out.append(ColorMessage(state.color, state.node, msg.src))

    new_color = apply_cug(state.color, msg.payload)
    new_state = replace(state, color=new_color, contacted_children=contacted)
    if new_color == Color.CLASH or new_color == state.color:
        return new_state, out

    targets = set(state.parents)
    if role == NodeRole.NOT_IN_C:
        targets |= contacted
    targets.discard(msg.src)
    out.extend(ColorMessage(new_color, state.node, dst) for dst in sorted(targets))
    return new_state, out
