"""Tests for the color grammar and the per-node receive step."""

import itertools

import pytest

from engine.cug import (
    ColorMessage,
    NodeRole,
    apply_cug,
    fold_messages,
    initial_state,
    on_receive,
)
from models.schemas import MESSAGE_COLORS, Color

N, W, G, R, X = Color.NONE, Color.WHITE, Color.GREEN, Color.RED, Color.CLASH

EXPECTED_RULES = {
    (N, W): W, (N, G): G, (N, R): R,
    (W, W): W, (G, G): G, (R, R): R,
    (W, G): G, (W, R): R,
    (G, W): G, (R, W): R,
    (G, R): X, (R, G): X,
}

RANK = {N: 0, W: 1, G: 2, R: 2, X: 3}


@pytest.mark.parametrize("pair,expected", sorted(EXPECTED_RULES.items()))
def test_apply_cug_rules(pair, expected):
    assert apply_cug(*pair) == expected


def test_apply_cug_is_total_and_monotone():
    for current in (N, W, G, R):
        for received in MESSAGE_COLORS:
            nxt = apply_cug(current, received)
            assert RANK[nxt] >= RANK[current]
            assert RANK[nxt] >= RANK[received]


def test_apply_cug_rejects_clash_and_none_inputs():
    with pytest.raises(ValueError):
        apply_cug(X, G)
    with pytest.raises(ValueError):
        apply_cug(W, N)


def test_color_message_only_carries_message_colors():
    ColorMessage(G, "a", "b")
    with pytest.raises(ValueError):
        ColorMessage(N, "a", "b")
    with pytest.raises(ValueError):
        ColorMessage(X, "a", "b")


def test_fold_messages_is_order_invariant():
    """Every start color, every sequence up to length five, every reordering."""
    for start in (N, W, G, R):
        for length in range(6):
            for seq in itertools.product(MESSAGE_COLORS, repeat=length):
                expected = fold_messages(start, seq)
                for perm in set(itertools.permutations(seq)):
                    assert fold_messages(start, perm) == expected


def test_fold_messages_clash_absorbs():
    assert fold_messages(G, [R, W, G]) == X
    assert fold_messages(N, []) == N


def test_uncolored_node_adopts_and_forwards_to_parents():
    state = initial_state("v", parents={"p1", "p2"}, children={"c"})
    after, out = on_receive(state, ColorMessage(G, "c", "v"), NodeRole.NOT_IN_C)

    assert after.color == G
    assert after.contacted_children == frozenset({"c"})
    # no reply from an uncolored node, and never back to the transmitter
    assert [(m.payload, m.dst) for m in out] == [(G, "p1"), (G, "p2")]


def test_white_node_turned_red_replies_to_parent():
    state = initial_state("v", parents={"p"}, children=set(), color=W)
    after, out = on_receive(state, ColorMessage(R, "p", "v"), NodeRole.NOT_IN_C)

    assert after.color == R
    assert [(m.payload, m.src, m.dst) for m in out] == [(W, "v", "p")]


def test_red_node_receiving_green_clashes_and_still_replies():
    state = initial_state("v", parents={"p"}, children={"c"}, color=R)
    after, out = on_receive(state, ColorMessage(G, "c", "v"), NodeRole.NOT_IN_C)

    assert after.color == X
    assert [(m.payload, m.dst) for m in out] == [(R, "c")]


def test_clashed_node_is_absorbing():
    state = initial_state("v", parents={"p"}, children={"c"}, color=X)
    after, out = on_receive(state, ColorMessage(W, "p", "v"), NodeRole.NOT_IN_C)
    assert after == state
    assert out == []


def test_conditioned_node_ignores_children():
    state = initial_state("z", parents={"p"}, children={"c"}, color=W)
    after, out = on_receive(state, ColorMessage(G, "c", "z"), NodeRole.IN_C)
    assert after == state
    assert out == []


def test_conditioned_node_from_parent_updates_and_only_goes_up():
    state = initial_state("z", parents={"p", "q"}, children={"c"}, color=W)
    after, out = on_receive(state, ColorMessage(G, "p", "z"), NodeRole.IN_C)

    assert after.color == G
    assert [m.dst for m in out] == ["p", "q"]
    assert out[0].payload == W
    assert {m.payload for m in out[1:]} == {G}


def test_broadcast_reaches_contacted_children_only():
    state = initial_state("v", parents=set(), children={"c1", "c2"}, color=N)
    state, _ = on_receive(state, ColorMessage(W, "c1", "v"), NodeRole.NOT_IN_C)
    after, out = on_receive(state, ColorMessage(G, "c2", "v"), NodeRole.NOT_IN_C)

    assert after.color == G
    assert after.contacted_children == frozenset({"c1", "c2"})
    # reply white to c2, broadcast green to c1; c2 is the transmitter
    assert [(m.payload, m.dst) for m in out] == [(W, "c2"), (G, "c1")]


def test_same_color_message_is_silent():
    state = initial_state("v", parents={"p"}, children={"c"}, color=G)
    after, out = on_receive(state, ColorMessage(G, "c", "v"), NodeRole.NOT_IN_C)
    assert after.color == G
    assert out == []
