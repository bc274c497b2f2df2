import pytest
from hypothesis import given, settings, strategies as st

from eating.containers import dual
from eating.coval import bisim_depth
from eating.fixtures import W_BIN, W_STREAM, bin_from, digits, stream_from, stream_prefix
from eating.layering import (
    BUD,
    ROOT,
    Grow,
    NotSingletonResponses,
    Position,
    PositionTable,
    dd_unwrap,
    dd_wrap,
    from_layers,
    layered,
    positions,
    sharp_next,
    to_layers,
)
from eating.values import STAR

LAYER_BUDGET = 4096


def grow(T, n):
    U = to_layers(T)
    alpha = BUD
    for _ in range(n):
        l, go = U.unfold()
        alpha, U = Grow(alpha, l), go(STAR)
    return alpha, U


def test_layered_system_is_cached():
    v = dual(W_BIN)
    assert layered(v, STAR) is layered(v, STAR)


@given(st.integers(min_value=0, max_value=8))
def test_binary_layers_have_2_to_the_n_positions(n):
    alpha, _ = grow(bin_from(lambda c: c), n)
    ps = positions(dual(W_BIN), STAR, alpha).within(1024)
    assert len(ps) == 2 ** n
    assert all(len(p.steps) == n for p in ps)


def test_layers_hold_the_tree_labels():
    alpha, _ = grow(bin_from(lambda c: c), 3)
    first, second, third = alpha.layers
    assert [first(ROOT)(a) for a in (0, 1)] == [1, 2]
    assert [second(Position((1,)))(a) for a in (0, 1)] == [5, 6]
    assert third(Position((0, 1)))(1) == 2 * 4 + 2


def test_sharp_next_on_streams_is_star():
    alpha, _ = grow(stream_from(lambda k: k), 3)
    assert sharp_next(dual(W_STREAM), STAR, alpha, Position((STAR,) * 3)) == STAR
    with pytest.raises(ValueError):
        sharp_next(dual(W_STREAM), STAR, alpha, ROOT)


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=2**32))
def test_layer_round_trip_on_trees(seed):
    T = bin_from(digits(seed))
    assert bisim_depth(from_layers(to_layers(T)), T, 7)


def test_layer_round_trip_on_streams():
    T = stream_from(digits(4))
    assert stream_prefix(from_layers(to_layers(T)), 30) == stream_prefix(T, 30)


def test_dd_round_trip():
    U = to_layers(bin_from(lambda c: c))
    assert bisim_depth(dd_unwrap(dd_wrap(U)), U, 5, LAYER_BUDGET)


def test_dd_wrap_rejects_branching_responses():
    # detected on first unfold: the response sets are only known state by state
    with pytest.raises(NotSingletonResponses):
        dd_wrap(bin_from(lambda c: c)).unfold()[0](None)


def test_dd_unwrap_needs_double_dual():
    with pytest.raises(TypeError):
        dd_unwrap(stream_from(lambda k: k))


def test_position_table_computes_once():
    calls = []
    table = PositionTable(lambda p: calls.append(p) or len(p.steps))
    assert table(Position((0, 1))) == table(Position((0, 1))) == 2
    assert len(calls) == 1
