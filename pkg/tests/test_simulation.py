import pytest
from hypothesis import given, settings, strategies as st

from eating.containers import hom
from eating.coval import QueryLog, bisim_depth, traced
from eating.fixtures import (
    W_FIN,
    W_STREAM,
    digits,
    linear_map,
    oracle_pairsum,
    oracle_scan,
    oracle_sumblock,
    sim_pairsum,
    sim_scan,
    sim_sumblock,
    stream_from,
    stream_prefix,
)
from eating.simulation import (
    as_general,
    bullet,
    bullet_witness,
    cobind,
    compose_witness,
    epsilon,
    eval_general,
    eval_linear,
    general_witness,
    hom_action,
    sim_compose,
    sim_id,
)
from eating.values import STAR, encode

affine = st.tuples(st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5))


def run(S, T, r=STAR):
    return eval_linear(S, STAR, STAR, r, T)


def test_map_on_nat():
    S = linear_map(W_STREAM, W_STREAM, lambda d: 2 * d, "double")
    assert stream_prefix(run(S, stream_from(lambda k: k)), 5) == [0, 2, 4, 6, 8]


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=2**32))
def test_scan_matches_oracle(seed):
    raw = digits(seed)
    assert stream_prefix(run(sim_scan(), stream_from(raw), 0), 12) == oracle_scan(raw, 12)


@settings(max_examples=30)
@given(affine, affine, st.integers(min_value=0, max_value=2**32))
def test_eval_of_composite_is_composite_of_evals(f, g, seed):
    R = linear_map(W_STREAM, W_STREAM, lambda d: f[0] * d + f[1], "R")
    S = linear_map(W_STREAM, W_STREAM, lambda d: g[0] * d + g[1], "S")
    T = stream_from(digits(seed))
    lhs = eval_linear(sim_compose(S, R), STAR, STAR, compose_witness(STAR, STAR, STAR), T)
    assert bisim_depth(lhs, run(S, run(R, T)), 20)


def test_composition_order_matters():
    double = linear_map(W_STREAM, W_STREAM, lambda d: 2 * d, "double")
    succ = linear_map(W_STREAM, W_STREAM, lambda d: d + 1, "succ")
    T = stream_from(lambda k: k)
    w = compose_witness(STAR, STAR, STAR)
    a = eval_linear(sim_compose(double, succ), STAR, STAR, w, T)
    b = eval_linear(sim_compose(succ, double), STAR, STAR, w, T)
    assert not bisim_depth(a, b, 1)


def test_identity_is_neutral():
    T = stream_from(digits(3))
    assert bisim_depth(run(sim_id(W_STREAM), T), T, 20)


def test_sumblock_values():
    nat = stream_from(lambda k: k)
    out = stream_prefix(eval_general(sim_sumblock(), STAR, STAR, STAR, nat), 5)
    assert out == oracle_sumblock(lambda k: k, 5) == [0, 2, 15, 77, 345]


def test_bullet_against_composed_oracles():
    nat = lambda k: k  # noqa: E731
    blocks = oracle_sumblock(nat, 8)
    expected = oracle_pairsum(lambda k: blocks[k], 4)
    B = bullet(sim_pairsum(), sim_sumblock())
    U = eval_general(B, STAR, STAR, bullet_witness(STAR, STAR, STAR, STAR), stream_from(nat))
    assert stream_prefix(U, 4) == expected == [2, 92, 345 + 1457, 5985 + 24257]


def test_epsilon_evaluates_to_identity():
    T = stream_from(digits(9))
    assert bisim_depth(eval_general(epsilon(W_STREAM), STAR, STAR, STAR, T), T, 20)


def test_linear_as_general():
    S = linear_map(W_STREAM, W_STREAM, lambda d: d + 7, "add7")
    T = stream_from(digits(5))
    G = eval_general(as_general(S), STAR, STAR, general_witness(STAR, STAR), T)
    assert bisim_depth(G, run(S, T), 20)


def test_evaluation_is_lazy():
    log = QueryLog()
    U = eval_general(sim_sumblock(), STAR, STAR, STAR, traced(stream_from(lambda k: k), log))
    f, _ = U.unfold()
    assert len(log) == 0
    f(STAR)
    assert len(log) > 0


def test_cobind_needs_general_source():
    with pytest.raises(TypeError):
        cobind(sim_id(W_STREAM))


def test_hom_action_is_an_action_of_hom():
    S = linear_map(W_FIN, W_FIN, lambda d: d, "id_fin")
    h = hom(W_FIN, W_FIN)
    for i in (0, 1):
        listed = {encode(x) for x in h.actions((i, i)).within(1000)}
        assert encode(hom_action(S, i, i, STAR)) in listed
