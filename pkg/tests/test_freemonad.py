from hypothesis import given, settings, strategies as st

from eating.coval import bisim_depth, walk
from eating.fixtures import (
    FIN_ACTIONS,
    FIN_RESPONSES,
    W_BIN,
    W_FIN,
    W_STREAM,
    bin_from,
    chain,
    digits,
    fin_from,
    stream_from,
)
from eating.freemonad import (
    Leaf,
    Path,
    eat,
    from_star_behavior,
    graft,
    leaf_count,
    n_star,
    node,
    paths,
    star,
    to_star_behavior,
    tree_depth,
    trees,
)
from eating.laws import navigate, random_tree
from eating.values import STAR, encode

seeds = st.integers(min_value=0, max_value=2**32)


def brute_tree_count(i, depth):
    if depth == 0:
        return 1
    total = 1
    for a in FIN_ACTIONS[i]:
        n = 1
        for d in FIN_RESPONSES[(i, a)]:
            n *= brute_tree_count((i + a + d) % 2, depth - 1)
        total += n
    return total


def test_tree_enumeration_counts():
    for i in (0, 1):
        for depth in range(4):
            assert len(trees(W_FIN, i, depth)) == brute_tree_count(i, depth)
    assert [brute_tree_count(0, k) for k in range(3)] == [1, 3, 9]


def test_star_actions_are_listed_by_depth():
    listed = star(W_FIN).actions(0).take(9)
    depths = [tree_depth(W_FIN, 0, t) for t in listed]
    assert depths == sorted(depths)
    assert len({encode(t) for t in listed}) == 9


@settings(max_examples=60)
@given(seeds, st.integers(min_value=0, max_value=5))
def test_paths_match_leaves(seed, depth):
    t = random_tree(W_FIN, 0, seed, depth)
    ps = paths(W_FIN, 0, t).within(10_000)
    assert len(ps) == leaf_count(W_FIN, 0, t)
    for p in ps:
        n_star(W_FIN, 0, t, p)


@settings(max_examples=60)
@given(seeds, seeds)
def test_eat_postconditions(tree_seed, input_seed):
    T = fin_from(lambda k, a: (tree_seed ^ input_seed ^ k) % 3)
    t = random_tree(W_FIN, 0, tree_seed, 5)
    meal = eat(W_FIN, 0, t, T)
    assert meal.residual.index == n_star(W_FIN, 0, t, meal.path)
    nav = navigate(T, t, meal.path)
    assert bisim_depth(meal.residual, nav, 6)


def test_eat_reads_head_then_block():
    def block(n):
        return chain(W_STREAM, STAR, n, payload=n)
    t = node(W_STREAM, STAR, STAR, block)
    T = stream_from(lambda k: [3, 10, 20, 30, 7][k])
    meal = eat(W_STREAM, STAR, t, T)
    assert meal.payload == 3
    assert meal.path == Path((3, 10, 20, 30))
    f, _ = meal.residual.unfold()
    assert f(STAR) == 7


def test_eat_a_leaf_is_free():
    T = stream_from(lambda k: k)
    meal = eat(W_STREAM, STAR, Leaf("x"), T)
    assert meal == ("x", Path(), T)


@settings(max_examples=30)
@given(seeds)
def test_star_round_trip(seed):
    T = bin_from(digits(seed))
    back = from_star_behavior(W_BIN, to_star_behavior(W_BIN, T))
    assert bisim_depth(back, T, 6)


def test_star_view_answers_whole_trees():
    T = stream_from(lambda k: k + 5)
    U = to_star_behavior(W_STREAM, T)
    f, go = U.unfold()
    t = chain(W_STREAM, STAR, 3)
    assert f(t) == Path((5, 6, 7))
    g, _ = go(t).unfold()
    assert g(chain(W_STREAM, STAR, 1)) == Path((8,))


@settings(max_examples=40)
@given(seeds)
def test_graft_paths_correspond(seed):
    # a tree of trees over W_FIN: each outer node is a random inner tree
    def outer(i, depth, key):
        alpha = random_tree(W_FIN, i, seed, 2, key)
        if depth == 0:
            return Leaf(key)
        return node(star(W_FIN), i, alpha,
                    lambda p, i=i: outer(n_star(W_FIN, i, alpha, p), depth - 1, (p, key)))
    tt = outer(0, 2, STAR)
    g = graft(W_FIN, 0, tt)
    flat_paths = paths(W_FIN, 0, g.tree).within(10_000)
    for p in flat_paths:
        pp = g.to_outer(p)
        assert g.from_outer(pp) == p
        assert n_star(W_FIN, 0, g.tree, p) == n_star(star(W_FIN), 0, tt, pp)


def test_walk_and_eat_agree_on_chains():
    T = stream_from(lambda k: 2 * k)
    meal = eat(W_STREAM, STAR, chain(W_STREAM, STAR, 4), T)
    assert bisim_depth(meal.residual, walk(T, [STAR] * 4), 10)
