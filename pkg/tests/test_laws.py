import pytest

from eating.coval import QueryLog
from eating.fixtures import bin_from, stream_from
from eating.laws import SUITES, agree, is_chain, random_tree, suite_eating, suite_oracles
from eating.fixtures import W_FIN
from eating.freemonad import tree_depth

FAST = {"functoriality", "comonad", "oracles", "eating"}


@pytest.mark.parametrize("name", sorted(set(SUITES) - FAST))
def test_fast_suites_pass(name, reg):
    results = SUITES[name](seed=1, reg=reg)
    assert results and all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_small_eating_and_oracle_runs(reg):
    for r in suite_eating(seed=5, reg=reg, trees=10) + suite_oracles(seed=5, reg=reg, inputs=5):
        assert r.passed, r.line()


def test_agree_detects_a_deep_difference_on_streams():
    a = stream_from(lambda k: k)
    b = stream_from(lambda k: k + (k == 19))
    assert agree(a, b, "stream", 19)
    assert not agree(a, b, "stream", 20)


def test_agree_checks_trees_fully_near_the_root():
    a = bin_from(lambda c: c)
    b = bin_from(lambda c: c + (c == 13))  # rightmost node two levels down
    assert not agree(a, b, "bin", 20)


def test_random_tree_is_bounded_and_seeded():
    t = random_tree(W_FIN, 0, 42, 3)
    assert tree_depth(W_FIN, 0, t) <= 3
    assert repr(random_tree(W_FIN, 0, 42, 3)) == repr(t)


def test_is_chain():
    assert is_chain({(), (b"a",), (b"a", b"b")})
    assert not is_chain({(), (b"a",), (b"b",)})
    assert QueryLog().distinct() == set()


def test_law_lines_are_stable(reg):
    line = SUITES["ac"](seed=1, reg=reg)[0].line()
    assert line.startswith("PASS ac.")
