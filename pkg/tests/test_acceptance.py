"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE n PASS|FAIL`` line (also collected
in the terminal summary).  Run standalone with ``python tests/test_acceptance.py``.
"""
import subprocess
import sys
import time

import pytest

from eating.fixtures import register_paper_fixtures, stream_prefix
from eating.laws import (
    GENERAL_PAIRS,
    LINEAR_PAIRS,
    suite_ac,
    suite_comonad,
    suite_eating,
    suite_functoriality,
    suite_isos,
    suite_laziness,
    suite_oracles,
)

try:
    from conftest import ACCEPTANCE
except ImportError:  # standalone run
    ACCEPTANCE = {}

REG = register_paper_fixtures()

CLI_EXAMPLES = [
    ["transduce", "--sim", "sumblock", "--input", "nat", "--take", "5"],
    ["transduce", "--sim", "layersum", "--input", "paper_bin", "--take", "3"],
    ["bisim", "--left", "nat", "--right", "nat", "--depth", "50"],
]


def first_outputs(sim, behavior, n):
    return stream_prefix(REG.sims[sim].run(REG.behavior(behavior)), n)


def laws_ok(results):
    bad = [r.line() for r in results if not r.passed]
    cases = sum(r.cases for r in results)
    return not bad, f"{len(results)} laws, {cases} cases" + (f"; {bad}" if bad else "")


def c1():
    got = first_outputs("sumblock", "nat", 5)
    return got == [0, 2, 15, 77, 376], f"got {got}, stated [0, 2, 15, 77, 376]"


def c2():
    got = first_outputs("layersum", "paper_bin", 3)
    return got == [3, 18, 84], f"got {got}"


def c3():
    return laws_ok(suite_ac(reg=REG))


def c4():
    assert len(LINEAR_PAIRS) >= 5 and len(GENERAL_PAIRS) >= 3
    return laws_ok(suite_functoriality(reg=REG, depth=20))


def c5():
    return laws_ok(suite_comonad(reg=REG, depth=10))


def c6():
    return laws_ok(suite_isos(reg=REG, stream_depth=30, tree_depth=10))


def c7():
    return laws_ok(suite_eating(reg=REG, trees=100, depth=20))


def c8():
    return laws_ok(suite_oracles(reg=REG, inputs=100))


def c9():
    return laws_ok(suite_laziness(reg=REG))


def c10():
    outputs = []
    for argv in CLI_EXAMPLES:
        runs = [subprocess.run([sys.executable, "-m", "eating", *argv], capture_output=True)
                for _ in range(2)]
        outputs.append(runs[0].stdout)
        if runs[0].stdout != runs[1].stdout or runs[0].returncode != runs[1].returncode:
            return False, f"{' '.join(argv)} differs between runs"
    return True, " | ".join(o.decode().strip() for o in outputs)


# The stated fifth value sums 16..31 (sixteen elements) while the rule, and the
# "15 elements" annotation next to it, read 16..30 = 345.  Criterion 1 is kept
# as stated and expected to fail; strict, so reaching 376 would be flagged too.
UNATTAINABLE = {1: "stated trace is inconsistent with its own rule: 16+...+30 = 345"}

CRITERIA = [
    (1, "sum-block trace", c1, 1),
    (2, "layer-sum trace", c2, 5),
    (3, "axiom-of-choice isomorphisms on W_FIN", c3, 5),
    (4, "evaluation functoriality", c4, 30),
    (5, "comonad laws", c5, 30),
    (6, "isomorphism suites", c6, 30),
    (7, "eating postconditions", c7, 30),
    (8, "oracle equivalence", c8, 60),
    (9, "laziness and single-branch reads", c9, 10),
    (10, "CLI determinism", c10, 60),
]


def check(number, title, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"ACCEPTANCE {number:2} {status} {title} ({elapsed:.2f}s < {limit}s: {in_time}) {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return ok, in_time, detail


def marked(criteria):
    for number, *rest in criteria:
        marks = [pytest.mark.xfail(strict=True, reason=UNATTAINABLE[number])] \
            if number in UNATTAINABLE else []
        yield pytest.param(number, *rest, marks=marks, id=f"c{number}")


@pytest.mark.parametrize("number,title,fn,limit", list(marked(CRITERIA)))
def test_criterion(number, title, fn, limit):
    ok, in_time, detail = check(number, title, fn, limit)
    assert ok, detail
    assert in_time, f"over the {limit}s limit"


def test_sumblock_fifth_output_follows_the_rule():
    # derived independently: the head 15 selects the next 15 elements
    assert first_outputs("sumblock", "nat", 5)[:4] == [0, 2, 15, 77]
    assert first_outputs("sumblock", "nat", 5)[4] == sum(range(16, 16 + 15)) == 345


if __name__ == "__main__":
    results = [check(*c) for c in CRITERIA]
    sys.exit(0 if all(ok and t for ok, t, _ in results) else 1)

