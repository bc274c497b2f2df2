"""Well-founded request trees (the free monad on a system) and stream eating."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple

from .containers import InteractionSystem, SemStep, dual, last_call
from .coval import Behavior
from .values import STAR, Enumeration, Fn, Left, Right, encode


class Leaf:
    __slots__ = ("payload",)

    def __init__(self, payload=STAR):
        self.payload = payload

    def canon(self):
        return Left(self.payload)

    def __repr__(self):
        return "Leaf" if self.payload == STAR else f"Leaf({self.payload!r})"


class Node:
    """An internal node: one action, and a subtree for each of its responses."""
    __slots__ = ("action", "children")

    def __init__(self, action, children: Fn):
        self.action = action
        self.children = children

    def __call__(self, d):
        return self.children(d)

    def canon(self):
        return Right((self.action, self.children))

    def __repr__(self):
        return f"Node({self.action!r}, ...)"


LEAF = Leaf()


def node(w: InteractionSystem, i, a, kids: Callable[[Any], Any] | dict) -> Node:
    """Build a node at state ``i``; ``kids`` maps responses to subtrees."""
    if isinstance(kids, dict):
        table = kids
        kids = table.__getitem__
    return Node(a, Fn(kids, w.responses(i, a)))


def single(w: InteractionSystem, i, a) -> Node:
    """One request followed by nothing."""
    return node(w, i, a, lambda d: LEAF)


@dataclass(frozen=True)
class Path:
    """A sequence of responses selecting a leaf of a request tree."""
    steps: tuple = ()

    def canon(self):
        out = Left(STAR)
        for d in reversed(self.steps):
            out = Right((d, out))
        return out

    @property
    def head(self):
        return self.steps[0]

    @property
    def rest(self) -> "Path":
        return Path(self.steps[1:])

    def __len__(self):
        return len(self.steps)

    def __add__(self, other: "Path") -> "Path":
        return Path(self.steps + other.steps)


DONE = Path()


def cons(d, rest: Path) -> Path:
    return Path((d,) + rest.steps)


# -- the free monad as a system ----------------------------------------------

def n_star(w: InteractionSystem, i, t, path: Path):
    """Endpoint state reached by following ``path`` through ``t``."""
    for d in path.steps:
        if not isinstance(t, Node):
            raise ValueError("path is longer than the branch it follows")
        i, t = w.next(i, t.action, d), t(d)
    if isinstance(t, Node):
        raise ValueError("path stops at an internal node")
    return i


def paths(w: InteractionSystem, i, t) -> Enumeration:
    """All paths through ``t``."""
    if isinstance(t, Leaf):
        return Enumeration.of([DONE])
    ds = w.responses(i, t.action)
    if not ds.available:
        return Enumeration.unavailable(ds.reason)

    def generate():
        for d in ds:
            for p in paths(w, w.next(i, t.action, d), t(d)):
                yield cons(d, p)
    return Enumeration(generate, finite=ds.finite)


def trees(w: InteractionSystem, i, depth: int) -> list:
    """Every tree rooted at ``i`` of depth at most ``depth`` (requires finite enumerations)."""
    out = [LEAF]
    if depth == 0:
        return out
    for a in w.actions(i):
        ds = list(w.responses(i, a))
        subs = [trees(w, w.next(i, a, d), depth - 1) for d in ds]
        for combo in itertools.product(*subs):
            out.append(node(w, i, a, _lookup(ds, combo)))
    return out


def _lookup(ds, subtrees):
    table = {encode(d): t for d, t in zip(ds, subtrees)}
    return lambda d: table[encode(d)]


def tree_depth(w: InteractionSystem, i, t, budget: int = 64) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max((tree_depth(w, w.next(i, t.action, d), t(d), budget)
                    for d in w.responses(i, t.action).within(budget)), default=0)


def star(w: InteractionSystem) -> InteractionSystem:
    """The free monad: actions are request trees, responses are paths through them."""
    cached = w._cache.get("star")
    if cached is not None:
        return cached

    def actions(i):
        def generate():
            seen = 0
            for depth in itertools.count():
                level = trees(w, i, depth)
                if len(level) == seen:
                    return
                for t in level:
                    if tree_depth(w, i, t) == depth:
                        yield t
                seen = len(level)
        probe = w.actions(i)
        if not probe.available:
            return Enumeration.unavailable(probe.reason)
        return Enumeration(generate)

    def responses(i, t):
        return paths(w, i, t)

    def next_(i, t, p):
        return n_star(w, i, t, p)

    s = InteractionSystem(actions, responses, next_, name=f"{w.name}*", star_of=w)
    w._cache["star"] = s
    return s


# -- fold, unit, step ---------------------------------------------------------

def fm_fold(w: InteractionSystem, i, t, leaf_case: Callable[[Any, Any], Any],
            node_case: Callable[[Any, SemStep], Any]):
    """Structural recursion: ``Leaf(x)`` -> ``leaf_case(i, x)``, ``Node`` -> ``node_case``.

    The node case receives a :class:`SemStep` whose continuation folds the
    selected child on demand.
    """
    if isinstance(t, Leaf):
        return leaf_case(i, t.payload)
    a = t.action

    def sub(d):
        return fm_fold(w, w.next(i, a, d), t(d), leaf_case, node_case)
    return node_case(i, SemStep(a, sub))


def fm_unit(w: InteractionSystem, i, x) -> Leaf:
    return Leaf(x)


def fm_step(w: InteractionSystem, i, step: SemStep) -> Node:
    return Node(step.action, Fn(step.cont, w.responses(i, step.action)))


def decorate_paths(w: InteractionSystem, i, t, prefix: Path = DONE):
    """Replace each leaf payload by the path that reaches it."""
    if isinstance(t, Leaf):
        return Leaf(prefix)
    a = t.action
    return Node(a, Fn(lambda d: decorate_paths(w, w.next(i, a, d), t(d), Path(prefix.steps + (d,))),
                      w.responses(i, a)))


def leaf_count(w: InteractionSystem, i, t, budget: int = 64) -> int:
    def node_case(j, s):
        return sum(s.cont(d) for d in w.responses(j, s.action).within(budget))
    return fm_fold(w, i, t, lambda j, x: 1, node_case)


# -- grafting -----------------------------------------------------------------

class Graft(NamedTuple):
    tree: Any                              # flattened request tree over w
    to_outer: Callable[[Path], Path]       # path of ``tree`` -> path of the tree-of-trees
    from_outer: Callable[[Path], Path]


def _substitute(w, i, t, at_leaf, prefix: tuple):
    if isinstance(t, Leaf):
        return at_leaf(i, Path(prefix))
    a = t.action
    return Node(a, Fn(lambda d: _substitute(w, w.next(i, a, d), t(d), at_leaf, prefix + (d,)),
                      w.responses(i, a)))


def flatten(w: InteractionSystem, i, tt):
    """Collapse a tree over ``star(w)`` into a single tree over ``w``."""
    if isinstance(tt, Leaf):
        return tt
    alpha = tt.action
    return _substitute(w, i, alpha, lambda j, p: flatten(w, j, tt(p)), ())


def graft(w: InteractionSystem, i, tt) -> Graft:
    def to_outer(p: Path) -> Path:
        out, rest, j, cur = [], list(p.steps), i, tt
        while isinstance(cur, Node):
            alpha, consumed = cur.action, []
            while isinstance(alpha, Node):
                d = rest.pop(0)
                consumed.append(d)
                j, alpha = w.next(j, alpha.action, d), alpha(d)
            delta = Path(tuple(consumed))
            out.append(delta)
            cur = cur(delta)
        if rest:
            raise ValueError("path is longer than the grafted tree")
        return Path(tuple(out))

    def from_outer(pp: Path) -> Path:
        return Path(tuple(d for delta in pp.steps for d in delta.steps))

    return Graft(flatten(w, i, tt), to_outer, from_outer)


# -- eating -------------------------------------------------------------------

class Meal(NamedTuple):
    payload: Any
    path: Path
    residual: Behavior


def eat(w: InteractionSystem, i, t, T: Behavior) -> Meal:
    """Run request tree ``t`` against ``T`` (a behavior over the dual of ``w`` at ``i``).

    Each node's action is answered by ``T``'s choice function; the answer
    selects the child and advances ``T``.
    """
    taken = []
    while isinstance(t, Node):
        f, go = T.unfold()
        a = t.action
        d = f(a)
        taken.append(d)
        T = go(a)
        t = t(d)
    return Meal(t.payload, Path(tuple(taken)), T)


def to_star_behavior(w: InteractionSystem, T: Behavior) -> Behavior:
    """View a behavior over ``dual(w)`` as one over ``dual(star(w))``: requests are answered by eating."""
    def step(i, U):
        meal = last_call(lambda t: eat(w, i, t, U))
        return SemStep(Fn(lambda t: meal(t).path, star(w).actions(i)), lambda t: meal(t).residual)
    return Behavior(dual(star(w)), T.index, T, step)


def from_star_behavior(w: InteractionSystem, U: Behavior) -> Behavior:
    """Answer single actions by submitting one-request trees to ``U``."""
    def step(i, V):
        f, go = V.unfold()
        return SemStep(Fn(lambda a: f(single(w, i, a)).head, w.actions(i)),
                       lambda a: go(single(w, i, a)))
    return Behavior(dual(w), U.index, U, step)
