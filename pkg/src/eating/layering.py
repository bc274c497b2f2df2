"""Layering: complete finite-depth trees grown one layer at a time.

``layered(v, i)`` presents an infinite tree over ``v`` rooted at ``i`` as a
stream of layers.  A layered simulation reads whole layers of its input, so
it can see several branches at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .containers import InteractionSystem, SemStep, dual
from .coval import Behavior
from .freemonad import Leaf, node, star
from .simulation import LinearSim, as_general, bullet, eval_general, sim_id
from .values import DEFAULT_BUDGET, STAR, Enumeration, Fn, Left, Right, encode, function_space


class NotSingletonResponses(ValueError):
    pass


# -- layer trees and positions --------------------------------------------------

class LayerLeaf:
    __slots__ = ()
    depth = 0
    layers = ()

    def canon(self):
        return Left(STAR)

    def __repr__(self):
        return "LayerLeaf"


class Grow:
    """``base`` with one more layer: ``layer`` gives an action at each position of ``base``."""
    __slots__ = ("base", "layer", "depth", "layers")

    def __init__(self, base, layer: Fn):
        self.base = base
        self.layer = layer
        self.depth = base.depth + 1
        self.layers = base.layers + (layer,)

    def canon(self):
        return Right((self.base, self.layer))

    def __repr__(self):
        return f"Grow(depth={self.depth})"


BUD = LayerLeaf()


@dataclass(frozen=True)
class Position:
    """A leaf of a layer tree: the responses taken from the root."""
    steps: tuple = ()

    def at(self, d) -> "Position":
        return Position(self.steps + (d,))

    @property
    def parent(self) -> "Position":
        return Position(self.steps[:-1])

    @property
    def last(self):
        return self.steps[-1]

    def canon(self):
        out = Left(STAR)
        for d in self.steps:
            out = Right((out, d))
        return out


ROOT = Position()


def _layers(alpha) -> tuple:
    return alpha.layers


def sharp_next(v: InteractionSystem, i, alpha, beta: Position):
    """State reached at position ``beta`` of ``alpha``."""
    layers = _layers(alpha)
    if len(beta.steps) != len(layers):
        raise ValueError("position depth does not match the layer tree")
    for k, d in enumerate(beta.steps):
        i = v.next(i, layers[k](Position(beta.steps[:k])), d)
    return i


def positions(v: InteractionSystem, i, alpha) -> Enumeration:
    """The leaves of ``alpha``, breadth-first."""
    layers = _layers(alpha)

    def generate():
        frontier = [(ROOT, i)]
        for layer in layers:
            nxt = []
            for beta, j in frontier:
                a = layer(beta)
                for d in v.responses(j, a):
                    nxt.append((beta.at(d), v.next(j, a, d)))
            frontier = nxt
        for beta, _ in frontier:
            yield beta
    return Enumeration(generate)


def layered(v: InteractionSystem, i0, budget: int = DEFAULT_BUDGET) -> InteractionSystem:
    """States are layer trees over ``v`` rooted at ``i0``; an action adds one layer.

    Cached per ``(v, i0, budget)`` so that simulations built separately share systems.
    """
    key = ("layered", encode(i0), budget)
    cached = v._cache.get(key)
    if cached is not None:
        return cached

    def actions(alpha):
        return function_space(positions(v, i0, alpha),
                              lambda beta: v.actions(sharp_next(v, i0, alpha, beta)), budget)

    L = InteractionSystem(
        actions,
        lambda alpha, l: Enumeration.of([STAR]),
        lambda alpha, l, _: Grow(alpha, l),
        name=f"Layered({v.name})",
        singleton_responses=True,
        layer_base=v,
        layer_root=i0,
    )
    v._cache[key] = L
    return L


# -- trees <-> streams of layers --------------------------------------------------

class PositionTable:
    """A pure function of positions, computed lazily and cached per position.

    Positions made of plain hashable values are keyed directly; anything else
    falls back to its canonical encoding.
    """

    def __init__(self, fn: Callable[[Position], Any]):
        self._fn = fn
        self._cache: dict = {}

    def __call__(self, beta: Position):
        key = beta.steps
        try:
            hash(key)
        except TypeError:
            key = encode(beta)
        try:
            return self._cache[key]
        except KeyError:
            hit = self._cache[key] = self._fn(beta)
            return hit


def layer(L: InteractionSystem, alpha, fn: Callable[[Position], Any]) -> Fn:
    """A layer on top of ``alpha``: an action of the base system at each position (memoised)."""
    return Fn(PositionTable(fn), positions(L.layer_base, L.layer_root, alpha))


def to_layers(T: Behavior, L: InteractionSystem | None = None) -> Behavior:
    """An infinite tree as the stream of its layers."""
    v, i = T.system, T.index
    if L is None:
        L = layered(v, i)

    def step(alpha, table):
        l = layer(L, alpha, lambda beta: table(beta).unfold()[0])

        def grown(_):
            return PositionTable(lambda beta: table(beta.parent).unfold()[1](beta.last))
        return SemStep(l, grown)
    return Behavior(L, BUD, PositionTable(lambda beta: T), step)


class _Cursor:
    """A point in a layer stream whose unfolding is shared by every node of that layer."""
    __slots__ = ("stream", "_layer", "_go", "_next")

    def __init__(self, stream: Behavior):
        self.stream = stream
        self._layer = self._go = self._next = None

    @property
    def layer(self) -> Fn:
        if self._go is None:
            self._layer, self._go = self.stream.unfold()
        return self._layer

    @property
    def next(self) -> "_Cursor":
        if self._next is None:
            self.layer
            self._next = _Cursor(self._go(STAR))
        return self._next


def from_layers(U: Behavior) -> Behavior:
    """Regrow a tree from a stream of layers.

    All nodes at one depth read the same layer, so the layer stream is
    unfolded once per depth rather than once per node.
    """
    L = U.system
    v, i = L.layer_base, L.layer_root

    def step(j, seed):
        cursor, beta = seed
        return SemStep(cursor.layer(beta), lambda d: (cursor.next, beta.at(d)))
    return Behavior(v, i, (_Cursor(U), ROOT), step)


# -- double dual for singleton responses -----------------------------------------

def _unique_response(v, i, a):
    ds = v.responses(i, a).take(2)
    if len(ds) != 1:
        raise NotSingletonResponses(f"{v.name} has {len(ds)}+ responses at this action")
    return ds[0]


def dd_wrap(T: Behavior) -> Behavior:
    """A behavior over ``v`` (singleton responses) as one over ``dual(dual(v))``."""
    v = T.system
    if v.singleton_responses is False:
        raise NotSingletonResponses(f"{v.name} does not have singleton responses")
    vpp = dual(dual(v))

    def step(i, U):
        a, go = U.unfold()
        if v.singleton_responses is None:
            _unique_response(v, i, a)
        return SemStep(Fn(lambda f: a, dual(v).actions(i)), lambda f: go(f(a)))
    return Behavior(vpp, T.index, T, step)


def dd_unwrap(U: Behavior) -> Behavior:
    vp = U.system.dual_of
    v = vp.dual_of if vp is not None else None
    if v is None:
        raise TypeError("dd_unwrap expects a behavior over a double dual")
    if v.singleton_responses is False:
        raise NotSingletonResponses(f"{v.name} does not have singleton responses")

    def step(i, V):
        F, go = V.unfold()
        only = Fn(lambda a: _unique_response(v, i, a), v.actions(i))
        a = F(only)
        return SemStep(a, lambda d: go(only))
    return Behavior(v, U.index, U, step)


# -- layered simulations ------------------------------------------------------------

@dataclass(frozen=True)
class LayeredSystems:
    """The systems a layered simulation between ``w1`` at ``i1`` and ``w2`` at ``i2`` lives on."""
    w1: InteractionSystem
    i1: Any
    w2: InteractionSystem
    i2: Any
    L1: InteractionSystem
    L2: InteractionSystem

    @property
    def source(self) -> InteractionSystem:
        """The system whose request trees the simulation issues: ``dual(L1)``."""
        return dual(self.L1)

    @property
    def target(self) -> InteractionSystem:
        return dual(self.L2)


def layered_systems(w1, i1, w2, i2) -> LayeredSystems:
    return LayeredSystems(w1, i1, w2, i2, layered(dual(w1), i1), layered(dual(w2), i2))


def read_layers(ls: LayeredSystems, alpha, n: int, payload=STAR):
    """Request tree reading the next ``n`` input layers on top of ``alpha``."""
    src = ls.source
    if n == 0:
        return Leaf(payload)
    ask = next(iter(src.actions(alpha)))
    return node(src, alpha, ask, lambda l: read_layers(ls, Grow(alpha, l), n - 1, payload))


def layered_sim(ls: LayeredSystems, rho, name: str = "layered") -> LinearSim:
    """A general layered simulation ``star(dual(L1)) -o dual(L2)``."""
    return LinearSim(star(ls.source), ls.target, rho, name=name)


def eval_layered(R: LinearSim, r, T: Behavior) -> Behavior:
    """Evaluate a general layered simulation on a tree ``T`` over ``dual(w1)``.

    to_layers, dd_wrap, eval_general, dd_unwrap, from_layers, in that order.
    """
    L1 = R.source.star_of.dual_of
    U = dd_wrap(to_layers(T, L1))
    V = eval_general(R, BUD, BUD, r, U)
    return from_layers(dd_unwrap(V))


def layered_bullet(S: LinearSim, R: LinearSim) -> LinearSim:
    return bullet(S, R)


def layered_identity(ls: LayeredSystems) -> LinearSim:
    """Identity layered simulation (requires ``w1 is w2`` and equal roots)."""
    return as_general(sim_id(ls.source))


__all__ = [
    "LayerLeaf", "Grow", "BUD", "Position", "ROOT", "sharp_next", "positions", "layered",
    "layer", "to_layers", "from_layers", "dd_wrap", "dd_unwrap", "NotSingletonResponses",
    "LayeredSystems", "layered_systems", "read_layers", "layered_sim", "eval_layered",
    "layered_bullet", "layered_identity", "PositionTable",
]
