"""Interaction systems (indexed containers) and the pure combinators on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .values import (
    DEFAULT_BUDGET,
    STAR,
    Enumeration,
    Fn,
    dependent_pairs,
    function_space,
)


@dataclass(eq=False)
class InteractionSystem:
    """A state-indexed family of actions, responses and a next-state map.

    ``actions(i)`` and ``responses(i, a)`` return :class:`Enumeration` objects;
    ``next(i, a, d)`` must be pure and total on valid triples.

    ``singleton_responses`` is ``True`` when every response set is known to be
    a singleton, ``False`` when known not to be, ``None`` when unknown.
    """

    actions: Callable[[Any], Enumeration]
    responses: Callable[[Any, Any], Enumeration]
    next: Callable[[Any, Any, Any], Any]
    name: str = "w"
    singleton_responses: bool | None = None
    # provenance, used by evaluators to recover the underlying system
    dual_of: "InteractionSystem | None" = None
    star_of: "InteractionSystem | None" = None
    layer_base: "InteractionSystem | None" = None
    layer_root: Any = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        return f"<InteractionSystem {self.name}>"


@dataclass(frozen=True)
class SemStep:
    """An element of the extension: one action plus a continuation on its responses."""
    action: Any
    cont: Callable[[Any], Any]


def last_call(fn: Callable[[Any], Any]) -> Callable[[Any], Any]:
    """Remember the result for the most recent argument (compared by identity).

    Reading a step's response and then its continuation usually passes the
    same action object twice; this avoids computing the answer twice.
    """
    box = []

    def call(x):
        if box and box[0] is x:
            return box[1]
        y = fn(x)
        box[:] = [x, y]
        return y
    return call


def ext_map(w: InteractionSystem, i, step: SemStep, g: Callable[[Any], Any]) -> SemStep:
    cont = step.cont
    return SemStep(step.action, lambda d: g(cont(d)))


def choice(w: InteractionSystem, i, fn: Callable[[Any], Any]) -> Fn:
    """A choice function at ``i``: an answer in ``responses(i, a)`` for each action ``a``."""
    return Fn(fn, w.actions(i))


# -- composition --------------------------------------------------------------

def compose_is(w1: InteractionSystem, w2: InteractionSystem,
               budget: int = DEFAULT_BUDGET) -> InteractionSystem:
    """The system whose single step is a ``w1`` step followed by a ``w2`` step.

    Actions are pairs ``(a1, f)`` with ``f`` an :class:`Fn` from the responses
    of ``a1`` to ``w2`` actions; responses are pairs ``(d1, d2)``.
    """

    def actions(i):
        a1s = w1.actions(i)
        if not a1s.available:
            return Enumeration.unavailable("first system's actions are not enumerable")

        def generate():
            for a1 in a1s.within(budget):
                fs = function_space(w1.responses(i, a1),
                                    lambda d1, a1=a1: w2.actions(w1.next(i, a1, d1)), budget)
                for f in fs:
                    yield (a1, f)
        return Enumeration(generate, finite=a1s.finite)

    def responses(i, action):
        a1, f = action
        return dependent_pairs(w1.responses(i, a1),
                               lambda d1: w2.responses(w1.next(i, a1, d1), f(d1)))

    def next_(i, action, response):
        a1, f = action
        d1, d2 = response
        return w2.next(w1.next(i, a1, d1), f(d1), d2)

    return InteractionSystem(actions, responses, next_, name=f"({w2.name} o {w1.name})")


def ac_forward(w1: InteractionSystem, w2: InteractionSystem, i, nested: SemStep) -> SemStep:
    """Flatten a ``w1`` step whose continuation yields ``w2`` steps into one composite step."""
    a1, inner = nested.action, nested.cont
    f = Fn(lambda d1: inner(d1).action, w1.responses(i, a1))
    return SemStep((a1, f), lambda d: inner(d[0]).cont(d[1]))


def ac_backward(w1: InteractionSystem, w2: InteractionSystem, i, flat: SemStep) -> SemStep:
    (a1, f), cont = flat.action, flat.cont

    def inner(d1):
        return SemStep(f(d1), lambda d2: cont((d1, d2)))
    return SemStep(a1, inner)


# -- duality ------------------------------------------------------------------

def dual(w: InteractionSystem, budget: int = DEFAULT_BUDGET) -> InteractionSystem:
    """Swap the roles of actions and responses.

    An action of the dual at ``i`` is a choice function over ``w.actions(i)``;
    its responses are ``w``'s actions.  Cached per system, so ``dual(w)`` is
    always the same object.
    """
    cached = w._cache.get("dual")
    if cached is not None:
        return cached

    def actions(i):
        if w.singleton_responses:
            only = Fn(lambda a: next(iter(w.responses(i, a))), w.actions(i))
            return Enumeration.of([only])
        return function_space(w.actions(i), lambda a: w.responses(i, a), budget)

    def responses(i, f):
        return w.actions(i)

    def next_(i, f, a):
        return w.next(i, a, f(a))

    d = InteractionSystem(actions, responses, next_, name=f"{w.name}^", dual_of=w)
    w._cache["dual"] = d
    return d


def dual_forward(w: InteractionSystem, i, step: SemStep) -> Fn:
    """Element of the dual's extension -> function ``a |-> (d, x)``."""
    f, cont = step.action, step.cont
    return Fn(lambda a: (f(a), cont(a)), w.actions(i))


def dual_backward(w: InteractionSystem, i, g: Fn) -> SemStep:
    f = Fn(lambda a: g(a)[0], w.actions(i))
    return SemStep(f, lambda a: g(a)[1])


# -- internal hom -------------------------------------------------------------

def hom(w1: InteractionSystem, w2: InteractionSystem,
        budget: int = DEFAULT_BUDGET) -> InteractionSystem:
    """Linear simulations from ``w1`` to ``w2`` as a system on pairs of states.

    At ``(i1, i2)`` an action is ``(f, phi)``: ``f`` sends ``w2`` actions to
    ``w1`` actions and ``phi(a2)`` sends responses of ``f(a2)`` to responses
    of ``a2``.  A response is ``(a2, d1)``.
    """

    def actions(state):
        i1, i2 = state
        fs = function_space(w2.actions(i2), lambda a2: w1.actions(i1), budget)
        if not fs.available:
            return Enumeration.unavailable("target actions are not enumerable")

        def generate():
            for f in fs:
                phis = function_space(
                    w2.actions(i2),
                    lambda a2, f=f: function_space(w1.responses(i1, f(a2)),
                                                   lambda d1, a2=a2: w2.responses(i2, a2), budget),
                    budget)
                for phi in phis:
                    yield (f, phi)
        return Enumeration(generate)

    def responses(state, action):
        i1, i2 = state
        f, _ = action
        return dependent_pairs(w2.actions(i2), lambda a2: w1.responses(i1, f(a2)))

    def next_(state, action, response):
        i1, i2 = state
        f, phi = action
        a2, d1 = response
        return (w1.next(i1, f(a2), d1), w2.next(i2, a2, phi(a2)(d1)))

    return InteractionSystem(actions, responses, next_, name=f"({w1.name} -o {w2.name})")


def unit_system() -> InteractionSystem:
    """One state, one action, one response."""
    return InteractionSystem(lambda i: Enumeration.of([STAR]),
                             lambda i, a: Enumeration.of([STAR]),
                             lambda i, a, d: STAR, name="1", singleton_responses=True)
