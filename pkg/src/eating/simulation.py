"""Linear and general simulations, and their evaluation as transducers.

A linear simulation from ``w1`` to ``w2`` answers each ``w2`` action with a
``w1`` action, then translates the ``w1`` response back into a ``w2``
response and a new witness.  Evaluating it turns a behavior over
``dual(w1)`` into one over ``dual(w2)``.  A general simulation is a linear
simulation out of ``star(w1)``: it may issue a whole request tree per output.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .containers import InteractionSystem, SemStep, dual, last_call
from .coval import Behavior
from .freemonad import (
    Leaf,
    Node,
    Path,
    graft,
    single,
    star,
    to_star_behavior,
)
from .values import STAR, Fn

# rho(i1, i2, r, a2) -> (a1, then) with then(d1) -> (d2, r')
Rho = Callable[[Any, Any, Any, Any], tuple[Any, Callable[[Any], tuple[Any, Any]]]]


@dataclass(frozen=True, eq=False)
class LinearSim:
    source: InteractionSystem
    target: InteractionSystem
    rho: Rho
    name: str = "sim"

    @property
    def general(self) -> bool:
        return self.source.star_of is not None


def eval_linear(S: LinearSim, i1, i2, r, T: Behavior) -> Behavior:
    """Transducer: a behavior over ``dual(S.source)`` at ``i1`` to one over ``dual(S.target)`` at ``i2``.

    Nothing is asked of ``T`` until the result is unfolded and its choice
    function applied.
    """
    w2 = S.target

    def answer(i2, seed, a2):
        r, T = seed
        a1, then = S.rho(T.index, i2, r, a2)
        f, go = T.unfold()
        d2, r2 = then(f(a1))
        return d2, (r2, go(a1))

    def step(i2, seed):
        once = last_call(lambda a2: answer(i2, seed, a2))
        return SemStep(Fn(lambda a2: once(a2)[0], w2.actions(i2)), lambda a2: once(a2)[1])

    return Behavior(dual(w2), i2, (r, T), step)


# -- identity and relational composition ---------------------------------------

def sim_id(w: InteractionSystem) -> LinearSim:
    return LinearSim(w, w, lambda i1, i2, r, a: (a, lambda d: (d, r)), name=f"id[{w.name}]")


def compose_witness(i2, r, s):
    return (i2, (r, s))


def sim_compose(S: LinearSim, R: LinearSim) -> LinearSim:
    """``S o R``; witnesses are ``(i2, (r, s))``."""
    w2 = R.target

    def rho(i1, i3, witness, a3):
        i2, (r, s) = witness
        a2, then_s = S.rho(i2, i3, s, a3)
        a1, then_r = R.rho(i1, i2, r, a2)

        def then(d1):
            d2, r2 = then_r(d1)
            d3, s2 = then_s(d2)
            return d3, (w2.next(i2, a2, d2), (r2, s2))
        return a1, then
    return LinearSim(R.source, S.target, rho, name=f"({S.name} o {R.name})")


# -- comonad structure ------------------------------------------------------------

def epsilon(w: InteractionSystem) -> LinearSim:
    """``star(w) -o w``: one action becomes a one-request tree."""
    def rho(i1, i2, r, a):
        return single(w, i1, a), lambda p: (p.head, r)
    return LinearSim(star(w), w, rho, name=f"eps[{w.name}]")


def delta(w: InteractionSystem) -> LinearSim:
    """``star(w) -o star(star(w))``: a tree of trees is answered by its grafted tree."""
    def rho(i1, i2, r, tt):
        g = graft(w, i1, tt)
        return g.tree, lambda p: (g.to_outer(p), r)
    return LinearSim(star(w), star(star(w)), rho, name=f"delta[{w.name}]")


def _lift_tree(R: LinearSim, i1, i2, r, t2):
    if isinstance(t2, Leaf):
        return Leaf(t2.payload)
    a1, then = R.rho(i1, i2, r, t2.action)
    w1, w2 = R.source, R.target

    def child(d1):
        d2, r2 = then(d1)
        return _lift_tree(R, w1.next(i1, a1, d1), w2.next(i2, t2.action, d2), r2, t2(d2))
    return Node(a1, Fn(child, w1.responses(i1, a1)))


def _lift_path(R: LinearSim, i1, i2, r, t2, p1: Path):
    w1, w2 = R.source, R.target
    steps = []
    for d1 in p1.steps:
        a2 = t2.action
        a1, then = R.rho(i1, i2, r, a2)
        d2, r = then(d1)
        steps.append(d2)
        i1, i2, t2 = w1.next(i1, a1, d1), w2.next(i2, a2, d2), t2(d2)
    return Path(tuple(steps)), r


def star_lift(R: LinearSim) -> LinearSim:
    """``star(w1) -o star(w2)``: translate a request tree node by node."""
    def rho(i1, i2, r, t2):
        return (_lift_tree(R, i1, i2, r, t2),
                lambda p1: _lift_path(R, i1, i2, r, t2, p1))
    return LinearSim(star(R.source), star(R.target), rho, name=f"{R.name}*")


def cobind_witness(i1, r):
    """Initial witness of ``cobind(R)`` from one of ``R``."""
    return compose_witness(i1, STAR, r)


def bullet_witness(i1, i2, r, s):
    return compose_witness(i2, cobind_witness(i1, r), s)


def cobind(R: LinearSim) -> LinearSim:
    """Extend a general simulation ``star(w1) -o w2`` to ``star(w1) -o star(w2)``."""
    w1 = R.source.star_of
    if w1 is None:
        raise TypeError("cobind expects a general simulation (source must be a star system)")
    return sim_compose(star_lift(R), delta(w1))


def bullet(S: LinearSim, R: LinearSim) -> LinearSim:
    """Composition of general simulations: ``S o cobind(R)``."""
    return sim_compose(S, cobind(R))


def as_general(R: LinearSim) -> LinearSim:
    """View a linear simulation as a general one (precompose with epsilon)."""
    return sim_compose(R, epsilon(R.source))


def general_witness(i1, r):
    """Initial witness of ``as_general(R)`` from one of ``R``."""
    return compose_witness(i1, STAR, r)


# -- evaluation of general simulations ---------------------------------------------

def eval_general(R: LinearSim, i1, i2, r, T: Behavior) -> Behavior:
    w1 = R.source.star_of
    if w1 is None:
        raise TypeError("eval_general expects a simulation out of a star system")
    return eval_linear(R, i1, i2, r, to_star_behavior(w1, T))


# -- internal hom ------------------------------------------------------------------

def hom_action(S: LinearSim, i1, i2, r):
    """The action of ``hom(S.source, S.target)`` at ``(i1, i2)`` performed by ``S`` with witness ``r``."""
    w1, w2 = S.source, S.target
    f = Fn(lambda a2: S.rho(i1, i2, r, a2)[0], w2.actions(i2))

    def phi(a2):
        a1, then = S.rho(i1, i2, r, a2)
        return Fn(lambda d1: then(d1)[0], w1.responses(i1, a1))
    return (f, Fn(phi, w2.actions(i2)))


__all__ = [
    "LinearSim", "eval_linear", "sim_id", "sim_compose", "compose_witness", "epsilon", "delta",
    "star_lift", "cobind", "cobind_witness", "bullet", "bullet_witness", "as_general",
    "general_witness", "eval_general", "hom_action",
]
