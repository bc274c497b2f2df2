"""Coinductive values as seeded coalgebras.

A :class:`Behavior` is an element of the greatest fixed point of a system's
extension, presented by a seed and a pure step function.  Nothing is ever
unfolded until asked for.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from .containers import InteractionSystem, SemStep
from .values import DEFAULT_BUDGET, BudgetExceeded, EnumerationError, Fn, encode


@dataclass(frozen=True, eq=False)
class Behavior:
    system: InteractionSystem
    index: Any
    seed: Any
    step: Callable[[Any, Any], SemStep]

    def unfold(self) -> tuple[Any, Callable[[Any], "Behavior"]]:
        s = self.step(self.index, self.seed)
        w, i, a, step = self.system, self.index, s.action, self.step

        def go(d):
            return Behavior(w, w.next(i, a, d), s.cont(d), step)
        return a, go


def unfold(T: Behavior):
    return T.unfold()


def anamorphism(w: InteractionSystem, i, sigma: Callable[[Any, Any], SemStep], x) -> Behavior:
    return Behavior(w, i, x, sigma)


def walk(T: Behavior, responses) -> Behavior:
    """Follow a sequence of responses from the root."""
    for d in responses:
        _, go = T.unfold()
        T = go(d)
    return T


# -- truncation ---------------------------------------------------------------

@dataclass
class TruncTree:
    index_enc: bytes
    branches: list = field(default_factory=list)  # [(action_enc, [(response_enc, TruncTree)])]
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "i": self.index_enc.hex(),
            "truncated": self.truncated,
            "br": [[a.hex(), [[d.hex(), child.to_json()] for d, child in kids]]
                   for a, kids in self.branches],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


class TruncationError(EnumerationError):
    def __init__(self, path, cause):
        super().__init__(f"enumeration unavailable at node {list(path)!r}: {cause}")
        self.path = tuple(path)
        self.cause = cause


def truncate(T: Behavior, depth: int, budget: int = DEFAULT_BUDGET) -> TruncTree:
    """Unfold ``T`` to ``depth`` levels, listing at most ``budget`` responses per node."""
    return _truncate(T, depth, budget, ())


def _truncate(T, depth, budget, path):
    if depth == 0:
        return TruncTree(encode(T.index, budget), truncated=True)
    a, go = T.unfold()
    try:
        index_enc = encode(T.index, budget)
        action_enc = encode(a, budget)
        ds = T.system.responses(T.index, a).take(budget + 1)
    except EnumerationError as exc:
        raise TruncationError(path, exc) from exc
    cut = len(ds) > budget
    kids = [(encode(d, budget), _truncate(go(d), depth - 1, budget, path + (d,)))
            for d in ds[:budget]]
    return TruncTree(index_enc, [(action_enc, kids)], truncated=cut)


# -- bisimilarity -------------------------------------------------------------

def values_equal(x, y, budget: int = DEFAULT_BUDGET) -> bool:
    """Equality of values; functions are compared pointwise on their domain."""
    if isinstance(x, Fn) and isinstance(y, Fn):
        return all(values_equal(x(a), y(a), budget) for a in x.domain.within(budget))
    return encode(x, budget) == encode(y, budget)


def bisim_depth(T1: Behavior, T2: Behavior, k: int, budget: int = DEFAULT_BUDGET,
                explore: Callable[[InteractionSystem, Any, Any], list] | None = None,
                descend: Callable[[list], list] | None = None) -> bool:
    """Depth-``k`` approximation of bisimilarity.

    At every explored node the two actions must agree and all children must
    be related, down to ``k`` levels.  Response sets larger than ``budget``
    raise :class:`BudgetExceeded` rather than counting as a difference.

    ``explore(system, index, action)``, when given, replaces response
    enumeration with an explicit list; on a dual system the two choice
    functions are then compared only at those responses.

    ``descend(responses)``, when given, picks which of the compared
    responses to recurse into (branch sampling for wide trees).
    """
    if encode(T1.index, budget) != encode(T2.index, budget):
        return False
    return _bisim(T1, T2, k, budget, explore, descend)


def _bisim(T1, T2, k, budget, explore, descend):
    if k == 0:
        return True
    a1, go1 = T1.unfold()
    a2, go2 = T2.unfold()
    w, i = T1.system, T1.index
    if explore is not None:
        ds = explore(w, i, a1)
        if w.dual_of is not None:
            if not all(values_equal(a1(d), a2(d), budget) for d in ds):
                return False
        elif not values_equal(a1, a2, budget):
            return False
    else:
        if not values_equal(a1, a2, budget):
            return False
        ds = w.responses(i, a1).within(budget)
    if descend is not None:
        ds = descend(ds)
    return all(_bisim(go1(d), go2(d), k - 1, budget, explore, descend) for d in ds)


# -- instrumentation ----------------------------------------------------------

class FuelExhausted(RuntimeError):
    pass


class QueryLog:
    """Records the response path of every unfold performed on a traced behavior.

    With ``fuel`` set, the unfold after the ``fuel``-th raises :class:`FuelExhausted`.
    """

    def __init__(self, fuel: int | None = None):
        self.paths: list[tuple] = []
        self.fuel = fuel

    def __len__(self):
        return len(self.paths)

    def distinct(self) -> set:
        return {tuple(encode(d) for d in p) for p in self.paths}

    def mark(self) -> int:
        return len(self.paths)

    def since(self, mark: int) -> list[tuple]:
        return self.paths[mark:]


def traced(T: Behavior, log: QueryLog) -> Behavior:
    """Wrap ``T`` so that each unfold appends its path (responses from the root) to ``log``."""
    inner = T.step

    def step(i, seed):
        s, path = seed
        if log.fuel is not None and len(log.paths) >= log.fuel:
            raise FuelExhausted(f"more than {log.fuel} queries")
        log.paths.append(path)
        st = inner(i, s)
        return SemStep(st.action, lambda d: (st.cont(d), path + (d,)))
    return Behavior(T.system, T.index, (T.seed, ()), step)


__all__ = [
    "Behavior", "unfold", "anamorphism", "walk", "TruncTree", "TruncationError", "truncate",
    "values_equal", "bisim_depth", "QueryLog", "FuelExhausted", "traced", "BudgetExceeded",
]
