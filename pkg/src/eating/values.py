"""Canonical values, lazy enumerations and tabulable functions.

Every datum moved around by interaction systems (states, actions,
responses) is a plain Python value drawn from a small vocabulary:

    ()              unit (also exported as ``STAR``)
    int >= 0        natural number (``bool`` counts as 0/1)
    (x, y)          pair
    Left(x), Right(x)
    Fn              function, compared through its tabulation
    objects with a ``canon()`` method returning one of the above

Two values are equal iff their canonical byte encodings are equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator

STAR = ()

DEFAULT_BUDGET = 64

TAG_UNIT = 0x00
TAG_NAT = 0x01
TAG_PAIR = 0x02
TAG_LEFT = 0x03
TAG_RIGHT = 0x04
TAG_TAB = 0x05


class EnumerationError(Exception):
    """A set could not be listed."""


class EnumerationUnavailable(EnumerationError):
    pass


class BudgetExceeded(EnumerationError):
    pass


@dataclass(frozen=True)
class Left:
    value: Any


@dataclass(frozen=True)
class Right:
    value: Any


class Enumeration:
    """A lazily produced, ordered sequence of values.

    ``source`` is a zero-argument callable returning a fresh iterator, or
    ``None`` when the set cannot be listed at all (e.g. a function space
    over an infinite domain).
    """

    __slots__ = ("_source", "finite", "reason")

    def __init__(self, source: Callable[[], Iterable] | None, finite: bool | None = None,
                 reason: str = ""):
        self._source = source
        self.finite = finite
        self.reason = reason

    @classmethod
    def of(cls, items: Iterable) -> "Enumeration":
        items = tuple(items)
        return cls(lambda: iter(items), finite=True)

    @classmethod
    def naturals(cls, start: int = 0) -> "Enumeration":
        return cls(lambda: itertools.count(start), finite=False)

    @classmethod
    def unavailable(cls, reason: str) -> "Enumeration":
        return cls(None, reason=reason)

    @property
    def available(self) -> bool:
        return self._source is not None

    def __iter__(self) -> Iterator:
        if self._source is None:
            raise EnumerationUnavailable(self.reason or "set is not enumerable")
        return iter(self._source())

    def take(self, n: int) -> list:
        return list(itertools.islice(iter(self), n))

    def within(self, budget: int = DEFAULT_BUDGET) -> list:
        """All elements, or ``BudgetExceeded`` if there are more than ``budget``."""
        items = self.take(budget + 1)
        if len(items) > budget:
            raise BudgetExceeded(f"more than {budget} elements")
        return items


class Fn:
    """A function value with an explicit (lazy) domain.

    Calling applies the function; encoding tabulates it over the domain.
    """

    __slots__ = ("fn", "domain")

    def __init__(self, fn: Callable[[Any], Any], domain: Enumeration):
        self.fn = fn
        self.domain = domain

    def __call__(self, x):
        return self.fn(x)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Any, Any]], domain: Enumeration) -> "Fn":
        table = {encode(k): v for k, v in pairs}

        def lookup(x):
            try:
                return table[encode(x)]
            except KeyError:
                raise ValueError(f"argument {x!r} outside tabulated domain") from None
        return cls(lookup, domain)

    def table(self, budget: int = DEFAULT_BUDGET) -> list[tuple[Any, Any]]:
        return [(x, self.fn(x)) for x in self.domain.within(budget)]

    def __repr__(self):
        return f"Fn({self.fn!r})"


def _leb128(n: int) -> bytes:
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_leb128(buf: bytes, pos: int) -> tuple[int, int]:
    n = shift = 0
    while True:
        byte = buf[pos]
        pos += 1
        n |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            return n, pos


def _frame(tag: int, payload: bytes) -> bytes:
    return bytes([tag]) + _leb128(len(payload)) + payload


def encode(value: Any, budget: int = DEFAULT_BUDGET) -> bytes:
    """Canonical encoding of ``value``; functions are tabulated under ``budget``."""
    if value == () and isinstance(value, tuple):
        return _frame(TAG_UNIT, b"")
    if isinstance(value, int):
        if value < 0:
            raise TypeError(f"negative integer {value} has no canonical encoding")
        return _frame(TAG_NAT, _leb128(int(value)))
    if isinstance(value, tuple):
        if len(value) != 2:
            raise TypeError(f"only pairs are encodable, got a {len(value)}-tuple")
        return _frame(TAG_PAIR, encode(value[0], budget) + encode(value[1], budget))
    if isinstance(value, Left):
        return _frame(TAG_LEFT, encode(value.value, budget))
    if isinstance(value, Right):
        return _frame(TAG_RIGHT, encode(value.value, budget))
    if isinstance(value, Fn):
        rows = sorted((encode(k, budget), encode(v, budget)) for k, v in value.table(budget))
        return _frame(TAG_TAB, b"".join(k + v for k, v in rows))
    canon = getattr(value, "canon", None)
    if canon is not None:
        return encode(canon(), budget)
    raise TypeError(f"no canonical encoding for {type(value).__name__}")


def same(x: Any, y: Any, budget: int = DEFAULT_BUDGET) -> bool:
    return encode(x, budget) == encode(y, budget)


def decode(buf: bytes) -> Any:
    """Inverse of ``encode`` on first-order values; tables come back as :class:`Table`."""
    value, pos = _decode_at(buf, 0)
    if pos != len(buf):
        raise ValueError("trailing bytes after encoded value")
    return value


@dataclass(frozen=True)
class Table:
    """Decoded form of a tabulated function."""
    rows: tuple


def _decode_at(buf: bytes, pos: int) -> tuple[Any, int]:
    tag = buf[pos]
    length, pos = _read_leb128(buf, pos + 1)
    end = pos + length
    if tag == TAG_UNIT:
        value = ()
    elif tag == TAG_NAT:
        value, _ = _read_leb128(buf, pos)
    elif tag == TAG_PAIR:
        first, mid = _decode_at(buf, pos)
        second, _ = _decode_at(buf, mid)
        value = (first, second)
    elif tag in (TAG_LEFT, TAG_RIGHT):
        inner, _ = _decode_at(buf, pos)
        value = Left(inner) if tag == TAG_LEFT else Right(inner)
    elif tag == TAG_TAB:
        rows = []
        while pos < end:
            k, pos = _decode_at(buf, pos)
            v, pos = _decode_at(buf, pos)
            rows.append((k, v))
        value = Table(tuple(rows))
    else:
        raise ValueError(f"unknown tag 0x{tag:02x}")
    return value, end


def function_space(domain: Enumeration, codomain: Callable[[Any], Enumeration],
                   budget: int = DEFAULT_BUDGET) -> Enumeration:
    """Dependent function space, enumerated by tabulation.

    Listing requires the domain and each fibre to fit in ``budget``.
    """
    if not domain.available:
        return Enumeration.unavailable("function space over a non-enumerable domain")

    def generate():
        xs = domain.within(budget)
        fibres = [codomain(x).within(budget) for x in xs]
        for ys in itertools.product(*fibres):
            yield Fn.from_pairs(zip(xs, ys), domain)
    return Enumeration(generate, finite=domain.finite)


def dependent_pairs(first: Enumeration, second: Callable[[Any], Enumeration]) -> Enumeration:
    """Enumerate Σ(x : first) second(x); diagonal order when fibres are infinite."""
    if not first.available:
        return Enumeration.unavailable(first.reason)

    def generate():
        if first.finite:
            xs = list(first)
            if all(second(x).finite for x in xs):
                for x in xs:
                    for y in second(x):
                        yield (x, y)
                return
        # dovetail: at round n, take the n-th element of fibre 0..n
        iters, xs_iter, done_outer = [], iter(first), False
        while True:
            if not done_outer:
                try:
                    x = next(xs_iter)
                    iters.append((x, iter(second(x))))
                except StopIteration:
                    done_outer = True
            alive = False
            for x, it in iters:
                try:
                    y = next(it)
                except StopIteration:
                    continue
                alive = True
                yield (x, y)
            if done_outer and not alive:
                return
    return Enumeration(generate)
