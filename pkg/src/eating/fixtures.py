"""Fixture registry: example systems, behaviors, simulations and their oracles.

Behaviors are built from *raw data*, a plain function giving the label at
each position (stream index or binary heap index).  Oracles are direct
functions on raw data; they never go through the library's evaluators, so
agreement between a simulation and its oracle is a real check.

Binary trees use heap numbering: the root is node 0 and the edge taken with
direction ``a`` out of node ``h`` leads to node ``2h + 1 + a``.  Labels live
on edges, so the label of an edge is stored under the node it leads to.
"""
from __future__ import annotations

import functools
import hashlib
from dataclasses import dataclass, field
from typing import Any, Callable

from .containers import InteractionSystem, SemStep, dual
from .coval import Behavior, FuelExhausted, QueryLog, traced
from .freemonad import Leaf, node, star
from .layering import (
    BUD,
    LayeredSystems,
    Position,
    eval_layered,
    layer,
    layered_identity,
    layered_sim,
    layered_systems,
    read_layers,
    sharp_next,
)
from .simulation import LinearSim, eval_general, eval_linear, general_witness
from .values import STAR, Enumeration, Fn, encode

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def draw(seed: int, key) -> int:
    """Positional pseudo-random 64-bit value for ``key`` under ``seed``."""
    if isinstance(key, int) and key >= 0:
        return splitmix64(splitmix64(seed) ^ key)
    digest = hashlib.blake2b(encode(key), digest_size=8).digest()
    return splitmix64(splitmix64(seed) ^ int.from_bytes(digest, "little"))


def digits(seed: int) -> Callable[[int], int]:
    """Raw data with values in 0..9."""
    return lambda k: draw(seed, k) % 10


# -- systems --------------------------------------------------------------------

BOOLS = Enumeration.of([0, 1])
ONE = Enumeration.of([STAR])

W_STREAM = InteractionSystem(lambda i: ONE, lambda i, a: Enumeration.naturals(),
                             lambda i, a, d: STAR, name="W_STREAM", singleton_responses=False)

W_INC = InteractionSystem(lambda i: ONE, lambda i, a: Enumeration.naturals(i + 1),
                          lambda i, a, d: d, name="W_INC", singleton_responses=False)

W_BIN = InteractionSystem(lambda i: BOOLS, lambda i, a: Enumeration.naturals(),
                          lambda i, a, d: STAR, name="W_BIN", singleton_responses=False)


def _fbt_actions(i):
    def generate():
        k = 1
        while True:
            for j in range(k):
                yield (k, j)
            k += 1
    return Enumeration(generate, finite=False)


W_FBT = InteractionSystem(_fbt_actions, lambda i, a: Enumeration.naturals(),
                          lambda i, a, d: STAR, name="W_FBT", singleton_responses=False)

FIN_ACTIONS = {0: (0, 1), 1: (0,)}
FIN_RESPONSES = {(0, 0): (0, 1), (0, 1): (0,), (1, 0): (0, 1)}

W_FIN = InteractionSystem(
    lambda i: Enumeration.of(FIN_ACTIONS[i]),
    lambda i, a: Enumeration.of(FIN_RESPONSES[(i, a)]),
    lambda i, a, d: (i + a + d) % 2,
    name="W_FIN",
)

SYSTEMS = {"stream": W_STREAM, "inc": W_INC, "bin": W_BIN, "fbt": W_FBT, "fin": W_FIN}
ROOTS = {"stream": STAR, "inc": 0, "bin": STAR, "fbt": STAR, "fin": 0}


# -- behaviors from raw data -------------------------------------------------------

def stream_from(raw: Callable[[int], int]) -> Behavior:
    def step(i, k):
        return SemStep(Fn(lambda a: raw(k), ONE), lambda a: k + 1)
    return Behavior(dual(W_STREAM), STAR, 0, step)


def inc_from(raw: Callable[[int], int], start: int = 0) -> Behavior:
    """``raw`` must be strictly increasing with ``raw(0) > start``."""
    def step(i, k):
        return SemStep(Fn(lambda a: raw(k), ONE), lambda a: k + 1)
    return Behavior(dual(W_INC), start, 0, step)


def bin_from(raw: Callable[[int], int]) -> Behavior:
    def step(i, h):
        return SemStep(Fn(lambda a: raw(2 * h + 1 + a), BOOLS), lambda a: 2 * h + 1 + a)
    return Behavior(dual(W_BIN), STAR, 0, step)


def fin_from(raw: Callable[[int, int], int]) -> Behavior:
    """``raw(node, action)`` picks a response by index; node ``k`` has children ``4k+1+2a+d``."""
    def step(i, k):
        def answer(a):
            ds = FIN_RESPONSES[(i, a)]
            return ds[raw(k, a) % len(ds)]
        return SemStep(Fn(answer, Enumeration.of(FIN_ACTIONS[i])),
                       lambda a: 4 * k + 1 + 2 * a + answer(a))
    return Behavior(dual(W_FIN), 0, 0, step)


def fbt_from(raw: Callable[[int, int, int], int]) -> Behavior:
    """``raw(node, k, j)`` labels child ``j`` of a ``k``-branching node."""
    def step(i, h):
        return SemStep(Fn(lambda kj: raw(h, *kj), _fbt_actions(STAR)),
                       lambda kj: draw(h, kj) & 0xFFFFFFFF)
    return Behavior(dual(W_FBT), STAR, 0, step)


def nat_raw(k):
    return k


def inc_raw(seed: int) -> Callable[[int], int]:
    cache = [0]

    def raw(k):
        while len(cache) <= k + 1:
            cache.append(cache[-1] + 1 + draw(seed, len(cache)) % 3)
        return cache[k + 1]
    return raw


# -- observations and tree indexing -------------------------------------------------

def stream_prefix(T: Behavior, n: int) -> list:
    out = []
    for _ in range(n):
        f, go = T.unfold()
        out.append(f(STAR))
        T = go(STAR)
    return out


def bin_levels(T: Behavior, n: int) -> dict:
    """Edge labels of the first ``n`` levels, keyed by heap index."""
    out = {}

    def visit(T, h, left):
        if left == 0:
            return
        f, go = T.unfold()
        for a in (0, 1):
            c = 2 * h + 1 + a
            out[c] = f(a)
            visit(go(a), c, left - 1)
    visit(T, 0, n)
    return out


def fin_observe(T: Behavior, n: int) -> list:
    if n == 0:
        return []
    f, go = T.unfold()
    return [(a, f(a), fin_observe(go(a), n - 1)) for a in FIN_ACTIONS[T.index]]


def heap_level(k: int) -> range:
    """Heap nodes whose incoming edges form layer ``k``."""
    return range(2 ** (k + 1) - 1, 2 ** (k + 2) - 1)


def heap_path(c: int) -> list:
    path = []
    while c > 0:
        path.append((c - 1) % 2)
        c = (c - 1) // 2
    path.reverse()
    return path


def heap_node(path) -> int:
    h = 0
    for a in path:
        h = 2 * h + 1 + a
    return h


def position_node(p: Position) -> int:
    return heap_node(p.steps)


OBSERVERS = {"stream": stream_prefix, "inc": stream_prefix, "bin": bin_levels, "fin": fin_observe}


# -- oracles ---------------------------------------------------------------------------

def oracle_sumblock(raw, n):
    out, k = [], 0
    while len(out) < n:
        head = raw(k)
        out.append(sum(raw(k + 1 + j) for j in range(head)))
        k += 1 + head
    return out


def oracle_pairsum(raw, n):
    return [raw(2 * k) + raw(2 * k + 1) for k in range(n)]


def oracle_scan(raw, n):
    out, acc = [], 0
    for k in range(n):
        acc += raw(k)
        out.append(acc)
    return out


def oracle_zigzag(raw, n):
    out, h = [], 0
    for _ in range(n):
        c1 = 2 * h + 1
        c2 = 2 * c1 + 2
        out.append(raw(c1) + raw(c2))
        h = c2
    return out


def _heap_map(n, label):
    return {c: label(c) for k in range(n) for c in heap_level(k)}


def oracle_mirror(raw, n):
    return _heap_map(n, lambda c: raw(heap_node([1 - a for a in heap_path(c)])))


def oracle_pathsum(raw, n):
    def label(c):
        total = 0
        while c > 0:
            total += raw(c)
            c = (c - 1) // 2
        return total
    return _heap_map(n, label)


def oracle_skiplevel(raw, n):
    return _heap_map(n, lambda c: raw(heap_node([a for a in heap_path(c) for _ in (0, 1)])))


def oracle_layersum(raw, n):
    return [sum(raw(c) for c in heap_level(k)) for k in range(n)]


def oracle_layer_pairsum(raw, n):
    return [sum(raw(c) for c in heap_level(2 * k)) + sum(raw(c) for c in heap_level(2 * k + 1))
            for k in range(n)]


def oracle_spread(raw, n):
    sums = oracle_layersum(raw, n)
    return {c: sums[k] for k in range(n) for c in heap_level(k)}


def oracle_fin(raw, n, i=0, k=0):
    if n == 0:
        return []
    out = []
    for a in FIN_ACTIONS[i]:
        ds = FIN_RESPONSES[(i, a)]
        d = ds[raw(k, a) % len(ds)]
        out.append((a, d, oracle_fin(raw, n - 1, (i + a + d) % 2, 4 * k + 1 + 2 * a + d)))
    return out


# -- simulations -----------------------------------------------------------------------

def linear_map(w1, w2, h, name):
    """One read per output; the response is transformed by ``h``."""
    return LinearSim(w1, w2, lambda i1, i2, r, a: (a, lambda d: (h(d), r)), name=name)


def sim_scan():
    def rho(i1, i2, acc, a):
        return a, lambda d: (acc + d, acc + d)
    return LinearSim(W_STREAM, W_STREAM, rho, name="scan")


def sim_inc_double():
    return linear_map(W_INC, W_INC, lambda d: 2 * d, "inc_double")


def sim_bin_mirror():
    return LinearSim(W_BIN, W_BIN, lambda i1, i2, r, a: (1 - a, lambda d: (d, r)), name="bin_mirror")


def sim_bin_pathsum():
    def rho(i1, i2, acc, a):
        return a, lambda d: (acc + d, acc + d)
    return LinearSim(W_BIN, W_BIN, rho, name="bin_pathsum")


def chain(w, i, n, payload=STAR):
    """Request tree reading ``n`` single-action steps in a row."""
    if n == 0:
        return Leaf(payload)
    a = next(iter(w.actions(i)))
    return node(w, i, a, lambda d: chain(w, w.next(i, a, d), n - 1, payload))


def sim_sumblock():
    def rho(i1, i2, r, a2):
        tree = node(W_STREAM, i1, STAR, lambda n: chain(W_STREAM, STAR, n))
        return tree, lambda p: (sum(p.steps[1:]), r)
    return LinearSim(star(W_STREAM), W_STREAM, rho, name="sumblock")


def sim_pairsum():
    def rho(i1, i2, r, a2):
        return chain(W_STREAM, i1, 2), lambda p: (sum(p.steps), r)
    return LinearSim(star(W_STREAM), W_STREAM, rho, name="pairsum")


def sim_zigzag():
    def rho(i1, i2, r, a2):
        tree = node(W_BIN, i1, 0, lambda d: node(W_BIN, STAR, 1, lambda d2: Leaf()))
        return tree, lambda p: (sum(p.steps), r)
    return LinearSim(star(W_BIN), W_STREAM, rho, name="zigzag")


def sim_skiplevel():
    def rho(i1, i2, r, a2):
        tree = node(W_BIN, i1, a2, lambda d: node(W_BIN, STAR, a2, lambda d2: Leaf()))
        return tree, lambda p: (p.steps[1], r)
    return LinearSim(star(W_BIN), W_BIN, rho, name="skiplevel")


def layerwise(ls: LayeredSystems, reads: int, emit, name: str) -> LinearSim:
    """Layered simulation reading ``reads`` input layers per output layer.

    ``emit(layers)`` returns the labelling ``(p, a) -> label`` of the new
    output layer.
    """
    w2 = ls.w2

    def rho(alpha, beta, r, a2):
        def then(path):
            label = emit(list(path.steps))

            def at(p):
                def domain():
                    return iter(w2.actions(sharp_next(ls.L2.layer_base, ls.i2, beta, p)))
                return Fn(lambda a: label(p, a), Enumeration(domain))
            return layer(ls.L2, beta, at), r
        return read_layers(ls, alpha, reads), then
    return layered_sim(ls, rho, name=name)


def layer_total(l: Fn, w1: InteractionSystem) -> int:
    return sum(l(p)(a) for p in l.domain for a in w1.actions(STAR))


def emit_sums(layers: list):
    """Every output label is the total of all input layers read; computed once, on demand."""
    total = functools.cache(lambda: sum(layer_total(l, W_BIN) for l in layers))
    return lambda p, a: total()


def _flip(p: Position) -> Position:
    return Position(tuple(1 - a for a in p.steps))


# -- registry ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BehaviorEntry:
    name: str
    shape: str
    make: Callable[[int], Behavior]
    raw: Callable[[int], Any]
    doc: str = ""


@dataclass(frozen=True)
class SimEntry:
    name: str
    kind: str                 # linear | general | layered
    source: str
    target: str
    sim: LinearSim
    witness: Any
    oracle: Callable[[Any, int], Any]
    doc: str = ""

    def run(self, T: Behavior) -> Behavior:
        i2 = ROOTS[self.target]
        if self.kind == "linear":
            return eval_linear(self.sim, T.index, i2, self.witness, T)
        if self.kind == "general":
            return eval_general(self.sim, T.index, i2, self.witness, T)
        return eval_layered(self.sim, self.witness, T)


@dataclass
class FixtureRegistry:
    systems: dict = field(default_factory=dict)
    behaviors: dict = field(default_factory=dict)
    sims: dict = field(default_factory=dict)
    oracles: dict = field(default_factory=dict)

    def behavior(self, name: str, seed: int = 1) -> Behavior:
        return self.behaviors[name].make(seed)

    def inputs_for(self, sim: str) -> list[str]:
        shape = self.sims[sim].source
        return [b.name for b in self.behaviors.values() if b.shape == shape]


def register_paper_fixtures() -> FixtureRegistry:
    reg = FixtureRegistry(systems=dict(SYSTEMS))

    def behavior(name, shape, make, raw, doc):
        reg.behaviors[name] = BehaviorEntry(name, shape, make, raw, doc)

    behavior("nat", "stream", lambda s: stream_from(nat_raw), lambda s: nat_raw,
             "0, 1, 2, ...")
    behavior("zeros", "stream", lambda s: stream_from(lambda k: 0), lambda s: (lambda k: 0),
             "constant 0")
    behavior("random_stream", "stream", lambda s: stream_from(digits(s)), digits,
             "seeded digits")
    behavior("inc", "inc", lambda s: inc_from(lambda k: k + 1), lambda s: (lambda k: k + 1),
             "1, 2, 3, ... over W_INC")
    behavior("random_inc", "inc", lambda s: inc_from(inc_raw(s)), inc_raw,
             "seeded increasing stream")
    behavior("paper_bin", "bin", lambda s: bin_from(nat_raw), lambda s: nat_raw,
             "children of edge k labelled 2k+1, 2k+2")
    behavior("random_bin", "bin", lambda s: bin_from(digits(s)), digits,
             "seeded digit labels")

    def fin_raw(s):
        return lambda k, a: draw(s, (k, a))
    behavior("random_fin", "fin", lambda s: fin_from(fin_raw(s)), fin_raw,
             "seeded strategy over W_FIN")
    behavior("fbt", "fbt", lambda s: fbt_from(lambda h, k, j: j), lambda s: None,
             "child j of a k-branching node labelled j")

    def sim(name, kind, source, target, S, witness, oracle, doc):
        reg.sims[name] = SimEntry(name, kind, source, target, S, witness, oracle, doc)
        reg.oracles[name] = oracle

    def ident(raw, n):
        return [raw(k) for k in range(n)]

    sim("id_stream", "linear", "stream", "stream", linear_map(W_STREAM, W_STREAM, lambda d: d, "id"),
        STAR, ident, "identity")
    sim("map_double", "linear", "stream", "stream",
        linear_map(W_STREAM, W_STREAM, lambda d: 2 * d, "map_double"), STAR,
        lambda raw, n: [2 * raw(k) for k in range(n)], "x -> 2x")
    sim("map_succ", "linear", "stream", "stream",
        linear_map(W_STREAM, W_STREAM, lambda d: d + 1, "map_succ"), STAR,
        lambda raw, n: [raw(k) + 1 for k in range(n)], "x -> x+1")
    sim("scan", "linear", "stream", "stream", sim_scan(), 0, oracle_scan, "running sum")
    sim("id_inc", "linear", "inc", "inc", linear_map(W_INC, W_INC, lambda d: d, "id_inc"), STAR,
        ident, "identity on increasing streams")
    sim("inc_double", "linear", "inc", "inc", sim_inc_double(), STAR,
        lambda raw, n: [2 * raw(k) for k in range(n)], "x -> 2x, still increasing")
    sim("id_bin", "linear", "bin", "bin", linear_map(W_BIN, W_BIN, lambda d: d, "id_bin"), STAR,
        lambda raw, n: _heap_map(n, raw), "identity on binary trees")
    sim("bin_map", "linear", "bin", "bin", linear_map(W_BIN, W_BIN, lambda d: 2 * d, "bin_map"),
        STAR, lambda raw, n: _heap_map(n, lambda c: 2 * raw(c)), "double every label")
    sim("bin_mirror", "linear", "bin", "bin", sim_bin_mirror(), STAR, oracle_mirror,
        "swap left and right everywhere")
    sim("bin_pathsum", "linear", "bin", "bin", sim_bin_pathsum(), 0, oracle_pathsum,
        "label = sum of labels on the path from the root")
    sim("id_fin", "linear", "fin", "fin", linear_map(W_FIN, W_FIN, lambda d: d, "id_fin"), STAR,
        oracle_fin, "identity on W_FIN strategies")

    sim("sumblock", "general", "stream", "stream", sim_sumblock(), STAR, oracle_sumblock,
        "read head n, output the sum of the next n elements")
    sim("pairsum", "general", "stream", "stream", sim_pairsum(), STAR, oracle_pairsum,
        "sum of consecutive pairs")
    sim("zigzag", "general", "bin", "stream", sim_zigzag(), STAR, oracle_zigzag,
        "walk left then right, output both labels' sum")
    sim("skiplevel", "general", "bin", "bin", sim_skiplevel(), STAR, oracle_skiplevel,
        "direction a goes two levels down the same way")

    bs = layered_systems(W_BIN, STAR, W_STREAM, STAR)
    bb = layered_systems(W_BIN, STAR, W_BIN, STAR)

    sim("layersum", "layered", "bin", "stream", layerwise(bs, 1, emit_sums, "layersum"),
        STAR, oracle_layersum, "sum of each layer")
    sim("layer_pairsum", "layered", "bin", "stream", layerwise(bs, 2, emit_sums, "layer_pairsum"),
        STAR, oracle_layer_pairsum, "sum of each pair of layers")
    sim("layer_id", "layered", "bin", "bin", layered_identity(bb), general_witness(BUD, STAR),
        lambda raw, n: _heap_map(n, raw), "identity, layer by layer")
    sim("layer_map", "layered", "bin", "bin",
        layerwise(bb, 1, lambda ls_: lambda p, a: 2 * ls_[0](p)(a), "layer_map"),
        STAR, lambda raw, n: _heap_map(n, lambda c: 2 * raw(c)), "double every label, layer by layer")
    sim("layer_mirror", "layered", "bin", "bin",
        layerwise(bb, 1, lambda ls_: lambda p, a: ls_[0](_flip(p))(1 - a), "layer_mirror"),
        STAR, oracle_mirror, "reverse every layer")
    sim("layer_spread", "layered", "bin", "bin", layerwise(bb, 1, emit_sums, "layer_spread"),
        STAR, oracle_spread, "every label of layer k becomes the sum of input layer k")
    return reg


# -- read/output alternation -------------------------------------------------------------

def reads_per_output(entry: SimEntry, T: Behavior, outputs: int, fuel: int = 10_000) -> list[int]:
    """Distinct input nodes first queried while producing each of the first ``outputs`` outputs.

    Raises :class:`FuelExhausted` if any single output needs more than ``fuel`` queries.
    """
    log = QueryLog()
    U = entry.run(traced(T, log))
    seen, counts = set(), []
    for _ in range(outputs):
        log.fuel = len(log.paths) + fuel
        f, go = U.unfold()
        f(STAR)
        U = go(STAR)
        fresh = log.distinct() - seen
        counts.append(len(fresh))
        seen |= fresh
    return counts


@dataclass(frozen=True)
class ShapeReport:
    sim: str
    reads: list
    expected: list
    ok: bool


def stream_transducer_shape_check(reg: FixtureRegistry | None = None, outputs: int = 5,
                                  fuel: int = 10_000) -> list[ShapeReport]:
    """Every output of a stream transducer is a finite burst of reads followed by one emission."""
    reg = reg or register_paper_fixtures()
    nat = reg.behavior("nat")
    cases = [
        ("map_double", [1] * outputs),
        ("sumblock", [2 ** k for k in range(outputs)]),
        ("pairsum", [2] * outputs),
    ]
    out = []
    for name, expected in cases:
        try:
            reads = reads_per_output(reg.sims[name], nat, outputs, fuel)
        except FuelExhausted:
            reads = None
        out.append(ShapeReport(name, reads, expected, reads == expected))
    return out
