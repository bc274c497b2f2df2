"""Law suites shared by the command line and the test suite.

Each suite returns a list of :class:`LawResult`; a law passes only if every
sampled case passes.  Tree-shaped outputs are compared in full to a modest
depth and along seeded random branches to the full depth.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .containers import (
    InteractionSystem,
    SemStep,
    ac_backward,
    ac_forward,
    compose_is,
    dual,
    dual_backward,
    dual_forward,
    ext_map,
    hom,
)
from .coval import QueryLog, bisim_depth, traced
from .fixtures import (
    FIN_ACTIONS,
    FIN_RESPONSES,
    OBSERVERS,
    ROOTS,
    W_BIN,
    W_FIN,
    W_INC,
    W_STREAM,
    FixtureRegistry,
    draw,
    register_paper_fixtures,
    stream_transducer_shape_check,
)
from .freemonad import Leaf, Node, eat, from_star_behavior, n_star, to_star_behavior
from .layering import (
    BUD,
    NotSingletonResponses,
    dd_unwrap,
    dd_wrap,
    eval_layered,
    from_layers,
    layered,
    layered_bullet,
    to_layers,
)
from .simulation import (
    bullet,
    bullet_witness,
    cobind,
    cobind_witness,
    compose_witness,
    epsilon,
    eval_general,
    eval_linear,
    hom_action,
    sim_compose,
)
from .values import DEFAULT_BUDGET, STAR, Enumeration, Fn, encode

# budget for comparing whole layers of a binary tree (2^k positions at depth k)
LAYER_BUDGET = 4096


@dataclass(frozen=True)
class LawResult:
    suite: str
    name: str
    passed: bool
    cases: int = 0
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}.{self.name} [{self.cases} cases]{extra}"


class _Law:
    """Collects case outcomes for one law."""

    def __init__(self, suite: str, name: str):
        self.suite, self.name = suite, name
        self.cases = 0
        self.failures: list[str] = []

    def check(self, ok: bool, label: str = ""):
        self.cases += 1
        if not ok:
            self.failures.append(label or f"case {self.cases}")

    def result(self) -> LawResult:
        detail = "failed: " + ", ".join(self.failures[:5]) if self.failures else ""
        return LawResult(self.suite, self.name, not self.failures, self.cases, detail)


# -- random request trees ------------------------------------------------------------

def random_tree(w: InteractionSystem, i, seed: int, depth: int, key=STAR):
    """A seeded request tree of depth at most ``depth``; children are built on demand."""
    h = draw(seed, key)
    actions = w.actions(i).take(4)
    if depth == 0 or not actions or h % 4 == 0:
        return Leaf()
    a = actions[(h >> 8) % len(actions)]
    return Node(a, Fn(lambda d: random_tree(w, w.next(i, a, d), seed, depth - 1, (d, key)),
                      w.responses(i, a)))


def tree_sampler(w: InteractionSystem, seed: int, width: int = 2, depth: int = 3):
    """``explore`` argument for comparing behaviors over ``dual(star(w))``."""
    counter = itertools.count()

    def explore(system, i, action):
        return [random_tree(w, i, draw(seed, next(counter)), depth) for _ in range(width)]
    return explore


def branch_sampler(seed: int, width: int = 1):
    rng = random.Random(seed)

    def descend(ds):
        return rng.sample(ds, min(width, len(ds)))
    return descend


def agree(T1, T2, shape: str, depth: int, seed: int = 0, full: int = 8,
          budget: int = DEFAULT_BUDGET) -> bool:
    """Depth-bounded bisimilarity, with branch sampling for tree shapes."""
    if shape in ("stream", "inc"):
        return bisim_depth(T1, T2, depth, budget)
    if not bisim_depth(T1, T2, min(depth, full), budget):
        return False
    return all(bisim_depth(T1, T2, depth, budget, descend=branch_sampler(seed * 7 + j))
               for j in range(3))


RANDOM_INPUT = {"stream": "random_stream", "inc": "random_inc", "bin": "random_bin",
                "fin": "random_fin"}


# -- ac: composition, duality and the internal hom on W_FIN ---------------------------

def _nested(w1, w2, i, xs):
    """Every element of ``ext(w1)(ext(w2)(X))`` at ``i`` with payloads drawn from ``xs``."""
    for a1 in w1.actions(i):
        d1s = list(w1.responses(i, a1))
        options = []
        for d1 in d1s:
            j = w1.next(i, a1, d1)
            opts = []
            for a2 in w2.actions(j):
                d2s = list(w2.responses(j, a2))
                for payload in itertools.product(xs, repeat=len(d2s)):
                    opts.append((a2, dict(zip(d2s, payload))))
            options.append(opts)
        for combo in itertools.product(*options):
            table = dict(zip(d1s, combo))
            yield SemStep(a1, lambda d1, t=table: SemStep(t[d1][0], lambda d2, p=t[d1][1]: p[d2]))


def _flat(w, i, xs):
    for act in w.actions(i):
        ds = list(w.responses(i, act))
        for payload in itertools.product(xs, repeat=len(ds)):
            table = {encode(d): x for d, x in zip(ds, payload)}
            yield SemStep(act, lambda d, t=table: t[encode(d)])


def _same_nested(w1, w2, i, s, u) -> bool:
    if encode(s.action) != encode(u.action):
        return False
    for d1 in w1.responses(i, s.action):
        inner_s, inner_u = s.cont(d1), u.cont(d1)
        if encode(inner_s.action) != encode(inner_u.action):
            return False
        j = w1.next(i, s.action, d1)
        if any(inner_s.cont(d2) != inner_u.cont(d2) for d2 in w2.responses(j, inner_s.action)):
            return False
    return True


def _same_flat(w, i, s, u) -> bool:
    return (encode(s.action) == encode(u.action)
            and all(s.cont(d) == u.cont(d) for d in w.responses(i, s.action)))


TRIV = InteractionSystem(lambda i: Enumeration.of([0, 1, 2]), lambda i, a: Enumeration.of([STAR]),
                         lambda i, a, d: (i + a) % 2, name="TRIV", singleton_responses=True)


def fin_function_count(i) -> int:
    """Composite actions of W_FIN with itself, counted straight from the tables."""
    total = 0
    for a1 in FIN_ACTIONS[i]:
        prod = 1
        for d1 in FIN_RESPONSES[(i, a1)]:
            prod *= len(FIN_ACTIONS[(i + a1 + d1) % 2])
        total += prod
    return total


def suite_ac(seed: int = 1, budget: int = DEFAULT_BUDGET, reg: FixtureRegistry | None = None):
    reg = reg or register_paper_fixtures()
    w, xs = W_FIN, (0, 1)
    ww = compose_is(w, w, budget)
    laws = {n: _Law("ac", n) for n in (
        "ext_map_identity", "ext_map_composition", "compose_action_count", "compose_next",
        "ac_backward_forward", "ac_forward_backward", "ac_preserves_states",
        "dual_backward_forward", "dual_forward_backward", "double_dual_bijection",
        "hom_typing", "hom_stream_map")}
    for i in (0, 1):
        for s in _flat(w, i, xs):
            ident = ext_map(w, i, s, lambda x: x)
            laws["ext_map_identity"].check(_same_flat(w, i, s, ident), f"i={i}")
            g1, g2 = (lambda x: x + 1), (lambda x: 3 * x)
            twice = ext_map(w, i, ext_map(w, i, s, g1), g2)
            once = ext_map(w, i, s, lambda x: g2(g1(x)))
            laws["ext_map_composition"].check(_same_flat(w, i, twice, once), f"i={i}")

        laws["compose_action_count"].check(
            len(list(ww.actions(i))) == fin_function_count(i), f"i={i}")
        for act in ww.actions(i):
            a1, f = act
            for d1, d2 in ww.responses(i, act):
                stepwise = w.next(w.next(i, a1, d1), f(d1), d2)
                laws["compose_next"].check(ww.next(i, act, (d1, d2)) == stepwise, f"i={i}")

        for s in _nested(w, w, i, xs):
            flat = ac_forward(w, w, i, s)
            laws["ac_backward_forward"].check(
                _same_nested(w, w, i, s, ac_backward(w, w, i, flat)), f"i={i}")
            a1, f = flat.action
            for d1, d2 in ww.responses(i, flat.action):
                inner = s.cont(d1)
                reached = w.next(w.next(i, a1, d1), inner.action, d2)
                laws["ac_preserves_states"].check(
                    ww.next(i, flat.action, (d1, d2)) == reached
                    and flat.cont((d1, d2)) == inner.cont(d2), f"i={i}")
        for s in _flat(ww, i, xs):
            back = ac_forward(w, w, i, ac_backward(w, w, i, s))
            laws["ac_forward_backward"].check(_same_flat(ww, i, s, back), f"i={i}")

        wd = dual(w)
        for f in wd.actions(i):
            for payload in itertools.product(xs, repeat=len(FIN_ACTIONS[i])):
                table = dict(zip(FIN_ACTIONS[i], payload))
                s = SemStep(f, lambda a, t=table: t[a])
                back = dual_backward(w, i, dual_forward(w, i, s))
                laws["dual_backward_forward"].check(_same_flat(wd, i, s, back), f"i={i}")
        fibres = [[(d, x) for d in FIN_RESPONSES[(i, a)] for x in xs] for a in FIN_ACTIONS[i]]
        for combo in itertools.product(*fibres):
            g = Fn.from_pairs(zip(FIN_ACTIONS[i], combo), w.actions(i))
            h = dual_forward(w, i, dual_backward(w, i, g))
            laws["dual_forward_backward"].check(
                all(g(a) == h(a) for a in FIN_ACTIONS[i]), f"i={i}")

    LF = layered(dual(W_FIN), 0)
    grown = LF.next(BUD, next(iter(LF.actions(BUD))), STAR)
    for v, states in ((TRIV, (0, 1)), (LF, (BUD, grown))):
        vdd = dual(dual(v))
        for i in states:
            only = next(iter(dual(v).actions(i)))
            images = [F(only) for F in vdd.actions(i)]
            originals = {encode(a, budget) for a in v.actions(i)}
            ok = (len(images) == len(originals)
                  and {encode(a, budget) for a in images} == originals)
            for F in vdd.actions(i):
                d = next(iter(v.responses(i, F(only))))
                ok = ok and encode(vdd.next(i, F, only)) == encode(v.next(i, F(only), d))
            laws["double_dual_bijection"].check(ok, v.name)

    fin_id = reg.sims["id_fin"].sim
    h = hom(W_FIN, W_FIN, budget)
    for i in (0, 1):
        members = {encode(x) for x in h.actions((i, i))}
        laws["hom_typing"].check(encode(hom_action(fin_id, i, i, STAR)) in members, f"i={i}")
    f, phi = hom_action(reg.sims["map_double"].sim, STAR, STAR, STAR)
    hs = hom(W_STREAM, W_STREAM, budget)
    for n in (0, 1, 7, 1000):
        laws["hom_stream_map"].check(
            f(STAR) == STAR and phi(STAR)(n) == 2 * n
            and hs.next((STAR, STAR), (f, phi), (STAR, n)) == (STAR, STAR), f"n={n}")
    return [law.result() for law in laws.values()]


# -- functoriality of evaluation ------------------------------------------------------

LINEAR_PAIRS = [
    ("map_double", "map_succ"), ("scan", "map_double"), ("map_succ", "scan"),
    ("inc_double", "id_inc"), ("bin_map", "bin_mirror"), ("bin_pathsum", "bin_mirror"),
    ("bin_mirror", "bin_pathsum"),
]
GENERAL_PAIRS = [
    ("pairsum", "sumblock"), ("sumblock", "pairsum"), ("sumblock", "sumblock"),
    ("zigzag", "skiplevel"), ("skiplevel", "skiplevel"),
]
LAYERED_PAIRS = [("layersum", "layer_map"), ("layer_spread", "layer_mirror"),
                 ("layer_map", "layer_id")]


def suite_functoriality(seed: int = 1, budget: int = DEFAULT_BUDGET,
                        reg: FixtureRegistry | None = None, samples: int = 3, depth: int = 20,
                        layered_depth: int = 12):
    reg = reg or register_paper_fixtures()
    lin, gen, lay = (_Law("functoriality", n) for n in ("linear", "general", "layered"))
    for s_name, r_name in LINEAR_PAIRS:
        S, R = reg.sims[s_name], reg.sims[r_name]
        for k in range(samples):
            T = reg.behavior(RANDOM_INPUT[R.source], seed + k)
            i1, i2, i3 = T.index, ROOTS[R.target], ROOTS[S.target]
            left = eval_linear(sim_compose(S.sim, R.sim), i1, i3,
                               compose_witness(i2, R.witness, S.witness), T)
            right = eval_linear(S.sim, i2, i3, S.witness, eval_linear(R.sim, i1, i2, R.witness, T))
            lin.check(agree(left, right, S.target, depth, seed + k), f"{s_name} o {r_name}")
    for s_name, r_name in GENERAL_PAIRS:
        S, R = reg.sims[s_name], reg.sims[r_name]
        for k in range(samples):
            T = reg.behavior(RANDOM_INPUT[R.source], seed + k)
            i1, i2, i3 = T.index, ROOTS[R.target], ROOTS[S.target]
            left = eval_general(bullet(S.sim, R.sim), i1, i3,
                                bullet_witness(i1, i2, R.witness, S.witness), T)
            right = eval_general(S.sim, i2, i3, S.witness,
                                 eval_general(R.sim, i1, i2, R.witness, T))
            gen.check(agree(left, right, S.target, depth, seed + k), f"{s_name} . {r_name}")
    for s_name, r_name in LAYERED_PAIRS:
        S, R = reg.sims[s_name], reg.sims[r_name]
        for k in range(samples):
            T = reg.behavior(RANDOM_INPUT[R.source], seed + k)
            left = eval_layered(layered_bullet(S.sim, R.sim),
                                bullet_witness(BUD, BUD, R.witness, S.witness), T)
            right = eval_layered(S.sim, S.witness, eval_layered(R.sim, R.witness, T))
            lay.check(agree(left, right, S.target, layered_depth, seed + k, full=6),
                      f"{s_name} . {r_name}")
    return [lin.result(), gen.result(), lay.result()]


# -- comonad laws ---------------------------------------------------------------------

def star_agree(U1, U2, w, shape, depth, seed, sampled_depth=4) -> bool:
    """Compare two behaviors over ``dual(star(w))``.

    Single requests are compared through ``from_star_behavior`` to ``depth``;
    seeded random request trees are compared to ``sampled_depth``.
    """
    if not agree(from_star_behavior(w, U1), from_star_behavior(w, U2), shape, depth, seed):
        return False
    return bisim_depth(U1, U2, sampled_depth, explore=tree_sampler(w, seed))


COMONAD_GENERAL = ["sumblock", "pairsum", "zigzag", "skiplevel"]
COMONAD_CHAINS = [("pairsum", "sumblock"), ("sumblock", "pairsum"), ("zigzag", "skiplevel"),
                  ("skiplevel", "skiplevel")]


def suite_comonad(seed: int = 1, budget: int = DEFAULT_BUDGET,
                  reg: FixtureRegistry | None = None, samples: int = 2, depth: int = 10):
    reg = reg or register_paper_fixtures()
    law1, law2, law3 = (_Law("comonad", n) for n in (
        "cobind_epsilon_is_identity", "epsilon_after_cobind", "cobind_of_composite"))
    for shape, w in (("stream", W_STREAM), ("bin", W_BIN), ("fin", W_FIN)):
        for k in range(samples):
            T = reg.behavior(RANDOM_INPUT[shape], seed + k)
            i = T.index
            U = to_star_behavior(w, T)
            left = eval_linear(cobind(epsilon(w)), i, i, cobind_witness(i, STAR), U)
            law1.check(star_agree(left, U, w, shape, depth, seed + k), shape)
    for name in COMONAD_GENERAL:
        R = reg.sims[name]
        w1 = R.sim.source.star_of
        for k in range(samples):
            T = reg.behavior(RANDOM_INPUT[R.source], seed + k)
            i1, i2 = T.index, ROOTS[R.target]
            S = sim_compose(epsilon(R.sim.target), cobind(R.sim))
            left = eval_general(S, i1, i2, compose_witness(i2, cobind_witness(i1, R.witness), STAR), T)
            right = eval_general(R.sim, i1, i2, R.witness, T)
            law2.check(agree(left, right, R.target, depth, seed + k), name)
    for s_name, r_name in COMONAD_CHAINS:
        S, R = reg.sims[s_name], reg.sims[r_name]
        w1 = R.sim.source.star_of
        for k in range(samples):
            T = reg.behavior(RANDOM_INPUT[R.source], seed + k)
            i1, i2, i3 = T.index, ROOTS[R.target], ROOTS[S.target]
            U = to_star_behavior(w1, T)
            lhs = cobind(bullet(S.sim, R.sim))
            rhs = sim_compose(cobind(S.sim), cobind(R.sim))
            left = eval_linear(lhs, i1, i3,
                               cobind_witness(i1, bullet_witness(i1, i2, R.witness, S.witness)), U)
            right = eval_linear(rhs, i1, i3, compose_witness(
                i2, cobind_witness(i1, R.witness), cobind_witness(i2, S.witness)), U)
            w3 = S.sim.target
            law3.check(star_agree(left, right, w3, S.target, depth, seed + k, sampled_depth=3),
                       f"{s_name} . {r_name}")
    return [law1.result(), law2.result(), law3.result()]


# -- isomorphisms up to bisimilarity ---------------------------------------------------

ISO_INPUTS = [("nat", "stream"), ("random_stream", "stream"), ("random_inc", "inc"),
              ("paper_bin", "bin"), ("random_bin", "bin"), ("random_fin", "fin")]
LAYER_INPUTS = [("nat", "stream"), ("random_stream", "stream"), ("paper_bin", "bin"),
                ("random_bin", "bin")]


def suite_isos(seed: int = 1, budget: int = DEFAULT_BUDGET, reg: FixtureRegistry | None = None,
               stream_depth: int = 30, tree_depth: int = 10):
    reg = reg or register_paper_fixtures()
    laws = {n: _Law("isos", n) for n in (
        "from_star_to_star", "from_layers_to_layers", "to_layers_from_layers",
        "dd_unwrap_wrap", "dd_wrap_unwrap", "dd_rejects_branching")}

    def depth_for(shape):
        return stream_depth if shape in ("stream", "inc") else tree_depth

    for name, shape in ISO_INPUTS:
        T = reg.behavior(name, seed)
        w = T.system.dual_of
        back = from_star_behavior(w, to_star_behavior(w, T))
        laws["from_star_to_star"].check(agree(back, T, shape, depth_for(shape), seed), name)
    for name, shape in LAYER_INPUTS:
        T = reg.behavior(name, seed)
        k = depth_for(shape)
        U = to_layers(T)
        laws["from_layers_to_layers"].check(agree(from_layers(U), T, shape, k, seed), name)
        laws["to_layers_from_layers"].check(
            bisim_depth(to_layers(from_layers(U), U.system), U, k, LAYER_BUDGET), name)
        laws["dd_unwrap_wrap"].check(bisim_depth(dd_unwrap(dd_wrap(U)), U, k, LAYER_BUDGET), name)
        V = dd_wrap(U)
        laws["dd_wrap_unwrap"].check(bisim_depth(dd_wrap(dd_unwrap(V)), V, k, LAYER_BUDGET), name)
    for name in ("random_bin", "random_fin"):
        T = reg.behavior(name, seed)
        try:
            dd_wrap(T).unfold()[0](None)
            rejected = False
        except NotSingletonResponses:
            rejected = True
        laws["dd_rejects_branching"].check(rejected, name)
    return [law.result() for law in laws.values()]


# -- eating -------------------------------------------------------------------------------

EAT_SYSTEMS = [("stream", W_STREAM), ("inc", W_INC), ("bin", W_BIN), ("fin", W_FIN)]


def navigate(T, t, path):
    """Walk ``T`` along the actions of ``t`` selected by ``path``, without eating."""
    for d in path.steps:
        f, go = T.unfold()
        if f(t.action) != d:
            return None
        T, t = go(t.action), t(d)
    return T if isinstance(t, Leaf) else None


def suite_eating(seed: int = 1, budget: int = DEFAULT_BUDGET, reg: FixtureRegistry | None = None,
                 trees: int = 100, depth: int = 20):
    reg = reg or register_paper_fixtures()
    index, residual = _Law("eating", "residual_index_is_endpoint"), _Law("eating", "residual_is_navigated")
    for shape, w in EAT_SYSTEMS:
        for k in range(trees):
            T = reg.behavior(RANDOM_INPUT[shape], seed + k)
            t = random_tree(w, T.index, draw(seed, (k, 7)), 4)
            meal = eat(w, T.index, t, T)
            index.check(encode(meal.residual.index) == encode(n_star(w, T.index, t, meal.path)),
                        f"{shape}#{k}")
            nav = navigate(T, t, meal.path)
            residual.check(nav is not None and agree(meal.residual, nav, shape, depth, k, full=5),
                           f"{shape}#{k}")
    return [index.result(), residual.result()]


# -- oracle agreement ------------------------------------------------------------------------

def observation_size(entry) -> int:
    if entry.kind == "layered" or entry.target not in ("stream", "inc"):
        return 3
    return 10


def suite_oracles(seed: int = 1, budget: int = DEFAULT_BUDGET, reg: FixtureRegistry | None = None,
                  inputs: int = 100):
    reg = reg or register_paper_fixtures()
    out = []
    for name, entry in reg.sims.items():
        law = _Law("oracles", name)
        n = observation_size(entry)
        observe = OBSERVERS[entry.target]
        rand = reg.behaviors[RANDOM_INPUT[entry.source]]
        for k in range(inputs):
            got = observe(entry.run(rand.make(seed + k)), n)
            law.check(got == entry.oracle(rand.raw(seed + k), n), f"seed {seed + k}")
        out.append(law.result())
    return out


# -- laziness and query shape ---------------------------------------------------------------

def is_chain(paths) -> bool:
    ordered = sorted(paths, key=len)
    return all(len(q) == len(p) + 1 and q[:len(p)] == p for p, q in zip(ordered, ordered[1:]))


def output_walk(U, shape, rng):
    """One output step: read the answer to some action, then move on."""
    f, go = U.unfold()
    a = STAR if shape in ("stream", "inc") else rng.choice([0, 1])
    f(a)
    return go(a)


def suite_laziness(seed: int = 1, budget: int = DEFAULT_BUDGET, reg: FixtureRegistry | None = None,
                   outputs: int = 5):
    reg = reg or register_paper_fixtures()
    lazy = _Law("laziness", "no_queries_before_unfold")
    chain = _Law("laziness", "general_queries_one_branch")
    layers = _Law("laziness", "layered_queries_whole_layers")
    shape_law = _Law("laziness", "read_then_emit_shape")
    for name, entry in reg.sims.items():
        log = QueryLog()
        T = traced(reg.behavior(RANDOM_INPUT[entry.source], seed), log)
        entry.run(T)
        lazy.check(len(log) == 0, name)
    for name in ("sumblock", "pairsum", "zigzag", "skiplevel"):
        entry = reg.sims[name]
        rng = random.Random(seed)
        for k in range(3):
            log = QueryLog()
            U = entry.run(traced(reg.behavior(RANDOM_INPUT[entry.source], seed + k), log))
            seen = set()
            for _ in range(outputs):
                U = output_walk(U, entry.target, rng)
                fresh = log.distinct() - seen
                chain.check(bool(fresh) and is_chain(fresh), name)
                seen |= fresh
    for name, per_output in (("layersum", 1), ("layer_pairsum", 2), ("layer_spread", 1)):
        entry = reg.sims[name]
        log = QueryLog()
        U = entry.run(traced(reg.behavior("random_bin", seed), log))
        seen, rng, depth = set(), random.Random(seed), 0
        for _ in range(4 if per_output == 1 else 2):
            U = output_walk(U, entry.target, rng)
            fresh = log.distinct() - seen
            expected = {tuple(encode(a) for a in p)
                        for n in range(depth, depth + per_output)
                        for p in itertools.product((0, 1), repeat=n)}
            layers.check(fresh == expected, name)
            seen |= fresh
            depth += per_output
    for report in stream_transducer_shape_check(reg, outputs):
        shape_law.check(report.ok, report.sim)
    return [lazy.result(), chain.result(), layers.result(), shape_law.result()]


SUITES: dict[str, Callable[..., list[LawResult]]] = {
    "ac": suite_ac,
    "functoriality": suite_functoriality,
    "comonad": suite_comonad,
    "isos": suite_isos,
    "eating": suite_eating,
    "oracles": suite_oracles,
    "laziness": suite_laziness,
}
