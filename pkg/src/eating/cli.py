"""Command line: run transducers on fixtures, print truncations, compare behaviors, run laws.

    eating list
    eating transduce --sim sumblock --input nat --take 5
    eating show --input paper_bin --depth 2
    eating bisim --left nat --right nat --depth 50
    eating laws --suite comonad
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .coval import Behavior, TruncTree, bisim_depth, truncate
from .fixtures import FixtureRegistry, register_paper_fixtures
from .laws import SUITES
from .values import DEFAULT_BUDGET, EnumerationError, Left, Right, Table, decode

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eating", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--depth", type=int, default=20)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int, default=1)

    common(sub.add_parser("list", help="list registered systems, behaviors and simulations"))
    sp = sub.add_parser("transduce", help="evaluate a simulation on an input behavior")
    sp.add_argument("--sim", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--take", type=int, default=None, help="outputs (streams) or levels (trees)")
    common(sp)
    sp = sub.add_parser("show", help="print a truncation of a behavior")
    sp.add_argument("--input", required=True)
    sp.add_argument("--take", type=int, default=None)
    common(sp)
    sp = sub.add_parser("bisim", help="depth-bounded bisimilarity of two behaviors")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    common(sp)
    sp = sub.add_parser("laws", help="run law suites")
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    common(sp)
    return p


# -- rendering --------------------------------------------------------------------

def readable(value):
    """Decoded canonical value as plain JSON data."""
    if value == () and isinstance(value, tuple):
        return "*"
    if isinstance(value, tuple):
        return [readable(value[0]), readable(value[1])]
    if isinstance(value, Left):
        return {"inl": readable(value.value)}
    if isinstance(value, Right):
        return {"inr": readable(value.value)}
    if isinstance(value, Table):
        return {"table": [[readable(k), readable(v)] for k, v in value.rows]}
    return value


def readable_tree(t: TruncTree) -> dict:
    return {
        "i": readable(decode(t.index_enc)),
        "truncated": t.truncated,
        "br": [[readable(decode(a)), [[readable(decode(d)), readable_tree(c)] for d, c in kids]]
               for a, kids in t.branches],
    }


def stream_elements(T: Behavior, n: int):
    """First ``n`` elements if ``T`` is stream-shaped along the way, else ``None``."""
    w = T.system.dual_of
    out = []
    for _ in range(n):
        actions = w.actions(T.index).take(2)
        if len(actions) != 1:
            return None
        f, go = T.unfold()
        out.append(f(actions[0]))
        T = go(actions[0])
    return out


def render(T: Behavior, n: int, budget: int, fmt: str) -> str:
    if T.system.dual_of is not None:
        items = stream_elements(T, n)
        if items is not None:
            return json.dumps(items) if fmt == "json" else str(items)
    tree = truncate(T, n, budget)
    if fmt == "json":
        return tree.dumps()
    return json.dumps(readable_tree(tree), indent=2)


# -- commands -----------------------------------------------------------------------

@dataclass
class CliConfig:
    command: str
    sim: str | None = None
    input: str | None = None
    left: str | None = None
    right: str | None = None
    suite: str = "all"
    take: int | None = None
    depth: int = 20
    budget: int = DEFAULT_BUDGET
    format: str = "text"
    seed: int = 1


def lookup(table: dict, name, what: str):
    if name not in table:
        raise UsageError(f"unknown {what} {name!r}; candidates: {', '.join(sorted(table))}")
    return table[name]


def cmd_list(reg: FixtureRegistry, cfg: CliConfig):
    if cfg.format == "json":
        return EXIT_OK, json.dumps({
            "systems": sorted(reg.systems),
            "behaviors": {b.name: b.shape for b in reg.behaviors.values()},
            "sims": {s.name: [s.kind, s.source, s.target] for s in reg.sims.values()},
        }, indent=2, sort_keys=True)
    lines = ["systems:"]
    lines += [f"  {name:14} {w.name}" for name, w in sorted(reg.systems.items())]
    lines.append("behaviors:")
    lines += [f"  {b.name:14} over dual({b.shape})  {b.doc}" for b in reg.behaviors.values()]
    lines.append("sims:")
    lines += [f"  {s.name:14} {s.kind:8} {s.source} -> {s.target}  {s.doc}"
              for s in reg.sims.values()]
    return EXIT_OK, "\n".join(lines)


def cmd_transduce(reg: FixtureRegistry, cfg: CliConfig):
    entry = lookup(reg.sims, cfg.sim, "sim")
    b = lookup(reg.behaviors, cfg.input, "input")
    if b.shape != entry.source:
        raise UsageError(f"sim {entry.name!r} reads {entry.source} inputs; candidates: "
                         f"{', '.join(reg.inputs_for(entry.name))}")
    n = cfg.take if cfg.take is not None else cfg.depth
    return EXIT_OK, render(entry.run(b.make(cfg.seed)), n, cfg.budget, cfg.format)


def cmd_show(reg: FixtureRegistry, cfg: CliConfig):
    b = lookup(reg.behaviors, cfg.input, "input")
    n = cfg.take if cfg.take is not None else cfg.depth
    return EXIT_OK, render(b.make(cfg.seed), n, cfg.budget, cfg.format)


def cmd_bisim(reg: FixtureRegistry, cfg: CliConfig):
    left = lookup(reg.behaviors, cfg.left, "behavior")
    right = lookup(reg.behaviors, cfg.right, "behavior")
    if left.shape != right.shape:
        raise UsageError(f"{left.name!r} and {right.name!r} live over different systems")
    same = bisim_depth(left.make(cfg.seed), right.make(cfg.seed), cfg.depth, cfg.budget)
    if cfg.format == "json":
        out = json.dumps({"bisimilar": same, "depth": cfg.depth})
    else:
        out = f"{'bisimilar' if same else 'not bisimilar'} (depth {cfg.depth})"
    return (EXIT_OK if same else EXIT_FAIL), out


def cmd_laws(reg: FixtureRegistry, cfg: CliConfig):
    if cfg.suite != "all":
        lookup(SUITES, cfg.suite, "suite")
    names = sorted(SUITES) if cfg.suite == "all" else [cfg.suite]
    results = []
    for name in names:
        results.extend(SUITES[name](seed=cfg.seed, budget=cfg.budget, reg=reg))
    if cfg.format == "json":
        out = json.dumps([r.__dict__ for r in results], indent=2)
    else:
        out = "\n".join([r.line() for r in results]
                        + [f"{sum(r.passed for r in results)}/{len(results)} laws passed"])
    return (EXIT_OK if all(r.passed for r in results) else EXIT_FAIL), out


COMMANDS = {"list": cmd_list, "transduce": cmd_transduce, "show": cmd_show,
            "bisim": cmd_bisim, "laws": cmd_laws}


def run(cfg: CliConfig, reg: FixtureRegistry | None = None):
    """Execute one command. Returns ``(exit status, stdout text, stderr text)``."""
    reg = reg or register_paper_fixtures()
    try:
        command = lookup(COMMANDS, cfg.command, "command")
        status, out = command(reg, cfg)
        return status, out, ""
    except UsageError as exc:
        return EXIT_USAGE, "", f"eating: {exc}"
    except EnumerationError as exc:
        return EXIT_FAIL, "", f"eating: {exc}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(**{k: v for k, v in vars(args).items() if k in CliConfig.__dataclass_fields__})
    status, out, err = run(cfg)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
