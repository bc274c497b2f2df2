import json

import pytest

from eating.cli import CliConfig, build_parser, main, readable, run
from eating.values import Left, Right


def test_defaults():
    args = build_parser().parse_args(["transduce", "--sim", "scan", "--input", "nat"])
    assert (args.depth, args.budget, args.format, args.seed) == (20, 64, "text", 1)
    cfg = CliConfig("list")
    assert (cfg.depth, cfg.budget, cfg.format, cfg.seed) == (20, 64, "text", 1)


def test_transduce_stream(reg):
    status, out, err = run(CliConfig("transduce", sim="scan", input="nat", take=5), reg)
    assert (status, out, err) == (0, "[0, 1, 3, 6, 10]", "")


def test_transduce_layersum(reg):
    assert run(CliConfig("transduce", sim="layersum", input="paper_bin", take=3), reg)[1] == "[3, 18, 84]"


def test_transduce_tree_json(reg):
    status, out, _ = run(CliConfig("transduce", sim="bin_map", input="paper_bin", take=1,
                                   format="json"), reg)
    doc = json.loads(out)
    assert status == 0 and set(doc) == {"i", "truncated", "br"}


def test_transduce_tree_text_is_decoded(reg):
    _, out, _ = run(CliConfig("transduce", sim="bin_map", input="paper_bin", take=1), reg)
    doc = json.loads(out)
    assert doc["br"][0][0] == {"table": [[0, 2], [1, 4]]}


def test_unknown_names_exit_2(reg):
    status, out, err = run(CliConfig("transduce", sim="nope", input="nat"), reg)
    assert status == 2 and "sumblock" in err and out == ""
    status, _, err = run(CliConfig("transduce", sim="layersum", input="nat"), reg)
    assert status == 2 and "paper_bin" in err
    assert run(CliConfig("laws", suite="nope"), reg)[0] == 2


def test_bisim_exit_codes(reg):
    assert run(CliConfig("bisim", left="nat", right="nat", depth=50), reg)[:2] == (0, "bisimilar (depth 50)")
    assert run(CliConfig("bisim", left="nat", right="zeros", depth=5), reg)[:2] == (1, "not bisimilar (depth 5)")
    assert run(CliConfig("bisim", left="nat", right="paper_bin"), reg)[0] == 2


def test_show_unenumerable_exits_1(reg):
    status, _, err = run(CliConfig("show", input="fbt", depth=2), reg)
    assert status == 1 and "unavailable" in err


def test_laws_command(reg):
    status, out, _ = run(CliConfig("laws", suite="laziness"), reg)
    assert status == 0
    assert out.splitlines()[-1] == "4/4 laws passed"


def test_list(reg):
    status, out, _ = run(CliConfig("list", format="json"), reg)
    assert "sumblock" in json.loads(out)["sims"]


def test_main_prints(capsys):
    assert main(["bisim", "--left", "nat", "--right", "nat", "--depth", "3"]) == 0
    assert capsys.readouterr().out == "bisimilar (depth 3)\n"


def test_argparse_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["transduce"])
    assert info.value.code == 2


def test_readable():
    assert readable(((), (Left(1), Right(2)))) == ["*", [{"inl": 1}, {"inr": 2}]]
