import json

import pytest

from reguli.cli import main, run
from reguli.fields import tower_for_q
from reguli.projective import format_subspace
from reguli.report import VERBS, RunReport, verb_list, without_timing
from reguli.theorems import standard_setup


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_help_lists_every_verb(capsys):
    code, out, _ = _run(capsys, "--help")
    assert code == 0
    for v in verb_list():
        assert v in out
    assert set(VERBS) == {"verify thm3-3", "verify prop3-2", "verify lemma2-1", "verify prop3-1",
                          "reproduce gf4-remark", "verify appendix", "abb subline", "abb subplane",
                          "clubs distinguish", "clubs invariant", "extend-check"}


def test_curve_orders_verb(capsys):
    code, out, _ = _run(capsys, "verify", "thm3-3", "--q", "4", "--n", "4", "--all-theta", "--up-to-conjugacy")
    d = json.loads(out)
    assert code == 0 and d["verified"] and d["counts"]["extensions_per_theta"] == 85
    assert d["moduli"] == {"base": "[1,1,1]", "top": "[[1,0],[0,0],[1,0],[0,1],[1,0]]"}


def test_gf4_and_appendix_verbs(capsys):
    code, out, _ = _run(capsys, "reproduce", "gf4-remark")
    assert code == 0 and json.loads(out)["data"]["orders"] == [4, 2]
    code, out, _ = _run(capsys, "verify", "appendix", "--q", "2")
    d = json.loads(out)
    assert code == 0 and d["verified"] and d["counts"]["external_lines"] == 2


@pytest.mark.parametrize("case,order", [("a", 2), ("b", 3)])
def test_trace_cases_verb(capsys, case, order):
    code, out, _ = _run(capsys, "verify", "lemma2-1", "--q", "3", "--t", "3", "--case", case)
    assert code == 0 and json.loads(out)["data"]["trace_orders"] == [order]


def test_extend_check(tmp_path, capsys):
    setup = standard_setup(tower_for_q(4, 4))
    f = tmp_path / "elem.txt"
    f.write_text(format_subspace(setup.R.first_family[0]))
    code, out, err = _run(capsys, "extend-check", "--subspace", str(f))
    assert code == 2 and "not disjoint" in err and out == ""
    g = tmp_path / "theta.txt"
    g.write_text("# F(Theta) for a degree-2 Theta\n" +
                 format_subspace(setup.ctx.reduce_point((1, setup.tower.subfield_generator(2)))))
    code, out, _ = _run(capsys, "extend-check", "--subspace", str(g))
    d = json.loads(out)
    assert code == 0 and d["data"]["constant"] == 2 and d["data"]["profile"] == {"2": 85}


def test_falsified_profile_exits_one(tmp_path, capsys):
    from reguli.theorems import GF4_EXAMPLE_ROWS

    f = tmp_path / "u.txt"
    f.write_text("pg 7 4\n" + "\n".join(" ".join(r) for r in GF4_EXAMPLE_ROWS) + "\n")
    code, out, _ = _run(capsys, "extend-check", "--subspace", str(f))
    d = json.loads(out)
    assert code == 1 and sorted(d["counterexample"]["extensions_by_order"]) == ["2", "4"]


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["abb", "subline", "--q", "6", "--n", "2", "--theta-degree", "1"],
    ["abb", "subline", "--q", "4", "--n", "12", "--theta-degree", "2"],
    ["reproduce", "gf4-remark", "--modulus", "[1,0,0,0,1"],
    ["reproduce", "gf4-remark", "--modulus", "[[1,0],[2,0],[0,0],[0,0],[1,0]]"],
    ["abb", "subplane", "--q", "3", "--n", "4", "--h", "3"],
    ["clubs", "distinguish", "--q", "2", "--n", "4"],
    ["extend-check", "--subspace", "/nonexistent/file"],
    ["verify", "thm3-3", "--q", "3", "--n", "2", "--threads", "0"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and err and out == ""


def test_parameter_limit_message(capsys):
    _, _, err = _run(capsys, "abb", "subline", "--q", "4", "--n", "12", "--theta-degree", "2")
    assert "parameters too large" in err


def test_json_flag_and_canonical_output(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = _run(capsys, "abb", "subplane", "--q", "4", "--n", "4", "--h", "2", "--json", str(path),
                        "--dump-lines", str(tmp_path / "lines.txt"))
    text = path.read_text()
    assert code == 0 and out == ""
    d = json.loads(text)
    assert text == json.dumps(d, sort_keys=True, indent=2) + "\n"
    assert set(d) == {"claim", "command", "parameters", "verified", "counterexample", "counts", "elapsed_ms",
                      "moduli", "data"}
    assert len((tmp_path / "lines.txt").read_text().splitlines()) == 5


DETERMINISM = [
    ["verify", "thm3-3", "--q", "3", "--n", "3", "--all-theta", "--closed-form-samples", "5"],
    ["verify", "prop3-2", "--q", "2", "--n", "3"],
    ["verify", "lemma2-1", "--q", "5", "--t", "3"],
    ["verify", "prop3-1", "--q", "4", "--n", "3"],
    ["reproduce", "gf4-remark", "--force-search"],
    ["abb", "subline", "--q", "3", "--n", "3", "--theta-degree", "3", "--k-seed", "4"],
    ["clubs", "distinguish", "--q", "4", "--n", "2"],
    ["clubs", "invariant", "--q", "4", "--n", "3", "--h", "3", "--samples", "4"],
]


@pytest.mark.parametrize("argv", DETERMINISM, ids=lambda a: " ".join(a[:2]))
def test_reports_are_reproducible(argv):
    first, c1 = run(argv + ["--json", "/dev/null"])
    second, c2 = run(argv + ["--json", "/dev/null"])
    assert c1 == c2 == 0
    assert without_timing(first.to_json()) == without_timing(second.to_json())


def test_run_report_serialization():
    r = RunReport("x", "claim", {"q": 2}, True, {1: 2}, {"s": {3: {4}}})
    d = json.loads(r.to_json())
    assert d["counts"] == {"1": 2} and d["data"] == {"s": {"3": [4]}} and r.exit_code == 0
