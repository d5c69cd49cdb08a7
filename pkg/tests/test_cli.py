import csv
import io
import json
from fractions import Fraction

import pytest

from minwalg.cli import main, parse_range, parse_rationals, UsageError


def run_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_c0_g2(capsys):
    code, rep = run_json(capsys, "c0", "--type", "G", "--rank", "2")
    assert code == 0 and rep["pass"] is True
    assert rep["results"] == {"c0_table": "-28/9", "c0_solved": "-28/9"}
    assert set(rep) == {"meta", "results", "pass"}
    assert rep["meta"]["command"] == "c0" and rep["meta"]["type"] == "G" and rep["meta"]["rank"] == 2


def test_c0_table_only_for_exceptional(capsys):
    code, rep = run_json(capsys, "c0", "--type", "E", "--rank", "8", "--table-only")
    assert code == 0 and rep["results"] == {"c0_table": "-240"}


def test_verify_relations_a1(capsys):
    code, rep = run_json(capsys, "verify-relations", "--type", "A", "--rank", "1", "--max-degree", "8")
    assert code == 0 and rep["pass"]
    assert "note" in rep["results"]


def test_verify_relations_c2(capsys):
    code, rep = run_json(capsys, "verify-relations", "--type", "C", "--rank", "2", "--samples", "5")
    assert code == 0
    details = rep["results"]["report"]["details"]
    assert details["failing_relations"] == [] and details["c0_solved"] == "-5/4"


def test_dims_table_csv(capsys):
    code = main(["dims-table", "--type", "C", "--rank", "2", "--a", "0..1", "--b", "0..1", "--output", "csv",
                 "--verify"])
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert code == 0
    assert [r["dim"] for r in rows] == ["1", "2", "3", "5"]
    assert [r["computed"] for r in rows] == ["1", "2", "3", "5"]


def test_dims_table_g2_both_signs(capsys):
    code, rep = run_json(capsys, "dims-table", "--type", "G", "--rank", "2", "--a", "0", "--b", "0", "--both-signs")
    assert code == 0
    assert [(r["sign"], r["dim"]) for r in rep["results"]["rows"]] == [(1, "1"), (-1, "2")]


def test_simple_dim_by_mu(capsys):
    code, rep = run_json(capsys, "simple-dim", "--type", "C", "--rank", "2", "--mu", "1,0")
    assert code == 0 and rep["results"]["dim"] == 3 and rep["results"]["expected"] == "3"


def test_simple_dim_by_lambda(capsys):
    code, rep = run_json(capsys, "verma", "--type", "G", "--rank", "2", "--lambda", "0", "--c=-28/9")
    assert code == 0 and rep["results"]["dim"] == 1


def test_simple_dim_too_shallow_fails(capsys):
    code, rep = run_json(capsys, "simple-dim", "--type", "C", "--rank", "2", "--mu", "0,2", "--depth", "2")
    assert code == 1 and rep["pass"] is False and rep["results"]["stabilized"] is False


def test_whittaker_and_contraction(capsys):
    code, rep = run_json(capsys, "whittaker-check", "--type", "C", "--rank", "2", "--lambda", "1", "--c", "1")
    assert code == 0 and rep["results"]["delta_bar"] == ["1/2"]
    code, rep = run_json(capsys, "contraction-check", "--type", "C", "--rank", "2")
    assert code == 0 and rep["results"]["violations"] == []


def test_abelianize_and_oracle_check(capsys):
    code, rep = run_json(capsys, "abelianize", "--type", "A", "--rank", "2")
    assert code == 0 and rep["results"]["relations_str"] == ["X^2 + (-1/6)*Y = 0"]
    code, rep = run_json(capsys, "oracle-check", "--type", "G", "--rank", "2")
    assert code == 0 and rep["results"]["non_invariant"] == []


def test_dump_structure_human(capsys):
    assert main(["dump-structure", "--type", "G", "--rank", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("dump-structure G2: PASS")
    assert "  s: 2" in out


@pytest.mark.parametrize("argv", [
    ["c0", "--type", "X", "--rank", "2"],
    ["c0", "--type", "G", "--rank", "3"],
    ["c0", "--type", "G", "--rank", "2", "--max-degree", "2"],
    ["simple-dim", "--type", "C", "--rank", "2"],
    ["simple-dim", "--type", "C", "--rank", "2", "--lambda", "1,2", "--c", "0"],
    ["dims-table", "--type", "A", "--rank", "2"],
    ["no-such-command"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
    capsys.readouterr()


def test_out_file_and_cache(tmp_path, capsys):
    out = tmp_path / "rep.json"
    cache = tmp_path / "cache"
    argv = ["dump-structure", "--type", "C", "--rank", "2", "--json", "--out-file", str(out), "--cache-dir", str(cache)]
    assert main(argv) == 0
    first = out.read_text()
    assert list(cache.glob("C2-*.pkl"))
    assert main(argv) == 0
    assert out.read_text() == first
    assert capsys.readouterr().out == ""


def test_parsers():
    assert parse_range("0..2") == [0, 1, 2]
    assert parse_range("1,3") == [1, 3]
    assert parse_rationals("1/2, -3") == [Fraction(1, 2), -3]
    with pytest.raises(UsageError):
        parse_range("a..b")
    with pytest.raises(UsageError):
        parse_rationals("1/0")
