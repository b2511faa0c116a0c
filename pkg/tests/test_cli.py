import csv
import io
import json
from pathlib import Path

import pytest

from negabase.cli import DOMAIN_ERROR, USAGE_ERROR, run

GOLDEN = sorted((Path(__file__).parent / "golden").glob("*.json"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue().strip(), err.getvalue()


@pytest.mark.parametrize("argv,text", [
    (["expand", "--base", "1,1,-", "--sign", "neg", "--", "-1"], "11.(1)"),
    (["add", "--base", "1,1,-", "1111.", "1111."], "110000.11"),
    (["expand", "--base", "1,1,-", "--sign", "pos", "0"], "0."),
    (["expand", "--sign", "pos", "5 5 1"], "100010.01"),
    (["expand", "--sign", "pos", "(-4+0*beta)/2"], "-10.01"),
    (["mul", "1111.", "1111."], "11100.11"),
    (["sub", "0.", "110."], "11.(1)"),
    (["add", "--sign", "pos", "--", "-1.", "1."], "0."),
    (["normalize", "--base", "2,1,-", "2"], "121."),
    (["normalize", "--sign", "pos", "2"], "10.01"),
    (["eval", "110."], "1"),
    (["eval", "--sign", "pos", "10.01"], "2"),
    (["phiword", "8"], "00100101"),
    (["refwords", "--base", "2,1,-"], "dstar_pos (20)\nd_l 2(1)\ndstar_r 02(1)"),
])
def test_outputs(argv, text):
    code, out, _ = call(*argv)
    assert code == 0 and out == text


@pytest.mark.parametrize("argv,code", [
    (["refwords", "--base", "2,3,-"], DOMAIN_ERROR),
    (["refwords", "--base", "2,3"], USAGE_ERROR),
    (["add", "1.", "11."], DOMAIN_ERROR),            # "1." is not a (-tau)-expansion
    (["eval", "2."], DOMAIN_ERROR),
    (["eval", "1.2.3"], USAGE_ERROR),
    (["expand", "1 1 0"], USAGE_ERROR),
    (["frobnicate"], USAGE_ERROR),
    (["add", "1."], USAGE_ERROR),
    (["add", "--", "-11.", "11."], USAGE_ERROR),     # signs only in base beta
    (["add", "--base", "3,1,+", "--sign", "neg", "1.", "1."], 0),
    (["normalize", "--base", "3,1,+", "1"], DOMAIN_ERROR),
])
def test_exit_codes(argv, code):
    got, _, err = call(*argv)
    assert got == code
    if code:
        assert err


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.stem)
def test_json_golden(path):
    case = json.loads(path.read_text())
    code, out, _ = call(*case["argv"])
    assert code == 0 and json.loads(out) == case["stdout"]


@pytest.mark.parametrize("sign", ["neg", "pos"])
@pytest.mark.parametrize("value", ["-1", "2", "(1+beta)/3", "5 -3 7", "0", "-2*beta"])
def test_expand_eval_round_trip(sign, value):
    code, first, _ = call("expand", "--sign", sign, "--", value)
    assert code == 0
    code, exact, _ = call("eval", "--sign", sign, "--", first)
    assert code == 0
    code, again, _ = call("expand", "--sign", sign, "--", exact)
    assert code == 0 and again == first


def test_lscan_workers_do_not_change_output():
    one = call("lscan", "--max-len", "5")[1]
    two = call("lscan", "--max-len", "5", "--workers", "2")[1]
    assert one == two and json.loads(one)["max"] == 2


def test_csv_and_plot(tmp_path):
    table, figure = tmp_path / "z.csv", tmp_path / "z.png"
    code, out, _ = call("integers", "--digits", "5", "--csv", str(table), "--plot", str(figure))
    assert code == 0
    rows = list(csv.DictReader(table.open()))
    assert [r["expansion"] for r in rows] == [line.split("\t")[0] for line in out.splitlines()]
    assert rows[0].keys() == {"a", "b", "d", "decimal", "expansion"}
    assert figure.stat().st_size > 0 and figure.read_bytes()[:4] == b"\x89PNG"
    svg = tmp_path / "c.svg"
    assert call("coincide", "5", "--plot", str(svg))[0] == 0
    assert svg.read_text().lstrip().startswith("<?xml")


def test_precision_env(monkeypatch, tmp_path):
    monkeypatch.setenv("NEGABASE_PRECISION", "5")
    short = json.loads(call("eval", "--json", "1100.")[1])["decimal"]
    monkeypatch.setenv("NEGABASE_PRECISION", "40")
    long = json.loads(call("eval", "--json", "1100.")[1])["decimal"]
    assert short == "-1.6180" and long.startswith("-1.61803398874989484820458683436563811")
    assert json.loads(call("eval", "--json", "1100.")[1])["value"] == {"a": 0, "b": -1, "d": 1}
