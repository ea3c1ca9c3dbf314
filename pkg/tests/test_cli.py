import csv
import json
from fractions import Fraction as F
from io import StringIO

import pytest

from upsilon_kit import cfk, upsilon as U
from upsilon_kit.cfk import CfkComplex
from upsilon_kit.cli import main
from upsilon_kit.exact import PLFunction
from upsilon_kit.links import LinkComplex


def run(*argv):
    out = StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (["upsilon", "--knot", "torus:3,4", "--at", "1"], "-2\n"),
    (["upsilon", "--knot", "trefoil", "--at", "1/2"], "-1/2\n"),
    (["upsilon", "--knot", "unknot", "--at", "3/7"], "0\n"),
    (["tau", "--knot", "torus:3,4"], "3\n"),
    (["nu", "--knot", "hom_counterexample"], "2\n"),
    (["phi", "--knot", "torus:4,5", "--at", "1/2"], "1\n"),
    (["upsilon", "--link", "unlink:3", "--at", "1"], "-1 0 0 1\n"),
])
def test_plain_values(argv, expected):
    assert run(*argv) == (0, expected)


def test_decimal_t_is_read_exactly():
    assert run("upsilon", "--knot", "trefoil", "--at", "0.5") == (0, "-1/2\n")


def test_upsilon_json_is_exact():
    code, text = run("upsilon", "--knot", "trefoil")
    assert code == 0
    assert text == ('{"breakpoints": [["0", "1"], ["1", "1"], ["2", "1"]], '
                    '"values": [["0", "1"], ["-1", "1"], ["0", "1"]], "tau": 1, '
                    '"jumps": [[["1", "1"], 2]], '
                    '"witness": [[["0", "1"], ["1", "1"], "x0"], [["1", "1"], ["2", "1"], "x2"]]}\n')
    assert PLFunction.from_json(json.loads(text)) == U.upsilon(cfk.builtin("trefoil")).upsilon


def test_upsilon_at_json():
    _, text = run("upsilon", "--knot", "torus:3,4", "--at", "2/3", "--format", "json")
    assert json.loads(text) == {"t": ["2", "3"], "upsilon": ["-2", "1"]}
    _, text = run("upsilon", "--link", "unlink:2", "--at", "1", "--format", "json")
    assert json.loads(text) == {"t": ["1", "1"], "upsilon_set": [["-1", "2"], ["1", "2"]]}


def test_unknot_is_zero():
    _, text = run("upsilon", "--knot", "unknot")
    assert PLFunction.from_json(json.loads(text)).is_zero()


def test_csv_and_svg():
    assert run("upsilon", "--knot", "trefoil", "--format", "csv") == (0, "t,upsilon\n0,0\n1,-1\n2,0\n")
    code, svg = run("upsilon", "--knot", "torus:3,4", "--format", "svg")
    assert code == 0 and svg.startswith("<svg") and "(2/3, -2)" in svg


def test_window_flags():
    _, text = run("upsilon", "--knot", "torus:3,4", "--lo", "1/2", "--hi", "1")
    f = PLFunction.from_json(json.loads(text))
    assert f.domain == (F(1, 2), F(1))


def test_hfk():
    code, text = run("hfk", "--knot", "trefoil")
    assert code == 0 and text == "m,a,dim\n0,1,1\n-1,0,1\n-2,-1,1\n"
    data = json.loads(run("hfk", "--knot", "figure8", "--format", "json")[1])
    assert data["total"] == 5 and data["alexander"] == "-t + 3 - t^-1"


def test_mirror_and_tensor_roundtrip(tmp_path):
    _, text = run("mirror", "--knot", "torus:3,4")
    m = CfkComplex.from_json(json.loads(text))
    assert m == cfk.dual(cfk.builtin("torus:3,4"))
    path = tmp_path / "m.json"
    path.write_text(text)
    _, text = run("tensor", "--knot", "torus:3,4", "--in", str(path), "--simplify")
    c = CfkComplex.from_json(json.loads(text))
    assert U.upsilon(c).upsilon.is_zero()
    assert run("upsilon", "--in", str(path), "--at", "1") == (0, "2\n")


def test_link_file_input(tmp_path):
    from upsilon_kit import links
    path = tmp_path / "u.json"
    path.write_text(json.dumps(links.unlink(2).to_json()))
    assert run("upsilon", "--in", str(path), "--at", "0") == (0, "-1/2 1/2\n")
    assert LinkComplex.from_json(json.loads(path.read_text())) == links.unlink(2)


def test_independence():
    code, text = run("independence", "--family", "Tnn1", "--n", "2..5")
    assert code == 0
    lines = text.splitlines()
    rows = list(csv.reader(lines[:-1]))
    assert rows[0] == ["t", "T(2,3)", "T(3,4)", "T(4,5)", "T(5,6)"]
    assert rows[1] == ["1", "1", "0", "2", "0"]
    assert lines[-1].startswith("# ")
    data = json.loads(run("independence", "--family", "Tnn1", "--n", "2..3", "--format", "json")[1])
    assert data["unitriangular"] is True and data["params"] == [["1", "1"], ["2", "3"]]


def test_pair():
    _, text = run("pair", "--typeA", "cabling:2", "--typeD", "trefoil_framed2")
    c = CfkComplex.from_json(json.loads(text))
    assert c.generators and cfk.is_valid(c)


def test_catalog():
    data = json.loads(run("catalog", "--format", "json")[1])
    assert "trefoil" in data["knots"]


def test_verify_single_criterion():
    code, text = run("verify", "--only", "1")
    assert code == 0 and text.splitlines()[-1] == "1/1 criteria passed"


@pytest.mark.parametrize("argv", [
    ["upsilon", "--knot", "trefoil", "--at", "3"],
    ["upsilon", "--knot", "trefoil", "--knot", "unknot"],
    ["upsilon"],
    ["upsilon", "--knot", "granny"],
    ["phi", "--knot", "trefoil", "--at", "0"],
    ["independence", "--family", "Tnn1", "--n", "5..2"],
    ["upsilon", "--in", "/nonexistent.json"],
    ["tensor", "--knot", "trefoil"],
    ["upsilon", "--link", "unlink:2"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_error_is_json_on_stderr(capsys):
    run("upsilon", "--knot", "granny")
    err = json.loads(capsys.readouterr().err)
    assert set(err) == {"error", "message"}


def test_integrity_error_exits_1(tmp_path, capsys):
    bad = {"generators": [{"name": "x", "m": 0, "a": 0}, {"name": "y", "m": 0, "a": 0}], "differential": []}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert run("upsilon", "--in", str(path))[0] == 1
    invalid = {"generators": [{"name": "x", "m": 0, "a": 0}, {"name": "y", "m": 0, "a": 0}],
               "differential": [{"from": "x", "to": "y", "u": 0}]}
    path.write_text(json.dumps(invalid))
    assert run("tau", "--in", str(path))[0] == 1
