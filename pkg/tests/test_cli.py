import json

import pytest

from rigid_invariants.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_invariants_b6(capsys):
    code, out = run(capsys, "invariants", "--theory", "B6", "--pair", "[2^2,1^9];[]")
    assert code == 0
    assert "mu: [2,2,1,1,1,1,1,1,1,1]" in out.out
    assert "fingerprint: alpha=[2,1,1,1,1];beta=[]" in out.out


def test_invariants_json(capsys):
    code, out = run(capsys, "invariants", "--theory", "B2", "--pair", "[1];[1^4]", "--json")
    rep = json.loads(out.out)
    assert code == 0
    assert rep["tau"] == {"2": {"sign": -1, "conditions": ["iii"]}}


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "--theory", "B6", "--pair", "[2,2];[]"],
        ["invariants", "--theory", "E6", "--pair", "[1];[]"],
        ["invariants", "--theory", "B6", "--pair", "[2,2]"],
        ["represent", "--theory", "B2", "--from-symbol", "top=[0,0];bottom=[5]"],
        ["represent", "--theory", "B2", "--from-fingerprint", "alpha=[1];beta=[]"],
        ["verify", "--theory", "XY"],
        ["frobnicate"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--theory", "B2")
    assert code == 0
    assert out.out.split() == ["[2,2,1];[]", "[1,1,1,1,1];[]", "[1];[1,1,1,1]"]
    code, out = run(capsys, "enumerate", "--theory", "C2", "--partitions-only")
    assert out.out.split() == ["[2,1,1]", "[1,1,1,1]"]


def test_classes(capsys):
    code, out = run(capsys, "classes", "--theory", "C3", "--by", "fingerprint")
    assert code == 0 and "alpha=" in out.out


def test_represent(capsys):
    code, out = run(capsys, "represent", "--theory", "B2", "--from-symbol", "top=[0,0,0];bottom=[1,1]")
    first, rest = out.out.split("\n", 1)
    assert code == 0 and first == "[1,1,1,1,1];[]"
    assert json.loads(rest)["assignment"][0]["side"] == "bottom"
    code, out = run(capsys, "represent", "--theory", "B6", "--from-fingerprint", "alpha=[2,1,1,1,1];beta=[]")
    assert "mu_r: [2,2,1,1,1,1,1,1,1,1]" in out.out


def test_verify_and_duals(capsys):
    code, out = run(capsys, "verify", "--theory", "BC", "--max-rank", "4", "--strict")
    assert code == 0 and json.loads(out.out)["violations"] == []
    code, out = run(capsys, "duals", "--rank", "2")
    assert code == 0 and json.loads(out.out)["counts"] == [3, 5]


def test_catalog_file(capsys, tmp_path):
    path = tmp_path / "c3.jsonl"
    code, _ = run(capsys, "catalog", "--theory", "C3", "-o", str(path))
    assert code == 0 and len(path.read_text().splitlines()) == 8
