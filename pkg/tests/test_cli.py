import json

import jsonschema
import pytest

from hodgehh import reports
from hodgehh.cli import main

SCHEMA_OF = {"homology.v1": "homology", "filtration.v1": "filtration", "layer.v1": "layer",
             "hodge.v1": "hodge", "twisted.v1": "twisted", "check.v1": "check"}


def invoke(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def validated(out):
    payload = json.loads(out)
    jsonschema.validate(payload, reports.schema(SCHEMA_OF[payload["schema"]]))
    return payload


CASES = [
    ("hh", "--algebra", "dual_numbers", "--max-degree", "3", "--weight", "4"),
    ("hh", "--algebra", "dual_numbers", "--ring", "Z", "--max-degree", "3", "--weight", "4"),
    ("loday", "--algebra", "poly_x", "--space", "sphere:2", "--max-degree", "3"),
    ("loday", "--algebra", "dual_numbers", "--space", "torus:2", "--max-degree", "2", "--weight", "2"),
    ("loday-coeff", "--algebra", "poly_x", "--module", "ground", "--max-degree", "2", "--weight", "3"),
    ("filtration", "--algebra", "dual_numbers", "--max-degree", "3", "--weight", "4", "--level", "1"),
    ("layers", "--space", "circle", "--arity", "2", "--level", "2", "--adams", "2", "--adams", "-1"),
    ("adams", "--algebra", "poly_xy", "--max-degree", "2", "--r", "2"),
    ("hodge-q", "--algebra", "dual_numbers", "--max-degree", "3", "--weight", "4"),
    ("tw", "--space", "circle", "--max-degree", "2"),
    ("tw", "--category", "ordinal:1", "--max-degree", "2"),
    ("check-truncation", "--max-arity", "2"),
    ("check-layers", "--max-level", "2"),
]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: "-".join(a[:3]))
def test_commands_emit_valid_json(capsys, argv):
    status, out, _ = invoke(capsys, *argv)
    assert status == 0
    validated(out)


def test_hh_integral_values(capsys):
    _, out, _ = invoke(capsys, "hh", "--algebra", "dual_numbers", "--ring", "Z", "--max-degree", "3",
                       "--weight", "4")
    payload = validated(out)
    assert payload["betti"] == [2, 1, 1, 1]
    assert payload["torsion"] == {"1": ["2"], "3": ["2"]}


def test_layers_values(capsys):
    _, out, _ = invoke(capsys, "layers", "--space", "circle", "--arity", "2", "--level", "2", "--adams", "3")
    payload = validated(out)
    assert payload["homology"] == [{"degree": 2, "betti": 1, "torsion": []}]
    assert payload["sign_check"] == "pass"
    assert payload["adams"] == [{"r": 3, "matrix": [["9"]]}]


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["hodge-q", "--algebra", "poly_x", "--max-degree", "2", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_csv_output(capsys):
    status, out, _ = invoke(capsys, "hh", "--algebra", "poly_x", "--max-degree", "2", "--format", "csv")
    assert status == 0
    header = out.splitlines()[0].split(",")
    assert header == ["betti", "degree", "torsion", "weight"]


def test_algebra_file(capsys, tmp_path):
    path = tmp_path / "cubic.alg"
    path.write_text("RING Q\nBASIS 1 0\nBASIS x 1\nBASIS x2 2\nMUL x x -> x2\nMUL x x2 -> 0\n"
                    "MUL x2 x -> 0\nMUL x2 x2 -> 0\nAUG 1\n")
    status, out, _ = invoke(capsys, "hh", "--algebra", str(path), "--max-degree", "1")
    assert status == 0
    assert validated(out)["betti"][0] == 3


@pytest.mark.parametrize("argv, code", [
    (("hh", "--algebra", "no_such_algebra"), 2),
    (("hh", "--algebra", "dual_numbers", "--ring", "F4"), 2),
    (("loday", "--algebra", "poly_x", "--space", "klein"), 2),
    (("layers", "--space", "circle", "--arity", "9", "--level", "1"), 3),
    (("hodge-q", "--algebra", "dual_numbers", "--ring", "Z", "--max-degree", "2"), 2),
])
def test_exit_codes(capsys, argv, code):
    status, _, err = invoke(capsys, *argv)
    assert status == code
    diag = json.loads(err.strip().splitlines()[-1])
    assert diag["error"] in ("invalid", "budget")
