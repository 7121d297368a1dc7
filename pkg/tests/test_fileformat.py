import importlib.util
from fractions import Fraction
from pathlib import Path

import pytest

from threelie.fileformat import InputError, load, parse, serialize

DATA = Path(__file__).resolve().parent.parent / "data"

A3 = """{
  "format": 1,
  "kind": "algebra",
  "dim": 3,
  "weight": "1/2",
  "bracket": [
    {"args": [0, 1, 2], "value": {"0": "1"}}
  ],
  "differential": [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]
}"""


def regenerate_module():
    spec = importlib.util.spec_from_file_location("regenerate", DATA / "regenerate.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def error_of(text):
    with pytest.raises(InputError) as info:
        parse(text)
    return info.value


def test_checked_in_documents_match_the_generator():
    docs = regenerate_module().documents()
    assert sorted(docs) == sorted(p.name for p in DATA.glob("*.json"))
    for name, doc in docs.items():
        assert (DATA / name).read_text(encoding="utf-8") == serialize(doc), name


@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.name)
def test_round_trip(path):
    doc = load(path)
    assert parse(serialize(doc)) == doc


def test_every_kind_is_covered_by_the_data():
    kinds = {load(p).kind for p in DATA.glob("*.json")}
    assert kinds == {"algebra", "representation", "cochain", "operator", "deformation",
                     "two-term", "crossed-module"}


def test_scalars_are_read_exactly():
    doc = parse(A3)
    assert doc.payload.differential.lam == Fraction(1, 2)
    assert doc.payload.algebra.basis(0, 1, 2) == (1, 0, 0)


def test_float_literals_are_refused_with_a_hint():
    err = error_of(A3.replace('"1/2"', "0.5"))
    assert "floating-point literal forbidden; write 1/2" in str(err)
    assert (err.line, err.col) == (5, 13)


def test_duplicate_keys_are_refused():
    err = error_of(A3.replace('"dim": 3,', '"dim": 3, "dim": 3,'))
    assert "duplicate key 'dim'" in str(err)
    assert err.line == 4


def test_unsorted_triples_are_refused():
    err = error_of(A3.replace("[0, 1, 2]", "[2, 1, 0]"))
    assert "triple must be strictly increasing: [2, 1, 0]" in str(err)
    assert err.line == 7


@pytest.mark.parametrize("change, message", [
    (('"dim": 3,', '"dim": 3, "colour": "red",'), "unknown field 'colour'"),
    (('"algebra"', '"lie"'), "unknown kind 'lie'"),
    (('"format": 1', '"format": 2'), "unsupported format 2"),
    (('"dim": 3,', ''), "missing field 'dim'"),
    (('{"0": "1"}', '{"3": "1"}'), "index '3' out of range"),
    (('"1/2"', '"1/0"'), "denominator must be positive"),
    (('"1/2"', '"x"'), 'expected an integer or "p/q" string'),
    (('["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]', '["1", "0", "0"]'), "must have 3 entries"),
    (('[0, 1, 2]', '[0, 1, 3]'), "out of range"),
    (('"dim": 3,', '"dim": true,'), "dim must be an integer"),
])
def test_schema_errors(change, message):
    err = error_of(A3.replace(*change))
    assert message in str(err)
    assert err.line is not None


@pytest.mark.parametrize("text, message", [
    ("", "unexpected end of input"),
    ("[]", "document must be an object"),
    ('{"format": 1} x', "unexpected text after the document"),
    ('{"format": 1, }', "expected a string key"),
    ('{"format" 1}', "expected ':'"),
])
def test_syntax_errors(text, message):
    assert message in str(error_of(text))


def test_inconsistent_dimensions_are_located():
    # the matrices in the file are sized for dim1 = 3
    text = (DATA / "two-term.a3-strict.json").read_text()
    err = error_of(text.replace('"dim1": 3', '"dim1": 2'))
    assert err.line is not None


def test_missing_file():
    with pytest.raises(InputError, match="cannot read"):
        load(DATA / "no-such-file.json")
