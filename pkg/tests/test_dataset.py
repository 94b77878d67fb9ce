import json
from fractions import Fraction

import pytest

from steinitz.dataset import KINDS, ParseError, bundled, load_dataset, parse_dataset, parse_rational
from steinitz.quadfield import NotSquarefree

BUNDLED = ["dm", "synthetic", "corrupted", "involutions", "modules", "curves", "curves_bad_maps"]


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_datasets_parse(name):
    ds = load_dataset(bundled(name))
    assert ds.name == name and ds.entries
    assert all(e.kind in KINDS for e in ds.entries)
    assert [e.index for e in ds.entries] == list(range(len(ds.entries)))


def test_rationals():
    assert parse_rational("2829/5") == Fraction(2829, 5)
    assert parse_rational(-3) == -3
    assert parse_rational("-1/4") == Fraction(-1, 4)
    for bad in ("2/4", "x", 1.5, True, "1/0"):
        with pytest.raises(ParseError):
            parse_rational(bad)


def _one(entry, **top):
    return parse_dataset({"entries": [entry], **top})


def test_entry_validation():
    with pytest.raises(ParseError):
        _one({"kind": "lattice"})
    with pytest.raises(ParseError):
        _one({"kind": "involution", "sigma": [[1, 0]]})
    with pytest.raises(ParseError):
        _one({"kind": "cm_lattice", "D": 5, "sigma": [[1]], "S": [[0, 1], [1, 0]]})
    with pytest.raises(ParseError):
        _one({"kind": "cm_lattice", "sigma": [[1]], "S": [[1]]})
    with pytest.raises(ParseError):
        _one({"kind": "invariants", "l": 0, "h1": 1, "idx_anti": 1})
    with pytest.raises(ParseError):
        _one({"kind": "pseudo_module", "D": 5, "n": 2, "generators": [[[1, 0]]]})
    with pytest.raises(ParseError):
        _one({"kind": "invariants", "l": 1, "h1": 1, "idx_anti": 1, "expected": {"steinitz": "x"}})


def test_non_squarefree_d():
    with pytest.raises(NotSquarefree):
        _one({"kind": "cm_lattice", "D": 12, "sigma": [[1]], "S": [[1]]})
    with pytest.raises(NotSquarefree):
        _one({"kind": "curve", "D": 10, "d": 4})


def test_field_defaults_and_overrides():
    ds = _one({"kind": "curve", "d": 2, "seeds": [{"x": ["1/2"], "y": [0, 1]}]}, field={"D": 10, "d": 5})
    e = ds.entries[0]
    assert (e.D, e.d) == (10, 2)
    assert e.data["seeds"][0]["x"] == (Fraction(1, 2), 0, 0, 0)


def test_load_errors(tmp_path):
    with pytest.raises(ParseError):
        load_dataset(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_dataset(p)
    p.write_text(json.dumps({"entries": {}}))
    with pytest.raises(ParseError):
        load_dataset(p)
