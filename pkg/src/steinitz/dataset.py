"""JSON datasets of lattices, modules, curves and invariant triples.

Schema (one object per file)::

    {
      "name": "dm",
      "field": {"D": 10, "d": 5},          # defaults for every entry
      "entries": [
        {"id": "DM1", "kind": "invariants", "l": 1, "h1": 2, "idx_anti": 1,
         "expected": {"dm": {"steinitz": "(1,0,10) principal"}}},
        {"id": "ok", "kind": "cm_lattice", "sigma": [[1, 0], [0, -1]], "S": [[0, -10], [1, 0]]},
        {"id": "inv", "kind": "involution", "sigma": [[0, 1], [1, 0]]},
        {"id": "m", "kind": "pseudo_module", "n": 2,
         "generators": [[["2", "0"], ["0", "0"]], [["0", "1"], ["1", "0"]]]},
        {"id": "c", "kind": "curve", "a2": ["0"], "a4": ["-2"], "a6": ["0"],
         "seeds": [{"x": ["2"], "y": ["2"]}], "ranges": [3],
         "basis_plus": [...], "basis_minus": [...],
         "maps": {"a_num": [["0"], ["-1"]], "a_den": [["1"]], "b_num": [["1"]], "b_den": [["1"]]}}
      ]
    }

"expected" maps a suite name to values that suite must compute for the
entry.  Any entry may override "D" (and "d" for curves).  Rationals are integers or
"p/q" strings.  A tower element is a list of up to four rationals
[c0, c1, c2, c3] meaning c0 + c1 sqrt(d) + c2 sqrt(-D) + c3 sqrt(-dD).  A
module generator is a list of n field elements, each a pair [a, b] meaning
a + b*w in the integral basis (1, w).  Polynomials list coefficients from the
constant term up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .quadfield import NotSquarefree, QuadField, is_squarefree

KINDS = ("involution", "cm_lattice", "pseudo_module", "curve", "invariants")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Entry:
    index: int
    id: str
    kind: str
    D: int | None
    d: int
    data: dict[str, Any]
    expected: dict[str, Any] = field(default_factory=dict)

    def field(self) -> QuadField:
        if self.D is None:
            raise ParseError(f"entry {self.id}: no D given")
        return QuadField(self.D)


@dataclass(frozen=True)
class Dataset:
    name: str
    entries: tuple[Entry, ...]


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            q = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {x!r}") from None
        if "/" in x and q.denominator != int(x.split("/")[1]):
            raise ParseError(f"rational not in lowest terms: {x!r}")
        return q
    raise ParseError(f"not a rational: {x!r}")


def format_rational(q: Fraction) -> str | int:
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _int_matrix(m, what: str) -> list[list[int]]:
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise ParseError(f"{what} must be a non-empty list of rows")
    n = len(m)
    for r in m:
        if len(r) != n:
            raise ParseError(f"{what} is not square")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(f"{what} has non-integer entries")
    return [list(r) for r in m]


def _tower_coords(v, what: str) -> tuple[Fraction, ...]:
    if not isinstance(v, list) or not 1 <= len(v) <= 4:
        raise ParseError(f"{what} must be a list of 1 to 4 rationals")
    c = [parse_rational(x) for x in v]
    return tuple(c + [Fraction(0)] * (4 - len(c)))


def _point(p, what: str) -> dict:
    if not isinstance(p, dict) or set(p) != {"x", "y"}:
        raise ParseError(f"{what} must be an object with keys x and y")
    return {"x": _tower_coords(p["x"], what + ".x"), "y": _tower_coords(p["y"], what + ".y")}


def _positive_int(v, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ParseError(f"{what} must be a positive integer")
    return v


def _parse_entry(i: int, raw: dict, defaults: dict) -> Entry:
    if not isinstance(raw, dict):
        raise ParseError(f"entry {i} is not an object")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ParseError(f"entry {i}: unknown kind {kind!r}")
    eid = str(raw.get("id", i))
    D = raw.get("D", defaults.get("D"))
    d = raw.get("d", defaults.get("d", 1))
    if D is not None:
        D = _positive_int(D, f"entry {eid}: D")
        if not is_squarefree(D):
            raise NotSquarefree(f"entry {eid}: D = {D} is not squarefree")
    d = _positive_int(d, f"entry {eid}: d")
    if not is_squarefree(d):
        raise NotSquarefree(f"entry {eid}: d = {d} is not squarefree")
    data: dict[str, Any] = {}
    if kind == "involution":
        data["sigma"] = _int_matrix(raw.get("sigma"), f"entry {eid}: sigma")
    elif kind == "cm_lattice":
        data["sigma"] = _int_matrix(raw.get("sigma"), f"entry {eid}: sigma")
        data["S"] = _int_matrix(raw.get("S"), f"entry {eid}: S")
        if len(data["S"]) != len(data["sigma"]):
            raise ParseError(f"entry {eid}: sigma and S differ in size")
    elif kind == "pseudo_module":
        n = _positive_int(raw.get("n"), f"entry {eid}: n")
        gens = raw.get("generators")
        if not isinstance(gens, list) or not gens:
            raise ParseError(f"entry {eid}: generators must be a non-empty list")
        rows = []
        for g in gens:
            if not isinstance(g, list) or len(g) != n:
                raise ParseError(f"entry {eid}: generator of wrong length")
            row = []
            for x in g:
                if not isinstance(x, list) or len(x) != 2:
                    raise ParseError(f"entry {eid}: field elements are [a, b] pairs")
                row.append(tuple(parse_rational(c) for c in x))
            rows.append(row)
        data["n"] = n
        data["generators"] = rows
    elif kind == "curve":
        for key in ("a2", "a4", "a6"):
            data[key] = _tower_coords(raw.get(key, ["0"]), f"entry {eid}: {key}")
        seeds = raw.get("seeds", [])
        if not isinstance(seeds, list):
            raise ParseError(f"entry {eid}: seeds must be a list")
        data["seeds"] = [_point(p, f"entry {eid}: seed") for p in seeds]
        ranges = raw.get("ranges")
        if ranges is not None:
            if not isinstance(ranges, list) or len(ranges) != len(seeds):
                raise ParseError(f"entry {eid}: ranges must match seeds")
            ranges = [_positive_int(r, f"entry {eid}: range") for r in ranges]
        data["ranges"] = ranges
        for key in ("basis_plus", "basis_minus"):
            data[key] = [_point(p, f"entry {eid}: {key}") for p in raw.get(key, [])]
        maps = raw.get("maps")
        if maps is not None:
            if not isinstance(maps, dict) or set(maps) != {"a_num", "a_den", "b_num", "b_den"}:
                raise ParseError(f"entry {eid}: maps needs a_num, a_den, b_num, b_den")
            data["maps"] = {
                k: [_tower_coords(c, f"entry {eid}: maps.{k}") for c in v] for k, v in maps.items()
            }
        else:
            data["maps"] = None
    elif kind == "invariants":
        for key in ("l", "h1", "idx_anti"):
            data[key] = _positive_int(raw.get(key), f"entry {eid}: {key}")
    expected = raw.get("expected", {})
    if not isinstance(expected, dict) or not all(isinstance(v, dict) for v in expected.values()):
        raise ParseError(f"entry {eid}: expected must map suite names to objects")
    if kind != "invariants" and kind != "involution" and D is None:
        raise ParseError(f"entry {eid}: no D given")
    return Entry(i, eid, kind, D, d, data, dict(expected))


def parse_dataset(obj: dict, name: str = "dataset") -> Dataset:
    if not isinstance(obj, dict) or not isinstance(obj.get("entries"), list):
        raise ParseError("dataset must be an object with an 'entries' list")
    defaults = obj.get("field", {})
    if not isinstance(defaults, dict):
        raise ParseError("field must be an object")
    entries = tuple(_parse_entry(i, e, defaults) for i, e in enumerate(obj["entries"]))
    return Dataset(str(obj.get("name", name)), entries)


def load_dataset(path: str | Path) -> Dataset:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return parse_dataset(obj, path.stem)


def bundled(name: str) -> Path:
    """Path of a dataset shipped in steinitz/data."""
    return Path(__file__).parent / "data" / f"{name}.json"
