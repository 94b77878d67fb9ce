"""Regenerate the JSON datasets bundled in src/steinitz/data.

    python3 scripts/make_datasets.py [--seed 2026] [--out src/steinitz/data]
"""

from __future__ import annotations

import argparse
import json
import random
from fractions import Fraction
from pathlib import Path

from steinitz.cm import ok_lattice, random_synthetic_cm, synthetic_cm_lattice
from steinitz.dataset import format_rational
from steinitz.ideals import class_group, ideal_class_of, prime_above, unit_ideal
from steinitz.intlinalg import random_unimodular
from steinitz.involution import InvolutionLattice, block_involution, expected_theorem1
from steinitz.quadfield import QuadField

OUT = Path(__file__).resolve().parent.parent / "src" / "steinitz" / "data"


def r(q) -> str | int:
    return format_rational(Fraction(q))


def cm_entry(eid, M, expected=None):
    e = {"id": eid, "kind": "cm_lattice", "D": M.field.D, "sigma": M.sigma_m, "S": M.S_m}
    if expected:
        e["expected"] = expected
    return e


def label_of(A, cg):
    return cg.label(ideal_class_of(A, cg))


def dm_dataset():
    F = QuadField(10)
    P = prime_above(2, F).P
    principal, nonprincipal = "(1,0,10) principal", "(2,0,5) non-principal"
    entries = [
        {"id": "DM1", "kind": "invariants", "l": 1, "h1": 2, "idx_anti": 1,
         "expected": {"dm": {"quantity": 4, "e": 2, "steinitz": principal}}},
        {"id": "DM2", "kind": "invariants", "l": 1, "h1": 2, "idx_anti": 2,
         "expected": {"dm": {"quantity": 8, "e": 3, "steinitz": nonprincipal}}},
        {"id": "DM3", "kind": "invariants", "l": 2, "h1": 2, "idx_anti": 1,
         "expected": {"dm": {"quantity": 8, "e": 3, "steinitz": nonprincipal}}},
        cm_entry("OK_lattice", ok_lattice(F),
                 {"dm": {"h1": 2, "idx_anti": 1, "index_LM": 40, "t": 3, "r": 1, "steinitz": principal},
                  "lemma3": {"idx1": 1, "idx2": 10}}),
        cm_entry("P_lattice", ok_lattice(F, P),
                 {"dm": {"h1": 2, "idx_anti": 2, "steinitz": nonprincipal},
                  "lemma3": {"idx1": 2, "idx2": 5}}),
    ]
    return {"name": "dm", "field": {"D": 10, "d": 5}, "entries": entries}


def synthetic_dataset(seed):
    rng = random.Random(seed)
    entries = []
    F5 = QuadField(5)
    P5 = prime_above(2, F5).P
    entries.append(cm_entry("OK_D5", ok_lattice(F5), {
        "theorem5": {"h1": 2, "index_LM": 20, "t": 2, "r": 1, "steinitz": "(1,0,5) principal"}}))
    entries.append(cm_entry("P_D5", ok_lattice(F5, P5), {
        "theorem5": {"h1": 1, "t": 1, "steinitz": "(2,2,3) non-principal"}}))
    entries.append(cm_entry("OK+P_D5", synthetic_cm_lattice(F5, [unit_ideal(F5), P5], "cc"), {
        "theorem5": {"t": 3, "steinitz": "(2,2,3) non-principal"}}))
    F3 = QuadField(3)
    entries.append(cm_entry("OK_D3", ok_lattice(F3), {
        "theorem3": {"h1": 1, "sum_index": 1},
        "theorem4": {"index_LM": 3, "t": 1, "steinitz": "(1,1,1) principal"}}))
    F7 = QuadField(7)
    entries.append(cm_entry("OK2_D7", synthetic_cm_lattice(F7, [unit_ideal(F7)] * 2, "cc"), {
        "theorem3": {"h1": 1, "sum_index": 1}}))
    F23 = QuadField(23)
    entries.append(cm_entry("OK2_D23", synthetic_cm_lattice(F23, [unit_ideal(F23)] * 2, "cn"), {
        "theorem4": {"steinitz": "(1,1,6) principal"}}))
    for D in (3, 7, 11, 23, 5, 13):
        F = QuadField(D)
        cg = class_group(F)
        for k in range(3):
            syn = random_synthetic_cm(F, rng, max_l=3)
            exp = {}
            truth = label_of(syn.steinitz_ideal(), cg)
            if D % 4 == 3:
                exp["theorem3"] = {"h1": 1, "sum_index": 1}
                exp["theorem4"] = {"steinitz": truth}
            else:
                exp["theorem5"] = {"steinitz": truth}
            entries.append(cm_entry(f"syn_D{D}_{k}", syn.lattice, exp))
    return {"name": "synthetic", "entries": entries}


def corrupted_dataset():
    return {"name": "corrupted", "entries": [
        {"id": "S_squared_minus_9", "kind": "cm_lattice", "D": 10,
         "sigma": [[1, 0], [0, -1]], "S": [[0, -9], [1, 0]]},
        {"id": "sigma_identity", "kind": "cm_lattice", "D": 10,
         "sigma": [[1, 0], [0, 1]], "S": [[0, -10], [1, 0]]},
        {"id": "omega_not_integral", "kind": "cm_lattice", "D": 3,
         "sigma": [[1, 0], [0, -1]], "S": [[0, -3], [1, 0]]},
        {"id": "S_squared_minus_4", "kind": "cm_lattice", "D": 5,
         "sigma": [[1, 0], [0, -1]], "S": [[0, -4], [1, 0]]},
    ]}


def involution_dataset(seed):
    rng = random.Random(seed)
    entries = []
    for blocks in ("+-", "s", "ss-", "+s-", "--s+", "sss", "+-+-s"):
        base = InvolutionLattice.from_matrix(block_involution(blocks))
        M = base.conjugate(random_unimodular(base.m, rng))
        index, h1, rm = expected_theorem1(blocks)
        entries.append({"id": f"blocks_{blocks}", "kind": "involution", "sigma": M.matrix,
                        "expected": {"theorem1": {"index": index, "h1": h1, "rank_minus": rm}}})
    return {"name": "involutions", "entries": entries}


def _pair(x):
    return [r(x.a), r(x.b)]


def _ideal_gens(A, n, slot):
    """Generators of A placed in coordinate ``slot`` of O_K^n."""
    zero = [0, 0]
    out = []
    for g in A.basis:
        v = [zero] * n
        v[slot] = _pair(g)
        out.append(v)
    return out


def modules_dataset():
    entries = []
    for D, q in ((10, 2), (5, 2), (23, 2), (23, 3)):
        F = QuadField(D)
        cg = class_group(F)
        P = prime_above(q, F).P
        O = unit_ideal(F)
        for name, ideals in ((f"P{q}+O", [P, O]), (f"P{q}+P{q}", [P, P]), (f"P{q}+P{q}+P{q}", [P, P, P])):
            n = len(ideals)
            gens = [g for i, A in enumerate(ideals) for g in _ideal_gens(A, n, i)]
            prod = O
            for A in ideals:
                prod = prod * A
            entries.append({"id": f"D{D}_{name}", "kind": "pseudo_module", "D": D, "n": n,
                            "generators": gens,
                            "expected": {"steinitz": {"steinitz": label_of(prod, cg), "norm": prod.norm(),
                                                      "index": prod.norm()}}})
    # a non-diagonal module: O_K-span of (2, w) and (w, 3) in O_K^2 for D = 10
    entries.append({"id": "D10_mixed", "kind": "pseudo_module", "D": 10, "n": 2,
                    "generators": [[[2, 0], [0, 1]], [[0, 1], [3, 0]]]})
    return {"name": "modules", "entries": entries}


def _pt(x, y):
    return {"x": [r(c) for c in x], "y": [r(c) for c in y]}


def curves_dataset(corrupt=False):
    b_num_i = [[2]] if corrupt else [[1]]
    x3m2x = {"id": "y2=x3-2x", "kind": "curve", "d": 1, "D": 1,
             "a2": [0], "a4": [-2], "a6": [0],
             "seeds": [_pt([2], [2]), _pt([-2], [0, 0, 2])], "ranges": [3, 3],
             "basis_plus": [_pt([2], [2])], "basis_minus": [_pt([-2], [0, 0, 2])],
             "maps": {"a_num": [[0], [-1]], "a_den": [[1]], "b_num": b_num_i, "b_den": [[1]]},
             "expected": {"curve": {"sigma": [[1, 0], [0, -1]], "S": [[0, -1], [1, 0]]}}}
    if corrupt:
        return {"name": "curves_bad_maps", "entries": [x3m2x]}
    entries = [
        {"id": "y2=x3+1", "kind": "curve", "d": 1, "D": 3, "a2": [0], "a4": [0], "a6": [1],
         "seeds": [_pt([0], [1])], "expected": {"curve": {"seed_orders": [3], "samples": 2}}},
        x3m2x,
        {"id": "y2=x3+4x2+2x", "kind": "curve", "d": 1, "D": 2,
         "a2": [4], "a4": [2], "a6": [0],
         "seeds": [_pt([-1], [1])], "ranges": [4],
         "basis_plus": [_pt([-1], [1])], "basis_minus": [_pt(["-1/2"], [0, 0, "-1/4"])],
         "maps": {"a_num": [[-2], [-4], [-1]], "a_den": [[0], [2]],
                  "b_num": [[-2], [0], [1]], "b_den": [[0], [0], [4]]},
         "expected": {"curve": {"sigma": [[1, 0], [0, -1]], "S": [[0, -2], [1, 0]]}}},
        {"id": "DM1", "kind": "curve", "d": 5, "D": 10,
         "a2": [6, 6], "a4": [7, -3], "a6": [0],
         "seeds": [_pt([1, -1], [3, 1]), _pt([-206, -90], [0, 0, 1271, "2829/5"])],
         "ranges": [4, 3],
         "expected": {"curve": {"samples": 62, "seed_orders": [0, 0]}}},
    ]
    return {"name": "curves", "entries": entries}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    sets = {
        "dm": dm_dataset(),
        "synthetic": synthetic_dataset(args.seed),
        "corrupted": corrupted_dataset(),
        "involutions": involution_dataset(args.seed),
        "modules": modules_dataset(),
        "curves": curves_dataset(),
        "curves_bad_maps": curves_dataset(corrupt=True),
    }
    for name, obj in sets.items():
        path = args.out / f"{name}.json"
        path.write_text(json.dumps(obj, indent=1) + "\n")
        print(f"wrote {path} ({len(obj['entries'])} entries)")


if __name__ == "__main__":
    main()
