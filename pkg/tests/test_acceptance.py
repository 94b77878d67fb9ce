"""The ten acceptance criteria, each at its stated size and tolerance.

Run with pytest (one PASS/FAIL line per criterion appears in the summary) or
directly: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import json
import time
from fractions import Fraction

import pytest

from steinitz.cli import main as cli_main
from steinitz.cm import CMLattice, CMValidationError, ok_lattice, ok_span_fixed, theorem5_pipeline, validate_cm
from steinitz.config import CurveSuiteConfig, RandomConfig
from steinitz.curves import (
    CMMaps,
    Curve,
    Point,
    Tower,
    ValidationFailed,
    galois_sigma,
    in_I,
    point_add,
    point_sub,
    scalar_mul,
    validate_cm_maps,
)
from steinitz.ideals import class_group, ideal_class_of, is_principal, prime_above, principal_ideal
from steinitz.involution import h1_order
from steinitz.intlinalg import coordinates, hnf, scale, to_int, transpose
from steinitz.modules import from_zlattice, steinitz_class
from steinitz.quadfield import NotSquarefree, QuadField
from steinitz.suites import curve_samples, group_law_checks, run_random


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def criterion_1():
    t0 = time.perf_counter()
    code, out, _ = _cli("verify", "--dataset", "dm", "--suite", "dm", "--json")
    elapsed = time.perf_counter() - t0
    rep = json.loads(out)
    got = {e["id"]: (e["computed"]["quantity"], e["computed"]["steinitz"])
           for e in rep["entries"] if e["kind"] == "invariants"}
    want = {"DM1": (4, "(1,0,10) principal"),
            "DM2": (8, "(2,0,5) non-principal"),
            "DM3": (8, "(2,0,5) non-principal")}
    ok = code == 0 and got == want and elapsed < 1.0
    return ok, f"DM1/DM2/DM3 -> {[got.get(k) for k in want]} in {elapsed:.2f}s"


def criterion_2():
    t0 = time.perf_counter()
    res = run_random(RandomConfig("theorem1", count=200, seed=1, max_rank=8))
    elapsed = time.perf_counter() - t0
    return res.ok and elapsed < 10.0, f"{res.passed}/200 identities exact in {elapsed:.2f}s"


def criterion_3():
    cfg = RandomConfig("lemma3", count=100, seed=1, fields=(3, 5, 7, 10, 11, 13))
    res = run_random(cfg)
    return res.ok, f"{res.passed}/100 with idx1*idx2 = D^l"


def criterion_4():
    res = run_random(RandomConfig("theorem3", count=100, seed=1, fields=(3, 7, 11, 23)))
    return res.ok, f"{res.passed}/100 with |H^1| = 1 and O_K M+ + M- = M"


def criterion_5():
    res = run_random(RandomConfig("steinitz", count=100, seed=1, max_rank=3, fields=(5, 10, 23), regenerations=10))
    return res.ok, f"{res.passed}/100 norm = oracle index, class stable under 10 regenerations"


def criterion_6():
    res = run_random(RandomConfig("theorem4", count=100, seed=1, fields=(3, 7, 23)))
    return res.ok, f"{res.passed}/100 principal with agreeing theorem2 cross-check"


def _independent_class(M, cg):
    """Class of 2 S M inside O_K M+, recomputed outside the pipeline."""
    L = ok_span_fixed(M)
    sub = hnf(transpose(scale(2, M.S_m)))
    C = to_int(coordinates(L, sub))
    return steinitz_class(from_zlattice(M.field, C, M.l), cg).class_index


def criterion_7():
    F = QuadField(5)
    cg = class_group(F)
    P = prime_above(2, F).P
    rows = []
    ok = True
    for name, M, t, principal in (("O_K", ok_lattice(F), 2, True), ("P", ok_lattice(F, P), 1, False)):
        r = theorem5_pipeline(M, cg)
        h1 = h1_order(M.involution())
        this = (
            r.t == t
            and r.principal == principal
            and 2**r.t == 2**r.l * h1
            and r.steinitz == _independent_class(M, cg)
            and r.cross_checked
        )
        ok &= this
        rows.append(f"{name}: t={r.t} -> {r.label}")
    ok &= cg.h == 2 and ideal_class_of(P, cg) != cg.principal
    return ok, "; ".join(rows)


def criterion_8():
    hs = {D: class_group(QuadField(D)).h for D in (3, 5, 10)}
    ok = hs == {3: 1, 5: 2, 10: 2}
    for D in (5, 10):
        F = QuadField(D)
        dec = prime_above(2, F)
        ok &= dec.kind == "ramified" and not is_principal(dec.P) and dec.P * dec.P == principal_ideal(F(2))
    return ok, f"h(-3), h(-20), h(-40) = {hs[3]}, {hs[5]}, {hs[10]}; P over 2 ramified, non-principal, P^2 = (2)"


def criterion_9():
    TQ = Tower(1, 3)
    E1 = Curve(TQ, TQ(0), TQ(0), TQ(1))
    ok = scalar_mul(E1, 3, Point(TQ(0), TQ(1))) is None
    H = Tower(5, 10)
    E = Curve(H, H(6, 6), H(7, -3), H(0))
    seeds = [Point(H(1, -1), H(3, 1)), Point(H(-206, -90), H(0, 0, 1271, Fraction(2829, 5)))]
    samples = curve_samples(E, seeds, [4, 3])
    checks = group_law_checks(E, seeds, samples, CurveSuiteConfig())
    ok &= len(samples) >= 50 and all(checks.values())
    for Q in samples:
        s = galois_sigma(Q)
        u, v = point_add(E, Q, s), point_sub(E, Q, s)
        ok &= point_add(E, u, v) == scalar_mul(E, 2, Q) and galois_sigma(u) == u and in_I(v)
    return ok, f"3(0,1) = O; {len(samples)} DM1 samples, {sum(checks.values())}/{len(checks)} law groups hold"


def criterion_10():
    notes = []
    ok = True
    bad = CMLattice.from_matrices(QuadField(10), [[1, 0], [0, -1]], [[0, -9], [1, 0]])
    ok &= validate_cm(bad).failures == ["CMSquare"]
    try:
        theorem5_pipeline(CMLattice.from_matrices(QuadField(5), [[1, 0], [0, -1]], [[0, -4], [1, 0]]))
        ok = False
    except CMValidationError as exc:
        ok &= exc.failures == ["CMSquare"]
    code, _, _ = _cli("verify", "--dataset", "corrupted", "--suite", "lemma3")
    ok &= code == 1
    notes.append(f"corrupted S exit {code}")
    T = Tower(1, 1)
    E = Curve(T, T(0), T(-2), T(0))
    maps = CMMaps((T(0), T(-1)), (T(1),), (T(2),), (T(1),))
    try:
        validate_cm_maps(E, maps, [Point(T(2), T(2))])
        ok = False
    except ValidationFailed as exc:
        ok &= "square_is_minus_D" in exc.identities
    code, _, _ = _cli("verify", "--dataset", "curves_bad_maps", "--suite", "curve")
    ok &= code == 1
    notes.append(f"corrupted maps exit {code}")
    try:
        QuadField(12)
        ok = False
    except NotSquarefree:
        pass
    code, _, err = _cli("classgroup", "--D", "12")
    ok &= code == 2 and "NotSquarefree" in err
    notes.append(f"D=12 exit {code}")
    return ok, ", ".join(notes)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.acceptance
@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, acceptance_log):
    ok, detail = CRITERIA[n - 1]()
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    acceptance_log.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    raise SystemExit(1 if failed else 0)
