"""Verification suites over dataset entries and seeded random sweeps."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .cm import (
    CMLattice,
    CMValidationError,
    dm_from_invariants,
    dm_pipeline,
    lemma3_check,
    lemma4_check,
    random_synthetic_cm,
    theorem3_check,
    theorem4_pipeline,
    theorem5_pipeline,
    validate_cm,
)
from .config import CurveSuiteConfig, RandomConfig
from .curves import (
    CMMaps,
    Curve,
    Point,
    Tower,
    galois_sigma,
    in_I,
    lattice_extract,
    neg,
    on_curve,
    point_add,
    point_sub,
    scalar_mul,
    twist_iso,
    validate_cm_maps,
)
from .dataset import Entry
from .ideals import class_group, ideal_class_of
from .involution import InvolutionLattice, random_involution_lattice, verify_theorem1, expected_theorem1
from .modules import free_module, from_generators, module_index_oracle, random_submodule, regenerate, steinitz_class
from .quadfield import QuadField, is_prime


@dataclass
class EntryResult:
    index: int
    id: str
    kind: str
    status: str  # pass, fail or skip
    computed: dict[str, Any] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "index": self.index,
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "computed": self.computed,
            "checks": self.checks,
            "mismatches": self.mismatches,
            "notes": self.notes,
            "error": self.error,
        }
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


# ---------------------------------------------------------------------------
# applicability


def applicable(suite: str, e: Entry) -> bool:
    if suite == "theorem1":
        return e.kind in ("involution", "cm_lattice")
    if suite == "lemma3":
        return e.kind == "cm_lattice"
    if suite == "theorem3":
        return e.kind == "cm_lattice" and e.D % 4 == 3
    if suite == "theorem4":
        return e.kind == "cm_lattice" and is_prime(e.D) and e.D % 4 == 3
    if suite == "theorem5":
        return e.kind == "cm_lattice" and is_prime(e.D) and e.D % 4 == 1
    if suite == "dm":
        return e.kind == "invariants" or (e.kind == "cm_lattice" and e.D == 10)
    if suite == "steinitz":
        return e.kind == "pseudo_module"
    if suite == "curve":
        return e.kind == "curve"
    raise ValueError(f"unknown suite {suite!r}")


# ---------------------------------------------------------------------------
# per-entry checks; each returns (computed, checks, notes)


def _cm_lattice(e: Entry) -> CMLattice:
    M = CMLattice.from_matrices(e.field(), e.data["sigma"], e.data["S"])
    v = validate_cm(M)
    if not v.valid:
        raise CMValidationError(v.failures)
    return M


def _theorem1(e: Entry, cfg):
    if e.kind == "cm_lattice":
        M = _cm_lattice(e)
        inv = M.involution()
        checks = {"lemma4": lemma4_check(M)}
    else:
        inv = InvolutionLattice.from_matrix(e.data["sigma"])
        checks = {}
    rep = verify_theorem1(inv)
    computed = {"rank": inv.m, "index": rep.index, "h1": rep.h1, "rank_minus": rep.rank_minus}
    checks = {"index*h1 == 2^rank_minus": rep.holds, **checks}
    return computed, checks, []


def _lemma3(e: Entry, cfg):
    M = _cm_lattice(e)
    rep = lemma3_check(M)
    computed = {"l": M.l, "idx1": rep.idx1, "idx2": rep.idx2}
    return computed, {"idx1*idx2 == D^l": rep.holds, "lemma4": lemma4_check(M)}, []


def _theorem3(e: Entry, cfg):
    rep = theorem3_check(_cm_lattice(e))
    computed = {"h1": rep.h1, "sum_index": rep.sum_index}
    return computed, {"h1 == 1": rep.h1 == 1, "O_K M+ + M- == M": rep.sum_equals_whole}, []


def _pipeline(fn):
    def run(e: Entry, cfg):
        rep = fn(_cm_lattice(e))
        d = rep.as_dict()
        computed = {k: d[k] for k in ("l", "h1", "idx_anti", "index_LM", "t", "r", "steinitz")}
        return computed, dict(rep.checks), list(rep.notes)

    return run


def _dm(e: Entry, cfg):
    if e.kind == "cm_lattice":
        return _pipeline(dm_pipeline)(e, cfg)
    rep = dm_from_invariants(e.data["l"], e.data["h1"], e.data["idx_anti"])
    computed = {
        "l": rep.l, "h1": rep.h1, "idx_anti": rep.idx_anti,
        "quantity": rep.quantity, "e": rep.e, "steinitz": rep.label,
    }
    return computed, {}, []


def _steinitz(e: Entry, cfg):
    F = e.field()
    n = e.data["n"]
    M = from_generators(F, e.data["generators"], n)
    cg = class_group(F)
    res = steinitz_class(M, cg)
    idx = module_index_oracle(free_module(F, n), M)
    computed = {
        "n": n,
        "steinitz": res.label,
        "norm": res.norm,
        "index": idx,
        "parts": [B.norm() for B in res.parts],
    }
    return computed, {"norm == index": res.norm == idx}, []


def _tower_point(T: Tower, p) -> Point:
    return Point(T(*p["x"]), T(*p["y"]))


def _order(E: Curve, P, bound: int) -> int:
    Q = P
    for k in range(1, bound + 1):
        if Q is None:
            return k
        Q = point_add(E, Q, P)
    return 0


def curve_samples(E: Curve, seeds, ranges) -> list[Point]:
    """Distinct finite points sum c_i * seed_i with |c_i| <= ranges[i], lowest height first."""
    mults = [{k: scalar_mul(E, k, P) for k in range(-r, r + 1)} for P, r in zip(seeds, ranges)]
    out, seen = [], set()
    for coeffs in itertools.product(*(range(-r, r + 1) for r in ranges)):
        Q = None
        for k, m in zip(coeffs, mults):
            Q = point_add(E, Q, m[k])
        if Q is not None and Q not in seen:
            seen.add(Q)
            out.append(Q)
    # stable sort keeps the order deterministic among equal heights
    return sorted(out, key=lambda P: max(P.x.height(), P.y.height()))


def group_law_checks(E: Curve, seeds, samples, cfg: CurveSuiteConfig) -> dict[str, bool]:
    checks = {}
    checks["identity_and_inverse"] = all(
        point_add(E, P, None) == P and point_add(E, P, neg(P)) is None for P in samples
    )
    head = samples[: cfg.pair_points]
    checks["commutativity"] = all(point_add(E, P, Q) == point_add(E, Q, P) for P in head for Q in samples)
    checks["associativity"] = all(
        point_add(E, point_add(E, a, b), c) == point_add(E, a, point_add(E, b, c))
        for a, b, c in zip(samples, samples[1:], samples[2:])
    )
    ok = True
    for P in seeds[: cfg.scalar_points]:
        for n, m in itertools.product(range(1, cfg.scalar_max + 1), repeat=2):
            ok &= scalar_mul(E, n, scalar_mul(E, m, P)) == scalar_mul(E, n * m, P)
    for P in samples[: cfg.mixed_points]:
        for n, m in itertools.product(range(-cfg.mixed_max, cfg.mixed_max + 1), repeat=2):
            ok &= point_add(E, scalar_mul(E, n, P), scalar_mul(E, m, P)) == scalar_mul(E, n + m, P)
    checks["scalar_laws"] = ok
    checks["sigma_homomorphism"] = all(
        galois_sigma(point_add(E, P, Q)) == point_add(E, galois_sigma(P), galois_sigma(Q))
        and galois_sigma(galois_sigma(P)) == P
        for P, Q in zip(samples, samples[1:])
    )
    ok = True
    for P in samples:
        s = galois_sigma(P)
        u, v = point_add(E, P, s), point_sub(E, P, s)
        ok &= point_add(E, u, v) == scalar_mul(E, 2, P) and galois_sigma(u) == u and in_I(v)
    checks["lemma4_decomposition"] = ok
    return checks


def _twist_check(E: Curve, samples) -> tuple[int, bool]:
    T = E.tower
    pulled = {}
    ok = True
    for P in samples:
        if in_I(P):
            y0 = P.y / T.sqrt_minus_D
            ok &= twist_iso(E, P.x, y0) == P
            pulled[(P.x, y0)] = P
    images = list(pulled.values())
    ok &= len(set(images)) == len(images)
    return len(images), ok


def _curve(e: Entry, cfg):
    ccfg: CurveSuiteConfig = cfg
    T = Tower(e.d, e.D)
    E = Curve(T, T(*e.data["a2"]), T(*e.data["a4"]), T(*e.data["a6"]))
    seeds = [_tower_point(T, p) for p in e.data["seeds"]]
    checks = {"seeds_on_curve": all(on_curve(E, P) for P in seeds)}
    if not checks["seeds_on_curve"]:
        return {}, checks, []
    ranges = e.data["ranges"] or [ccfg.default_range] * len(seeds)
    samples = curve_samples(E, seeds, ranges)
    computed: dict[str, Any] = {
        "d": e.d,
        "samples": len(samples),
        "seed_orders": [_order(E, P, ccfg.torsion_bound) for P in seeds],
    }
    checks.update(group_law_checks(E, seeds, samples, ccfg))
    n_twist, checks["twist"] = _twist_check(E, samples)
    computed["twist_points"] = n_twist
    if e.data["maps"] is not None:
        m = e.data["maps"]
        maps = CMMaps(*(tuple(T(*c) for c in m[k]) for k in ("a_num", "a_den", "b_num", "b_den")))
        plus = [_tower_point(T, p) for p in e.data["basis_plus"]]
        minus = [_tower_point(T, p) for p in e.data["basis_minus"]]
        pts = [scalar_mul(E, k, P) for P in seeds + plus + minus for k in range(1, ccfg.map_multiples + 1)]
        rep = validate_cm_maps(E, maps, [P for P in pts if P is not None])
        checks["cm_maps"] = rep.valid
        computed["cm_samples"] = rep.samples
        if plus or minus:
            L = lattice_extract(E, QuadField(e.D), plus, minus, maps, ccfg.extract_bound, ccfg.torsion_bound)
            computed["sigma"] = L.sigma_m
            computed["S"] = L.S_m
            checks["extracted_lemma3"] = lemma3_check(L).holds
    return computed, checks, []


RUNNERS: dict[str, Callable] = {
    "theorem1": _theorem1,
    "lemma3": _lemma3,
    "theorem3": _theorem3,
    "theorem4": _pipeline(theorem4_pipeline),
    "theorem5": _pipeline(theorem5_pipeline),
    "dm": _dm,
    "steinitz": _steinitz,
    "curve": _curve,
}


def run_entry(suite: str, e: Entry, curve_cfg: CurveSuiteConfig | None = None) -> EntryResult:
    res = EntryResult(e.index, e.id, e.kind, "skip")
    if not applicable(suite, e):
        return res
    t0 = time.perf_counter()
    try:
        computed, checks, notes = RUNNERS[suite](e, curve_cfg or CurveSuiteConfig())
    except (ArithmeticError, ValueError, LookupError) as exc:
        res.status = "fail"
        res.error = f"{type(exc).__name__}: {exc}"
        res.seconds = time.perf_counter() - t0
        return res
    res.seconds = time.perf_counter() - t0
    res.computed, res.checks, res.notes = computed, checks, notes
    for key, want in e.expected.get(suite, {}).items():
        if computed.get(key) != want:
            res.mismatches.append(f"{key}: expected {want!r}, got {computed.get(key)!r}")
    res.status = "pass" if all(checks.values()) and not res.mismatches else "fail"
    return res


# ---------------------------------------------------------------------------
# random sweeps


@dataclass
class RandomResult:
    suite: str
    count: int
    seed: int
    max_rank: int
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.count

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "count": self.count,
            "seed": self.seed,
            "max_rank": self.max_rank,
            "passed": self.passed,
            "failures": self.failures,
        }


def _case_theorem1(rng, cfg: RandomConfig):
    M, blocks = random_involution_lattice(rng, cfg.resolved_max_rank())
    rep = verify_theorem1(M)
    ok = rep.holds and (rep.index, rep.h1, rep.rank_minus) == expected_theorem1(blocks)
    return ok, {"blocks": "".join(blocks), "index": rep.index, "h1": rep.h1, "rank_minus": rep.rank_minus}


def _random_cm(rng, cfg: RandomConfig):
    D = rng.choice(cfg.resolved_fields())
    return D, random_synthetic_cm(QuadField(D), rng, cfg.resolved_max_rank())


def _case_lemma3(rng, cfg):
    D, syn = _random_cm(rng, cfg)
    M = syn.lattice
    rep = lemma3_check(M)
    t1 = verify_theorem1(M.involution())
    ok = validate_cm(M).valid and rep.holds and lemma4_check(M) and t1.holds
    return ok, {"D": D, "l": M.l, "idx1": rep.idx1, "idx2": rep.idx2}


def _case_theorem3(rng, cfg):
    D, syn = _random_cm(rng, cfg)
    rep = theorem3_check(syn.lattice)
    return rep.holds, {"D": D, "l": syn.lattice.l, "h1": rep.h1, "sum_index": rep.sum_index}


def _case_theorem4(rng, cfg):
    D, syn = _random_cm(rng, cfg)
    rep = theorem4_pipeline(syn.lattice)
    return rep.cross_checked and rep.principal, {"D": D, "l": rep.l, "t": rep.t, "steinitz": rep.label}


def _case_theorem5(rng, cfg):
    D, syn = _random_cm(rng, cfg)
    M = syn.lattice
    cg = class_group(M.field)
    rep = theorem5_pipeline(M, cg)
    truth = ideal_class_of(syn.steinitz_ideal(), cg)
    ok = rep.cross_checked and rep.steinitz == truth
    return ok, {"D": D, "l": rep.l, "t": rep.t, "h1": rep.h1, "steinitz": rep.label}


def _case_steinitz(rng, cfg):
    D = rng.choice(cfg.resolved_fields())
    F = QuadField(D)
    n = rng.randint(1, cfg.resolved_max_rank())
    M = random_submodule(F, n, rng)
    cg = class_group(F)
    res = steinitz_class(M, cg)
    idx = module_index_oracle(free_module(F, n), M)
    stable = all(steinitz_class(regenerate(M, rng), cg).class_index == res.class_index
                 for _ in range(cfg.regenerations))
    return res.norm == idx and stable, {"D": D, "n": n, "norm": res.norm, "index": idx, "steinitz": res.label}


CASES: dict[str, Callable] = {
    "theorem1": _case_theorem1,
    "lemma3": _case_lemma3,
    "theorem3": _case_theorem3,
    "theorem4": _case_theorem4,
    "theorem5": _case_theorem5,
    "steinitz": _case_steinitz,
}


def run_random(cfg: RandomConfig) -> RandomResult:
    if cfg.count < 1:
        raise ValueError("count must be at least 1")
    if cfg.suite not in CASES:
        raise ValueError(f"no random generator for suite {cfg.suite!r}")
    rng = random.Random(cfg.seed)
    out = RandomResult(cfg.suite, cfg.count, cfg.seed, cfg.resolved_max_rank())
    for i in range(cfg.count):
        try:
            ok, info = CASES[cfg.suite](rng, cfg)
        except (ArithmeticError, ValueError, LookupError) as exc:
            ok, info = False, {"error": f"{type(exc).__name__}: {exc}"}
        if ok:
            out.passed += 1
        else:
            out.failures.append({"case": i, **info})
    return out
