"""Command-line interface: classgroup, verify, random.

Exit codes: 0 when everything checked passes, 1 on a verification failure
(or when a suite finds no applicable entry), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .config import RANDOM_SUITES, VERIFY_SUITES, RandomConfig
from .dataset import ParseError, bundled, load_dataset
from .ideals import class_group, ideal_class_of, prime_above
from .quadfield import NotSquarefree, QuadField
from .suites import run_entry, run_random

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _emit(text: str, payload: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text)


def cmd_classgroup(args, out) -> int:
    F = QuadField(args.D)
    cg = class_group(F)
    dec = prime_above(2, F)
    P = dec.P
    cls = ideal_class_of(P, cg)
    payload = {
        "D": F.D,
        "disc": F.disc,
        "h": cg.h,
        "forms": [str(f) for f in cg.reps],
        "two": {
            "splitting": dec.kind,
            "P": P.matrix,
            "norm": P.norm(),
            "class": cg.label(cls),
            "P^2": (P * P).matrix,
        },
    }
    lines = [
        f"D = {F.D}  disc = {F.disc}  h = {cg.h}",
        "reduced forms: " + " ".join(str(f) for f in cg.reps),
        f"2 is {dec.kind}: P = {P.matrix} (norm {P.norm()}), class {cg.label(cls)}, P^2 = {(P * P).matrix}",
    ]
    _emit("\n".join(lines) + "\n", payload, args.json, out)
    return EXIT_OK


def _resolve_dataset(arg: str) -> Path:
    p = Path(arg)
    if p.exists() or p.suffix:
        return p
    return bundled(arg)


def cmd_verify(args, out) -> int:
    if args.dataset is None or args.suite is None:
        raise UsageError("verify needs --dataset and --suite")
    ds = load_dataset(_resolve_dataset(args.dataset))
    results = [run_entry(args.suite, e) for e in ds.entries]
    ran = [r for r in results if r.status != "skip"]
    passed = sum(r.status == "pass" for r in ran)
    lines = [f"dataset {ds.name}  suite {args.suite}"]
    for r in results:
        if r.status == "skip":
            lines.append(f"[{r.index}] {r.id} ({r.kind}): SKIP not applicable")
            continue
        vals = " ".join(f"{k}={_fmt(v)}" for k, v in r.computed.items())
        line = f"[{r.index}] {r.id} ({r.kind}): {r.status.upper()}"
        if vals:
            line += f"  {vals}"
        if args.timing:
            line += f"  [{r.seconds:.3f}s]"
        lines.append(line)
        for name, ok in r.checks.items():
            if not ok:
                lines.append(f"    check failed: {name}")
        for m in r.mismatches:
            lines.append(f"    mismatch: {m}")
        for n in r.notes:
            lines.append(f"    note: {n}")
        if r.error:
            lines.append(f"    error: {r.error}")
    lines.append(f"summary: {passed}/{len(ran)} passed, {len(results) - len(ran)} skipped")
    payload = {
        "dataset": ds.name,
        "suite": args.suite,
        "entries": [r.as_dict(args.timing) for r in results],
        "summary": {"passed": passed, "ran": len(ran), "skipped": len(results) - len(ran)},
    }
    _emit("\n".join(lines) + "\n", payload, args.json, out)
    return EXIT_OK if ran and passed == len(ran) else EXIT_FAIL


def cmd_random(args, out) -> int:
    if args.suite is None:
        raise UsageError("random needs --suite")
    if args.suite not in RANDOM_SUITES:
        raise UsageError(f"random supports suites {', '.join(RANDOM_SUITES)}")
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    cfg = RandomConfig(args.suite, args.count, args.seed, args.max_rank)
    t0 = time.perf_counter()
    res = run_random(cfg)
    elapsed = time.perf_counter() - t0
    lines = [f"random {res.suite}: {res.passed}/{res.count} pass (seed {res.seed}, max rank {res.max_rank})"]
    for f in res.failures:
        lines.append("    failure: " + " ".join(f"{k}={_fmt(v)}" for k, v in f.items()))
    if args.timing:
        lines.append(f"time: {elapsed:.3f}s")
    payload = res.as_dict()
    if args.timing:
        payload["seconds"] = round(elapsed, 4)
    _emit("\n".join(lines) + "\n", payload, args.json, out)
    return EXIT_OK if res.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="steinitz", description="Steinitz classes of CM Mordell-Weil lattices.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings")
        sp.add_argument("--dataset", help="dataset path or bundled name (dm, synthetic, ...)")
        sp.add_argument("--suite", choices=VERIFY_SUITES)
        sp.add_argument("--seed", type=int, default=1)
        sp.add_argument("--count", type=int, default=100)

    cg = sub.add_parser("classgroup", help="class group of Q(sqrt(-D)) and the splitting of 2")
    cg.add_argument("--D", type=int, required=True)
    common(cg)
    v = sub.add_parser("verify", help="run a theorem suite on a dataset")
    common(v)
    r = sub.add_parser("random", help="seeded randomized property sweep")
    common(r)
    r.add_argument("--max-rank", type=int, default=None)
    return p


COMMANDS = {"classgroup": cmd_classgroup, "verify": cmd_verify, "random": cmd_random}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: classgroup, verify or random")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ParseError, NotSquarefree) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
