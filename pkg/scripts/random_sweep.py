"""Seeded random sweep over every suite that has a generator.

    python3 scripts/random_sweep.py [--count 100] [--seed 1]
"""

from __future__ import annotations

import argparse
import time

from steinitz.config import RandomConfig
from steinitz.suites import CASES, run_random


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    bad = 0
    for suite in CASES:
        t0 = time.perf_counter()
        res = run_random(RandomConfig(suite, count=args.count, seed=args.seed))
        bad += not res.ok
        print(f"{suite:9s} {res.passed:4d}/{res.count}  {time.perf_counter() - t0:6.2f}s")
        for f in res.failures[:3]:
            print(f"    {f}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
