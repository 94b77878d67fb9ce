"""D = 10 analysis: the three invariant triples, the two model lattices, and
j-invariants of the two candidate readings of the first curve.

    python3 scripts/dm_analysis.py
"""

from __future__ import annotations

from steinitz.curves import Curve, Tower
from steinitz.dataset import bundled, load_dataset
from steinitz.suites import run_entry


def j_invariant(E: Curve):
    b2, b4, b6 = 4 * E.a2, 2 * E.a4, 4 * E.a6
    b8 = 4 * E.a2 * E.a6 - E.a4 * E.a4
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4 ** 3 / disc


def main():
    for e in load_dataset(bundled("dm")).entries:
        res = run_entry("dm", e)
        vals = "  ".join(f"{k}={v}" for k, v in res.computed.items())
        print(f"{e.id:11s} {res.status.upper()}  {vals}")

    H = Tower(5, 10)
    readings = {
        "a6 = 7-3r5 (as printed)": Curve(H, H(6, 6), H(0), H(7, -3)),
        "a4 = 7-3r5 (corrected)": Curve(H, H(6, 6), H(7, -3), H(0)),
    }
    for name, E in readings.items():
        print(f"j[{name}] = {j_invariant(E)!r}")


if __name__ == "__main__":
    main()
