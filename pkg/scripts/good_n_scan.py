#!/usr/bin/env python3
"""Scan cyclic orders n for a given q and tabulate the family predicates.

For each odd n coprime to q the table lists ord_n(q), lambda(n), the ratio
log_q(n)/lambda(n) that drives the census exponent, and which family
profiles (SelfOrthogonal / LCD / SelfDual) the order qualifies for.

Example:
    python scripts/good_n_scan.py --q 3 --limit 60
"""

import argparse
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cdcodes.analysis import good_n_predicates, good_n_sequence
from cdcodes.cyclic import lambda_n
from cdcodes.field import mult_order


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--limit", type=int, default=60)
    args = ap.parse_args()
    q = args.q

    profiles = {
        "SelfOrthogonal": set(good_n_sequence(q, args.limit, "SelfOrthogonal")),
        "LCD": set(good_n_sequence(q, args.limit, "LCD")),
        "SelfDual": set(good_n_sequence(q, args.limit, "SelfDual")),
    }
    print(f"q = {q}")
    print(f"{'n':>4} {'ord':>5} {'lambda':>7} {'log_q(n)/lambda':>16}  profiles")
    for n in range(3, args.limit + 1, 2):
        if math.gcd(n, q) != 1:
            continue
        flags = good_n_predicates(q, n)
        lam = lambda_n(n, q)
        ratio = math.log(n, q) / lam
        tags = ",".join(name for name, members in profiles.items() if n in members) or "-"
        print(f"{n:>4} {mult_order(q, n):>5} {lam:>7} {ratio:>16.4f}  {tags}")


if __name__ == "__main__":
    main()
