#!/usr/bin/env python3
"""Brute-force stability survey at small orders.

Tabulates the exact minimum distance between distinct group tables on
{0..n-1} for n <= 7, split by scope, plus the per-group values at order 8
when --allow-slow is passed.
"""

import argparse

from cayleydist import (
    GroupKind,
    brute_delta,
    distinct_table_counts,
    is_prime,
    kind_stability,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--allow-slow", action="store_true", help="include order 8")
    args = ap.parse_args()

    for n in range(2, 8):
        counts = distinct_table_counts(n)
        delta, _ = brute_delta(n)
        line = f"n={n}  tables={sum(counts.values())} {counts}  delta={delta}"
        if not is_prime(n):
            line += f"  mu={brute_delta(n, 'mu')[0]}  nu={brute_delta(n, 'nu')[0]}"
        print(line)

    if args.allow_slow:
        kinds = [
            GroupKind.cyclic(8),
            GroupKind.direct_product(GroupKind.cyclic(4), GroupKind.cyclic(2)),
            GroupKind.elementary_abelian(3),
            GroupKind.dihedral(4),
            GroupKind.quaternion8(),
        ]
        print(f"n=8  tables={sum(distinct_table_counts(8).values())}")
        for kind in kinds:
            mu, _ = kind_stability(kind, "mu", allow_slow=True)
            nu, _ = kind_stability(kind, "nu", allow_slow=True)
            print(f"  {kind.label():20s} mu={mu:3d}  nu={nu:3d}  delta={min(mu, nu)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
