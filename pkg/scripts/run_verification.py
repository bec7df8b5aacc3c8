#!/usr/bin/env python3
"""Run the full prime-stability verification sweep (11 <= p <= 31).

Prints one summary line per prime and optionally dumps the JSON reports.
The all-rows consistency run at p = 11 is included by default.
"""

import argparse
import json
import time
from pathlib import Path

from cayleydist import prime_stability_verify

PRIMES = (11, 13, 17, 19, 23, 29, 31)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json-dir", help="write one report JSON per prime here")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--skip-all-rows", action="store_true")
    args = ap.parse_args()

    out_dir = Path(args.json_dir) if args.json_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    all_ok = True
    for p in PRIMES:
        start = time.perf_counter()
        report = prime_stability_verify(p, threads=args.threads)
        elapsed = time.perf_counter() - start
        ok = report.theorem_confirmed()
        all_ok &= ok
        searched = ", ".join(
            f"m={c.m}: {c.candidates_completing}/{c.candidates_enumerated} groups, min {c.min_distance}"
            for c in report.m_cases
        )
        excluded = ", ".join(f"m={b.m}" for b in report.analytic_exclusions)
        print(
            f"p={p:2d}  delta={report.delta:3d}  threshold={report.threshold:3d}  "
            f"[{searched or 'all m excluded'}; excluded: {excluded}]  "
            f"{'OK' if ok else 'FAILED'}  ({elapsed:.2f}s)"
        )
        if out_dir:
            (out_dir / f"verify_p{p}.json").write_text(
                json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
            )

    if not args.skip_all_rows:
        report = prime_stability_verify(11, all_rows=True, threads=args.threads)
        ok = report.theorem_confirmed() and report.delta == 48
        all_ok &= ok
        print(f"p=11 (all rows)  delta={report.delta}  {'OK' if ok else 'FAILED'}")

    print("conclusion:", "delta = 6p-18 confirmed for all searched primes" if all_ok else "FAILURE")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
