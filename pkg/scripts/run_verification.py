#!/usr/bin/env python3
"""Drive every exhaustive verification sweep over the acceptance range.

The default range matches the acceptance suite: ell in {2, 3, 5, 7, 11, 13},
f up to 4, capped at ell^(2f) <= 10^7, which is 22 field tasks and roughly
1.3e7 residue classes per counting sweep.  Prints one summary line per kind
and exits nonzero if any sweep reports a mismatch.

Usage:

    python3 scripts/run_verification.py
    python3 scripts/run_verification.py --kinds counts-irred symmetry --jobs 4
"""

from __future__ import annotations

import argparse
import sys
import time

from serreweights import sweeps


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--kinds",
        nargs="+",
        default=list(sweeps.ALL_KINDS),
        choices=sweeps.ALL_KINDS,
        metavar="KIND",
        help="verification kinds to run (default: all)",
    )
    parser.add_argument("--ell", default="2,3,5,7,11,13", help="comma-separated primes")
    parser.add_argument("--f-max", type=int, default=4, dest="f_max")
    parser.add_argument("--space-cap", type=int, default=10**7, dest="space_cap")
    parser.add_argument("--budget", type=float, default=2e7)
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    args = parser.parse_args(argv)

    ells = [int(x) for x in args.ell.split(",") if x.strip()]
    t0 = time.monotonic()
    bad = 0
    for kind in args.kinds:
        r = sweeps.verify_sweep(
            kind,
            ells,
            args.f_max,
            budget=args.budget,
            space_cap=args.space_cap,
            jobs=args.jobs,
        )
        status = "PASS" if r.passed else "FAIL"
        print(
            f"{kind:<20} tasks={len(r.tasks):<3} checked={r.checked:<10}"
            f" mismatches={r.mismatch_count:<3} {status}  [{r.elapsed_s:.1f}s]"
        )
        for w in r.mismatches[:5]:
            print(f"    witness: {w}")
        if not r.passed:
            bad += 1
    print(f"total {time.monotonic() - t0:.1f}s, {bad} failing kind(s)")
    return 0 if bad == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
