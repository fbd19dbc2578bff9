#!/usr/bin/env python3
"""Run every verification suite across the standard prime configurations.

Prints one row per (prime, suite) with check counts and wall time, then
an overall verdict.  Exits nonzero if anything failed.

Example:
    python scripts/run_verification.py --trials 20
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from utt.padic import make_context
from utt.verify import SUITE_ORDER, default_suite_config, run_suites

STANDARD_TRIPLES = ((3, 2, 20), (5, 2, 20), (7, 3, 20))


@dataclass(frozen=True)
class SweepConfig:
    W: int = 12
    nmax: int = 8
    kmax: int = 8
    trials: int = 50
    seed: int = 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--W", type=int, default=12)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sweep = SweepConfig(args.W, args.nmax, args.kmax, args.trials, args.seed)

    cfg = default_suite_config(
        W=sweep.W, nmax=sweep.nmax, kmax=sweep.kmax, trials=sweep.trials, seed=sweep.seed
    )
    print(f"{'prime':>6}  {'suite':<14} {'checks':>7} {'failed':>7} {'time':>8}")
    grand_total = grand_failed = 0
    t_start = time.perf_counter()
    for p, q, N in STANDARD_TRIPLES:
        ctx = make_context(p, q, N)
        for suite in SUITE_ORDER:
            t0 = time.perf_counter()
            results = list(run_suites(ctx, [suite], cfg))
            dt = time.perf_counter() - t0
            failed = sum(not r.passed for r in results)
            grand_total += len(results)
            grand_failed += failed
            flag = "" if failed == 0 else "  <-- FAIL"
            print(
                f"{p:>6}  {suite:<14} {len(results):>7} {failed:>7} {dt:>7.2f}s{flag}"
            )
    dt_all = time.perf_counter() - t_start
    verdict = "all checks passed" if grand_failed == 0 else f"{grand_failed} FAILED"
    print(f"\n{grand_total} checks in {dt_all:.1f}s: {verdict}")
    return 0 if grand_failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
