"""Time the full verification suite and list the slowest batteries.

    python scripts/time_suite.py --q 3,4,5,7
"""

import argparse
import time

from supportring.oracle import SuiteConfig, run_full_suite

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", default="3,4,5,7")
    ap.add_argument("--top", type=int, default=10)
    args = ap.parse_args()
    qs = tuple(int(t) for t in args.q.split(","))
    t0 = time.perf_counter()
    rep = run_full_suite(SuiteConfig(qs=qs))
    total = time.perf_counter() - t0
    print(f"{len(rep.checks)} checks, {len(rep.failures)} failures, {total:.1f}s total")
    for name, dt in sorted(rep.timings.items(), key=lambda kv: -kv[1])[: args.top]:
        print(f"  {dt:7.3f}s  {name}")
