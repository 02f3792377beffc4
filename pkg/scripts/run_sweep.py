#!/usr/bin/env python3
"""Sweep the formal degree identity over a parameter box and print a table.

Example:
    python scripts/run_sweep.py --q 3,5,7,9 --max-n 6 --r 2..5
"""

import argparse
import sys
import time

from tame_llc.cli import _parse_int_list
from tame_llc.conjectures import dim_delta, formal_degree_EP, valid_tuples, verify_formal_degree


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="3,5,7,9")
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--r", default="2..5")
    args = ap.parse_args()

    tuples = valid_tuples(_parse_int_list(args.q), args.max_n, _parse_int_list(args.r))
    t0 = time.monotonic()
    failures = 0
    print(f"{'(q,e,f,m,r)':>16} {'n':>2} {'dim':>14} {'formal degree':>16} status")
    for P in tuples:
        res = verify_formal_degree(P)
        if res.status != "OK":
            failures += 1
        print(f"{str((P.q, P.e, P.f, P.m, P.r)):>16} {P.n:>2} "
              f"{str(dim_delta(P, 'closed')):>14} "
              f"{str(formal_degree_EP(P)):>16} {res.status}")
    dt = time.monotonic() - t0
    print(f"\n{len(tuples)} tuples, {failures} failures, {dt:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
