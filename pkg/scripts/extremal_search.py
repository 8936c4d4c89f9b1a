#!/usr/bin/env python3
"""Exhaustive extremal searches at tiny scale, compared to the bounds.

Usage: python scripts/extremal_search.py [--pruned] [--max-edges 20]
"""

import argparse
import time

from hypermatch.core import BudgetExceeded
from hypermatch.verify import NU_LE_S, NU_LE_S_TAU_GT_S, verify_extremal

CASES = [
    (4, 2, 1, NU_LE_S),
    (5, 2, 1, NU_LE_S),
    (6, 2, 2, NU_LE_S),
    (5, 3, 1, NU_LE_S),
    (5, 3, 1, NU_LE_S_TAU_GT_S),
    (6, 3, 1, NU_LE_S_TAU_GT_S),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--pruned", action="store_true")
    args = ap.parse_args()
    method = "pruned" if args.pruned else "exhaustive"

    print("n\tk\ts\tconstraint\tmax e\tbound\tmatch\tchecked\ttime")
    for n, k, s, constraint in CASES:
        t0 = time.time()
        try:
            res = verify_extremal(n, k, s, constraint, method=method)
        except BudgetExceeded as exc:
            print(f"{n}\t{k}\t{s}\t{constraint}\trefused: {exc}")
            continue
        print(
            f"{n}\t{k}\t{s}\t{constraint}\t{res.max_edges_found}\t"
            f"{res.bound_value}\t{res.matches_bound}\t{res.subsets_checked}\t"
            f"{time.time() - t0:.2f}s"
        )


if __name__ == "__main__":
    main()
