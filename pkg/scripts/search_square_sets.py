#!/usr/bin/env python3
"""Map out square-difference point sets across small fields.

For each prime power q = 1 mod 4 up to a bound, report the
lexicographically first n-point set whose pairwise differences are all
nonzero squares, for each even n up to a cap.  A dash means the
exhaustive backtracking search proved no such set exists at that size --
small fields run out quickly even though large ones always succeed.

Usage:
    python scripts/search_square_sets.py [--max-q 101] [--max-n 8]
"""

import argparse

from grsdual.construct import search_square_difference_set
from grsdual.gf import split_prime_power


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-q", type=int, default=101)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--node-budget", type=int, default=10 ** 6)
    args = parser.parse_args()

    print(f"{'q':>5}  {'n':>3}  set")
    for q in range(5, args.max_q + 1):
        if q % 4 != 1:
            continue
        try:
            split_prime_power(q)
        except Exception:
            continue
        for n in range(2, args.max_n + 1, 2):
            found = search_square_difference_set(q, n,
                                                 node_budget=args.node_budget)
            shown = "-" if found is None else "{" + ", ".join(
                map(str, found)) + "}"
            print(f"{q:>5}  {n:>3}  {shown}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
