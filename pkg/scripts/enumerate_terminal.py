"""Count the terms of K 1_1 by rank for small alphabets, comparing the
backtracking enumerator with the staged brute force wherever the latter is
affordable."""

import argparse
import time

from kanforge.enumeration import ResourceLimit, brute_force_counts, count_terms


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank-max", type=int, default=2)
    ap.add_argument("--alphabets", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    for n in args.alphabets:
        t = time.perf_counter()
        try:
            counts = count_terms(args.rank_max, n)
        except ResourceLimit as e:
            print(f"alphabet {n}: {e}")
            continue
        dt = time.perf_counter() - t
        try:
            oracle = brute_force_counts(args.rank_max, n)
            verdict = "agrees" if oracle == counts else f"DISAGREES {oracle}"
        except ResourceLimit:
            verdict = "oracle skipped"
        row = "  ".join(f"r{r}={c}" for r, c in sorted(counts.items()))
        print(f"alphabet {n}: {row}  ({dt:.2f}s, oracle {verdict})")


if __name__ == "__main__":
    main()
