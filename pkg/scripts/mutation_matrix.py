"""Which suites catch which source mutation.  Each row is a mutant; each
cell is the number of failed checks in that suite."""

import argparse

from kanforge import mutants
from kanforge.laws import SUITES, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--iters", type=int, default=100)
    args = ap.parse_args()
    cfg = SuiteConfig(seed=args.seed, iters=args.iters)
    print(f"{'mutant':<20}" + "".join(f"{s:>12}" for s in SUITES))
    rows = [("none", ())] + [(m, (m,)) for m in sorted(mutants.KNOWN)]
    for label, ms in rows:
        with mutants.enabled(*ms):
            cells = [sum(run_suite(s, cfg).failed.values()) for s in SUITES]
        print(f"{label:<20}" + "".join(f"{c:>12}" for c in cells))


if __name__ == "__main__":
    main()
