"""Run every law suite for a few seeds and print a per-suite table of
checks, failures and wall time."""

import argparse
import time

from kanforge.laws import SUITES, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 7])
    ap.add_argument("--iters", type=int, default=200)
    ap.add_argument("--suites", nargs="+", default=list(SUITES), choices=SUITES)
    args = ap.parse_args()
    print(f"{'suite':<12}{'seed':>6}{'checks':>10}{'failed':>8}{'seconds':>10}")
    bad = 0
    for seed in args.seeds:
        cfg = SuiteConfig(seed=seed, iters=args.iters)
        for s in args.suites:
            t = time.perf_counter()
            rep = run_suite(s, cfg)
            dt = time.perf_counter() - t
            nfail = sum(rep.failed.values())
            bad += nfail
            print(f"{s:<12}{seed:>6}{sum(rep.checks.values()):>10}{nfail:>8}{dt:>10.1f}")
            for law, detail in rep.failures[:3]:
                print(f"    {law}: {detail[:160]}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
