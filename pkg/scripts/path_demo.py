"""Print the path-object transcript for several seeds and check that the
counit trace closes each time."""

import argparse

from kanforge.cli import path_demo


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--width", type=int, default=200, help="truncate long lines")
    args = ap.parse_args()
    ok_all = True
    for seed in args.seeds:
        lines, ok = path_demo(seed)
        ok_all &= ok
        for line in lines:
            print(line if len(line) <= args.width else line[: args.width] + " ...")
        print()
    raise SystemExit(0 if ok_all else 1)


if __name__ == "__main__":
    main()
