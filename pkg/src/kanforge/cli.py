"""Command-line interface.

Exit codes: 0 clean, 1 law failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import mutants
from .boxes import random_box
from .catalog import box_inclusion, cube_to_terminal, formal_fibration, unit_morphism
from .enumeration import MAX_ALPHABET, MAX_RANK, ResourceLimit, brute_force_counts, count_terms
from .kterms import SchemaError, free, term_from_json, term_to_json
from .laws import SUITES, SuiteConfig, run_suite
from .names import Name, Perm, fresh_name, parse_name
from .paths import (abstraction_to_normal_form, direction_of, homotopy_l, path_fill, path_object,
                    reflexivity_coalgebra, unbind)

MORPHISMS = {
    "unit": unit_morphism,
    "cube": lambda: cube_to_terminal(2),
    "incl": box_inclusion,
}


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("KANFORGE_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"KANFORGE_SEED must be an integer, got {raw!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# -- laws ----------------------------------------------------------------------------


def cmd_laws(args) -> int:
    if args.iters < 0:
        raise UsageError("--iters must be non-negative")
    if not 0 <= args.rank_max <= MAX_RANK:
        raise UsageError(f"--rank-max must be in 0..{MAX_RANK}")
    if not 2 <= args.names_max <= MAX_ALPHABET:
        raise UsageError(f"--names-max must be in 2..{MAX_ALPHABET}")
    cfg = SuiteConfig(seed=args.seed, iters=args.iters, rank_max=args.rank_max, names_max=args.names_max)
    with mutants.enabled(*args.mutant):
        rep = run_suite(args.suite, cfg)
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return 0 if rep.clean else 1


# -- enumerate -----------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    counts = count_terms(args.rank_max, args.alphabet, args.limit)
    out = {"rank_max": args.rank_max, "alphabet": args.alphabet,
           "counts": {str(r): n for r, n in sorted(counts.items())}}
    if args.check:
        oracle = brute_force_counts(args.rank_max, args.alphabet)
        out["oracle"] = {str(r): n for r, n in sorted(oracle.items())}
        out["match"] = oracle == counts
    if args.format == "json":
        print(_dump(out))
    else:
        for r, n in sorted(counts.items()):
            print(f"rank {r}: {n}")
        print(f"total: {sum(counts.values())}")
        if args.check:
            print("oracle agrees" if out["match"] else f"oracle DISAGREES: {out['oracle']}")
    return 0 if out.get("match", True) else 1


# -- term ----------------------------------------------------------------------------


def _read_json(text: str, loc: str):
    if text == "-":
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(loc, f"invalid JSON: {e}") from None


def _parse_perm(text: str) -> Perm:
    try:
        mapping = json.loads(text)
        if not isinstance(mapping, dict):
            raise ValueError("expected a JSON object")
        return Perm.from_mapping({parse_name(k): parse_name(v) for k, v in mapping.items()})
    except ValueError as e:
        raise UsageError(f"--perm: {e}") from None


def cmd_term(args) -> int:
    K = free(MORPHISMS[args.morphism]()).object
    t = term_from_json(K, _read_json(args.term, "$"), "$")
    if args.action == "rank":
        print(_dump({"rank": t.rank}))
    elif args.action == "subst":
        if args.name is None or args.bit is None:
            raise UsageError("subst needs --name and --bit")
        print(_dump(term_to_json(K, K.subst(t, _name(args.name), args.bit))))
    elif args.action == "act":
        if args.perm is None:
            raise UsageError("act needs --perm")
        print(_dump(term_to_json(K, K.act(_parse_perm(args.perm), t))))
    else:
        if args.other is None:
            raise UsageError("eq needs --other")
        u = term_from_json(K, _read_json(args.other, "$other"), "$other")
        print(_dump({"equal": t == u}))
    return 0


def _name(text: str) -> Name:
    try:
        return parse_name(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


# -- path demo -----------------------------------------------------------------------


def path_demo(seed: int) -> tuple[list[str], bool]:
    """A deterministic walk through ``P_Y X`` for the formal fibration on
    ``[]{a0,a1} -> 1``: reflexivity, a normal form from a name abstraction,
    unbinding, a filler, and the counit computed step by step."""
    fs = formal_fibration(cube_to_terminal(2))
    P = path_object(fs)
    KD, X = P.KD, P.X
    r, c = reflexivity_coalgebra(P)
    Kr = c.target
    rng = random.Random(seed)
    names = tuple(Name(k) for k in range(3))
    lines = [f"seed {seed}", f"fibration {fs.label}"]

    x = X.gen(rng, names, 0)
    while not X.support(x):
        x = X.gen(rng, names, 0)
    lines.append(f"x = {x!r}")
    lines.append(f"r(x) = {r(x)!r}")
    lines.append(f"c(r(x)) = {c(r(x))!r}")
    lines.append(f"c(r(x)) == lam_r(x): {c(r(x)) == Kr.lam(x)}")

    a = min(X.support(x))
    w = abstraction_to_normal_form(P, a, x)
    lines.append(f"w = <{a}>x as a normal form = {w!r}")
    lines.append(f"direction(w) = {direction_of(w)}")
    lines.append(f"endpoints(w) = {KD.rho(w)!r}")
    lines.append(f"normal form JSON = {_dump(P.to_json(w))}")

    lines.append("counit trace:")
    d = fresh_name(w.support)
    z = unbind(P, w, d)
    lines.append(f"  1. unbind at fresh {d}: z = {z!r}")
    b = fresh_name(w.support | {d})
    lz = homotopy_l(P, z, b)
    lines.append(f"  2. l(z, {b}) = {lz!r}")
    cw = Kr.subst(lz, b, 1)
    lines.append(f"  3. c(w) = l(z, {b})({b}:=1) = {cw!r}")
    lines.append(f"  4. c(w) == c applied directly: {cw == c(w)}")
    back = Kr.rho(cw)
    lines.append(f"  5. rho_r(c(w)) = {back!r}")
    lines.append(f"  6. rho_r(c(w)) == w: {back == w}")

    box = random_box(P.rho, rng, names, 1, 1, max_dim=2, x=w)
    y = path_fill(P, box)
    lines.append(f"box = {box!r}")
    lines.append(f"path_fill(box) = {y!r}")
    lines.append(f"filler is normal: {P.contains(y)}")
    ok = c(r(x)) == Kr.lam(x) and cw == c(w) and back == w and P.contains(y)
    return lines, ok


def cmd_path_demo(args) -> int:
    lines, ok = path_demo(args.seed)
    print("\n".join(lines))
    return 0 if ok else 1


# -- entry point ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser(seed: int) -> argparse.ArgumentParser:
    p = _Parser(prog="kanforge", description="Kan filling, free fibrations and path objects on 01-substitution sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("laws", help="run a seeded law suite")
    q.add_argument("--suite", choices=SUITES + ("all",), default="all")
    q.add_argument("--seed", type=int, default=seed)
    q.add_argument("--iters", type=int, default=500)
    q.add_argument("--rank-max", type=int, default=2)
    q.add_argument("--names-max", type=int, default=4)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.add_argument("--mutant", action="append", default=[], choices=sorted(mutants.KNOWN),
                   help="enable a source mutation (repeatable)")
    q.set_defaults(run=cmd_laws)

    q = sub.add_parser("enumerate", help="count K 1_1 terms by rank")
    q.add_argument("--rank-max", type=int, default=2)
    q.add_argument("--alphabet", type=int, default=2, help="number of names a0.. available")
    q.add_argument("--limit", type=int, default=200_000, help="maximum number of terms")
    q.add_argument("--check", action="store_true", help="compare with the brute-force oracle")
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(run=cmd_enumerate)

    q = sub.add_parser("term", help="operate on a term given as JSON")
    q.add_argument("action", choices=("rank", "subst", "act", "eq"))
    q.add_argument("term", help="term JSON, or - for stdin")
    q.add_argument("--morphism", choices=sorted(MORPHISMS), default="unit")
    q.add_argument("--name")
    q.add_argument("--bit", type=int, choices=(0, 1))
    q.add_argument("--perm", help='JSON object such as {"a0": "a1", "a1": "a0"}')
    q.add_argument("--other", help="second term JSON for eq")
    q.set_defaults(run=cmd_term)

    q = sub.add_parser("path-demo", help="print a path-object transcript")
    q.add_argument("--seed", type=int, default=seed)
    q.set_defaults(run=cmd_path_demo)
    return p


def main(argv=None) -> int:
    try:
        seed = default_seed()
        args = build_parser(seed).parse_args(argv)
        return args.run(args)
    except SchemaError as e:
        print(_dump({"error": "SchemaError", "location": e.location, "message": str(e)}), file=sys.stderr)
        return 2
    except (UsageError, ResourceLimit) as e:
        print(f"kanforge: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
