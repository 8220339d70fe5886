"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line
that is printed in the pytest terminal summary; running this file directly
prints the same lines."""

from __future__ import annotations

import os
import subprocess
import sys
import time

import pytest

from kanforge import mutants
from kanforge.awfs import (check_comonad, check_factorisation, check_functoriality, check_monad,
                           check_naturality, sample_squares)
from kanforge.boxes import check_uniformity
from kanforge.bridge import canonical_algebra, check_algebra, filling_to_algebra, roundtrip_check
from kanforge.catalog import (box_inclusion, cube_to_terminal, formal_fibration, produced_fibrations,
                              sample_morphisms, twisted_fibration)
from kanforge.cubes import check_eta, check_lifting, cube_object, small_jobjects
from kanforge.enumeration import brute_force_counts, count_terms
from kanforge.kterms import free
from kanforge.laws import SuiteConfig, check_enumeration, run_suite
from kanforge.names import Name
from kanforge.paths import (check_path_object, check_pullback_stability, path_fibration, path_object,
                            standard_squares)
from kanforge.reports import Report
from kanforge.zsub import TERMINAL, check_zsub_axioms

try:
    from conftest import ACCEPTANCE
except ImportError:  # run as a script
    ACCEPTANCE = {}

NAMES = tuple(Name(k) for k in range(4))
SEED = 7


def _merge(reports, label) -> Report:
    out = Report(label, SEED)
    for prefix, r in reports:
        out.merge(r, prefix)
    return out


def _least(rep: Report, laws) -> int:
    return min(rep.checks.get(law, 0) for law in laws)


def _record(n: int, ok: bool, detail: str):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def _failures(rep: Report) -> str:
    return "" if rep.clean else f"; failed {dict(rep.failed)}"


# -- criteria -----------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    reports = [("terminal/", check_zsub_axioms(TERMINAL, 1000, SEED, NAMES, 3))]
    for k in (1, 2, 3):
        reports.append((f"cube{k}/", check_zsub_axioms(cube_object(NAMES[:k]), 1000, SEED, NAMES, 3)))
    for f in sample_morphisms():
        reports.append((f"K({f.label})/", check_zsub_axioms(free(f).object, 1000, SEED, NAMES, 3)))
    P = path_object(formal_fibration(box_inclusion()))
    reports.append(("P/", check_zsub_axioms(P, 1000, SEED, NAMES, 2)))
    elapsed = time.perf_counter() - start
    rep = _merge(reports, "c1")
    per_object = min(r.checks.get("closure", 0) for _, r in reports)
    ok = rep.clean and per_object >= 1000 and elapsed < 60
    return _record(1, ok, f"8 objects, {per_object} cases each, {sum(rep.failed.values())} counterexamples, "
                          f"{elapsed:.1f}s{_failures(rep)}")


def criterion_2():
    reports = []
    for f in sample_morphisms():
        reports.append((f"{f.label}/", check_comonad(f, 500, SEED, NAMES, 2)))
        reports.append((f"{f.label}/", check_monad(f, 500, SEED, NAMES, 2)))
    rep = _merge(reports, "c2")
    laws = ["left-counit", "right-counit", "coassociativity", "left-unit", "right-unit", "associativity"]
    least = min(r.checks.get(law, 500) for _, r in reports for law in laws if law in r.checks)
    ok = rep.clean and least >= 500
    return _record(2, ok, f"6 laws x 3 morphisms, >= {least} samples per law{_failures(rep)}")


def criterion_3():
    reports = []
    for f in sample_morphisms():
        reports.append((f"{f.label}/", check_factorisation(f, 500, SEED, NAMES, 2)))
        reports.append((f"{f.label}/", check_functoriality(f, 500, SEED, NAMES, 2)))
    for sq in sample_squares():
        reports.append((f"{sq.label}/", check_naturality(sq, 500, SEED, NAMES, 2)))
    rep = _merge(reports, "c3")
    least = min(n for n in rep.checks.values())
    ok = rep.clean and least >= 500
    return _record(3, ok, f"factorisation, 2 naturality squares on {len(sample_squares())} squares, "
                          f"identity and composition; >= {least} samples{_failures(rep)}")


def criterion_4():
    reports, monad = [], True
    for f in sample_morphisms():
        reports.append((f"{f.label}/canonical/", check_algebra(canonical_algebra(f), 500, SEED, NAMES, 2)))
        for fs in (formal_fibration(f), twisted_fibration(f)):
            rt = roundtrip_check(fs.morphism, fs=fs, alg=filling_to_algebra(fs), iters=500, seed=SEED,
                                 names=NAMES, depth=2)
            reports.append((f"{fs.label}/", rt.report))
            monad = monad and rt.monad
    rep = _merge(reports, "c4")
    boxes = _least(reports[1][1], ["filling-algebra-filling"])
    terms = _least(reports[1][1], ["algebra-filling-algebra"])
    canon = _least(reports[0][1], ["unit", "codomain", "multiplication"])
    ok = rep.clean and monad and min(boxes, terms, canon) >= 500
    return _record(4, ok, f"{boxes} boxes and {terms} terms per fibration, canonical algebra "
                          f"{canon} samples per diagram{_failures(rep)}")


def criterion_5():
    fibs = produced_fibrations() + [path_fibration(path_object(fs)) for fs in
                                    (formal_fibration(cube_to_terminal(2)), formal_fibration(box_inclusion()))]
    reports = [(f"{fs.label}/", check_uniformity(fs, 500, SEED, NAMES, 2)) for fs in fibs]
    rep = _merge(reports, "c5")
    least = min(sum(r.checks.get(f"{k}-fresh-subst", 0) for k in ("up", "down")) for _, r in reports)
    ok = rep.clean and least >= 500
    return _record(5, ok, f"{len(fibs)} filling operators, {least} box pairs each{_failures(rep)}")


def criterion_6():
    eta = [(f"{obj!r}/", check_eta(obj, NAMES, seed=SEED)) for obj in small_jobjects(2, 1)]
    lift = [(f"{fs.label}/", check_lifting(fs, 200, SEED, NAMES, 2))
            for fs in (formal_fibration(box_inclusion()), twisted_fibration(cube_to_terminal(2)))]
    rep = _merge(eta + lift, "c6")
    diagrams = ["coalgebra-top-square", "coalgebra-counit", "coalgebra-comultiplication"]
    points = sum(r.checks.get("coalgebra-counit", 0) for _, r in eta)
    all_diagrams = all(r.checks.get(d, 0) > 0 for _, r in eta for d in diagrams)
    rt = min(r.checks.get("fibration-lifting-fibration", 0) for _, r in lift)
    enl = min(r.checks.get("support-enlargement", 0) for _, r in lift)
    ok = rep.clean and all_diagrams and rt >= 200 and enl >= 100
    return _record(6, ok, f"eta diagrams on {points} points of {len(eta)} generators, {rt} lifting round "
                          f"trips, {enl} support-enlargement cases{_failures(rep)}")


def criterion_7():
    reports = [(f"n{n}/", check_enumeration(2, n)) for n in (1, 2)]
    rep = _merge(reports, "c7")
    counts = {}
    for r, n in [(2, 1), (2, 2), (1, 3)]:
        counts[(r, n)] = (count_terms(r, n), brute_force_counts(r, n))
    agree = all(a == b for a, b in counts.values())
    base = count_terms(0, 4) == {0: 1}
    single = count_terms(1, 1)[1] == 4
    ok = rep.clean and agree and base and single
    ranked = rep.checks.get("n1/rank-is-stage", 0) + rep.checks.get("n2/rank-is-stage", 0)
    return _record(7, ok, f"{ranked} enumerated terms ranked, counts "
                          f"{ {f'r{r}n{n}': a for (r, n), (a, _) in counts.items()} } match oracle: {agree}, "
                          f"rank-0 = 1: {base}, rank-1 over {{a0}} = 4: {single}{_failures(rep)}")


def criterion_8():
    reports = []
    for fs in (formal_fibration(box_inclusion()), twisted_fibration(box_inclusion())):
        P = path_object(fs)
        reports.append((f"{fs.label}/", check_path_object(P, 500, SEED, NAMES, 2, fill_iters=200)))
    P = path_object(formal_fibration(box_inclusion()))
    squares = [(f"{sq.label}/", check_pullback_stability(sq, sample, 100, SEED, NAMES, 2))
               for sq, sample in standard_squares(P)]
    enum = [(f"enum{n}/", check_enumeration(2, n)) for n in (1, 2)]
    rep = _merge(reports + squares + enum, "c8")
    bind = min(_least(r, ["bind-unbind", "unbind-bind", "closed-under-action", "closed-under-subst"])
               for _, r in reports)
    counit = min(_least(r, ["counit"]) for _, r in reports)
    fill = min(_least(r, ["fill-is-filler", "fill-is-normal"]) for _, r in reports)
    pb = min(_least(r, ["transport-lift", "lift-transport"]) for _, r in squares)
    image = sum(r.checks.get("decidable-image-identity", 0) for _, r in enum)
    ok = rep.clean and bind >= 500 and counit >= 500 and fill >= 200 and pb >= 100 and len(squares) == 2 and image
    return _record(8, ok, f"bind/unbind and closure {bind}, counit {counit}, path_fill {fill}, pullback "
                          f"{pb} per square over {len(squares)} squares, decidable_image on {image} "
                          f"enumerated terms{_failures(rep)}")


def criterion_9():
    cfg = SuiteConfig(seed=SEED, iters=100)
    outcome = {}
    for m in sorted(mutants.KNOWN):
        with mutants.enabled(m):
            broken = [s for s in ("zsub", "monad", "bridge", "path") if not run_suite(s, cfg).clean]
        outcome[m] = broken
    ok = all(outcome.values())
    return _record(9, ok, "; ".join(f"{m} breaks {','.join(b) or 'nothing'}" for m, b in outcome.items()))


def criterion_10():
    cmd = [sys.executable, "-m", "kanforge", "laws", "--suite", "all", "--seed", "7"]
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        env.pop("KANFORGE_SEED", None)
        outs.append(subprocess.run(cmd, capture_output=True, env=env))
    same = outs[0].stdout == outs[1].stdout and outs[0].returncode == outs[1].returncode
    ok = same and outs[0].returncode == 0 and len(outs[0].stdout) > 0
    return _record(10, ok, f"two runs byte-identical: {same}, exit codes "
                           f"{[o.returncode for o in outs]}, {len(outs[0].stdout)} bytes")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
