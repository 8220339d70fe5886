"""Seeded law suites.  Each suite returns one merged :class:`Report`; the
per-law iteration counts scale with ``iters`` (see :data:`SCALE`)."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import awfs
from .boxes import DOWN, UP, AdjacencyViolation, BoxError, FreshnessViolation, OpenBox, check_uniformity, validate_box
from .bridge import (canonical_algebra, check_algebra, fibdefs_chain, filling_to_algebra,
                     rank_switching_algebra, roundtrip_check)
from .catalog import (box_inclusion, cube_to_terminal, formal_fibration, lopsided_fibration,
                      produced_fibrations, sample_morphisms, twisted_fibration)
from .cubes import check_eta, check_lifting, cube_object, small_jobjects
from .enumeration import brute_force_stages, enumerate_terms, recursive_rank, staged_rank, terminal_k
from .kterms import free, pi, sigma
from .names import Name
from .paths import (check_path_object, check_pullback_stability, decidable_image, path_fibration,
                    path_object, standard_squares)
from .reports import Report
from .zsub import STAR, TERMINAL, check_morphism, check_zsub_axioms, identity

SUITES = ("zsub", "comonad", "monad", "bridge", "generators", "path")

# iterations per law as a multiple of --iters
SCALE = {"zsub": 2.0, "lifting": 0.4, "pullback": 0.2, "path-fill": 0.4}


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    iters: int = 500
    rank_max: int = 2
    names_max: int = 4

    @property
    def names(self) -> tuple[Name, ...]:
        return tuple(Name(k) for k in range(self.names_max))

    def n(self, key: str | None = None) -> int:
        return int(round(self.iters * SCALE.get(key, 1.0)))


def _path_fibrations():
    return [formal_fibration(cube_to_terminal(2)), formal_fibration(box_inclusion()),
            twisted_fibration(box_inclusion())]


def check_box_validation(iters: int, seed: int, names, depth: int) -> Report:
    """Validation must reject a face that mentions its own direction, and a
    pair of faces that disagree on their common edge."""
    rng = random.Random(seed)
    K = terminal_k()
    rep = Report("box-validation", seed, iters)
    for _ in range(iters):
        t = K.gen(rng, names, depth)
        while not t.support:
            t = K.gen(rng, names, depth)
        b = rng.choice(sorted(t.support))
        kind = rng.randint(0, 1)
        try:
            validate_box(OpenBox(kind, {b}, b, {(b, 1 - kind): t}, STAR), K.rho)
            caught = False
        except FreshnessViolation:
            caught = True
        rep.check("rejects-stale-face", caught, lambda: f"t={t!r} b={b}")
        # (c,0) is a down-filler whose (b,0) face is a composite, so it
        # disagrees with the base face at (b,0)
        c = Name(max(n.id for n in names) + 1)
        edge = K.fill(OpenBox(DOWN, {b}, b, {(b, 1): K.base(STAR)}, STAR))
        faces = {(b, 0): K.base(STAR), (c, 0): edge, (c, 1): K.base(STAR)}
        try:
            validate_box(OpenBox(UP, {b, c}, b, faces, STAR), K.rho)
            caught = False
        except AdjacencyViolation:
            caught = True
        except BoxError:
            caught = False
        rep.check("rejects-mismatched-edge", caught, lambda: f"b={b} c={c}")
    return rep


def _merge(rep: Report, build, prefix: str = "") -> None:
    """Merge the report produced by ``build``; an exception counts as one
    failure of the law ``<prefix>raised``."""
    try:
        sub = build()
    except Exception as exc:  # a law check that crashes has failed
        rep.fail(f"{prefix}raised", f"{type(exc).__name__}: {exc}"[:400])
        return
    rep.merge(sub, prefix)


# -- suites ------------------------------------------------------------------------


def suite_zsub(cfg: SuiteConfig) -> Report:
    rep = Report("zsub", cfg.seed, cfg.iters)
    n, d = cfg.n("zsub"), cfg.rank_max + 1
    _merge(rep, lambda: check_zsub_axioms(TERMINAL, n, cfg.seed, cfg.names, d), "terminal/")
    for k in (1, 2, 3):
        C = cube_object(Name(j) for j in range(k))
        _merge(rep, lambda: check_zsub_axioms(C, n, cfg.seed, cfg.names, d), f"cube{k}/")
    for f in sample_morphisms():
        _merge(rep, lambda: check_zsub_axioms(free(f).object, n, cfg.seed, cfg.names, d), f"K({f.label})/")
    P = path_object(formal_fibration(box_inclusion()))
    _merge(rep, lambda: check_zsub_axioms(P, n, cfg.seed, cfg.names, cfg.rank_max), "P/")
    _merge(rep, lambda: check_box_validation(cfg.n(), cfg.seed, cfg.names, cfg.rank_max), "boxes/")
    return rep


def suite_comonad(cfg: SuiteConfig) -> Report:
    rep = Report("comonad", cfg.seed, cfg.iters)
    n, names, d = cfg.n(), cfg.names, cfg.rank_max
    for f in sample_morphisms():
        pre = f"{f.label}/"
        ff = free(f)
        _merge(rep, lambda: awfs.check_factorisation(f, n, cfg.seed, names, d), pre)
        _merge(rep, lambda: awfs.check_comonad(f, n, cfg.seed, names, d), pre)
        _merge(rep, lambda: awfs.check_functoriality(f, n, cfg.seed, names, d), pre)
        for h in (ff.lam, ff.rho, sigma(f)):
            _merge(rep, lambda: check_morphism(h, n, cfg.seed, names, d), f"{pre}{h.label}/")
    for sq in awfs.sample_squares():
        _merge(rep, lambda: awfs.check_naturality(sq, n, cfg.seed, names, d), f"{sq.label}/")
    return rep


def suite_monad(cfg: SuiteConfig) -> Report:
    rep = Report("monad", cfg.seed, cfg.iters)
    n, names, d = cfg.n(), cfg.names, cfg.rank_max
    for f in sample_morphisms():
        _merge(rep, lambda: awfs.check_monad(f, n, cfg.seed, names, d), f"{f.label}/")
        _merge(rep, lambda: check_morphism(pi(f), n, cfg.seed, names, d), f"{f.label}/pi/")
    return rep


def _control_rank_switching(f, n, seed, names, d) -> Report:
    low, high = formal_fibration(f), twisted_fibration(f)
    ctrl = roundtrip_check(low.morphism, alg=rank_switching_algebra(low.morphism, low, high),
                           iters=n, seed=seed, names=names, depth=d)
    rep = Report("control", seed, n)
    rep.check("rank-switching-flagged-non-monad", ctrl.monad is False,
              lambda: "; ".join(ctrl.notes) or "multiplication law held on every sample")
    return rep


def _control_lopsided(n, seed, names, d) -> Report:
    lop = check_uniformity(lopsided_fibration(box_inclusion()), n, seed, names, d)
    rep = Report("control", seed, n)
    rep.check("lopsided-detected", not lop.clean, "the lopsided filler passed every uniformity check")
    return rep


def suite_bridge(cfg: SuiteConfig) -> Report:
    rep = Report("bridge", cfg.seed, cfg.iters)
    n, names, d = cfg.n(), cfg.names, cfg.rank_max
    for f in sample_morphisms():
        pre = f"{f.label}/"
        _merge(rep, lambda: check_algebra(canonical_algebra(f), n, cfg.seed, names, d), f"{pre}canonical/")
        for fs in (formal_fibration(f), twisted_fibration(f)):
            _merge(rep, lambda: roundtrip_check(fs.morphism, fs=fs, alg=filling_to_algebra(fs), iters=n,
                                                seed=cfg.seed, names=names, depth=d).report, f"{fs.label}/")
        if n:
            _merge(rep, lambda: _control_rank_switching(f, n, cfg.seed, names, d), f"{pre}control/")
        _merge(rep, lambda: fibdefs_chain(twisted_fibration(f), n, cfg.seed, names, d), pre)
    for fs in produced_fibrations():
        _merge(rep, lambda: check_uniformity(fs, n, cfg.seed, names, d), f"uniformity/{fs.label}/")
    if n:
        _merge(rep, lambda: _control_lopsided(n, cfg.seed, names, d), "uniformity/control/")
    return rep


def suite_generators(cfg: SuiteConfig) -> Report:
    rep = Report("generators", cfg.seed, cfg.iters)
    if not cfg.iters:
        return rep
    for obj in small_jobjects(2, 1):
        _merge(rep, lambda: check_eta(obj, cfg.names, seed=cfg.seed), "eta/")
    n = cfg.n("lifting")
    for fs in (formal_fibration(box_inclusion()), twisted_fibration(cube_to_terminal(2))):
        _merge(rep, lambda: check_lifting(fs, n, cfg.seed, cfg.names, cfg.rank_max), f"{fs.label}/")
    return rep


def check_enumeration(rank_max: int, size: int) -> Report:
    """Backtracking enumeration against the staged brute force, stored and
    recursive rank against the stage index, and ``decidable_image`` against
    membership in the image of ``lam`` (diagonals: identity and ``sigma``)."""
    rep = Report(f"enumeration:r{rank_max}:n{size}", None, None)
    K = terminal_k()
    f = K.f
    layers = enumerate_terms(rank_max, size)
    stages = brute_force_stages(rank_max, size)
    listed = [t for r in sorted(layers) for t in layers[r]]
    rep.check("same-terms", set(listed) == set(stages[rank_max]),
              lambda: f"{len(listed)} enumerated vs {len(stages[rank_max])} staged")
    image = {K.lam(STAR)}
    s = sigma(f)
    one = identity(K)
    for r in sorted(layers):
        for t in layers[r]:
            rep.check("rank-is-stage", t.rank == r == staged_rank(t, stages), lambda: f"t={t!r}")
            rep.check("recursive-rank", recursive_rank(t) == t.rank, lambda: f"t={t!r}")
            rep.check("decidable-image-identity", decidable_image(one, t) == (t in image), lambda: f"t={t!r}")
            rep.check("decidable-image-sigma", decidable_image(s, t) == (t in image), lambda: f"t={t!r}")
    return rep


def suite_path(cfg: SuiteConfig) -> Report:
    rep = Report("path", cfg.seed, cfg.iters)
    n, names, d = cfg.n(), cfg.names, cfg.rank_max
    for fs in _path_fibrations():
        P = path_object(fs)
        pre = f"{fs.label}/"
        _merge(rep, lambda: check_path_object(P, n, cfg.seed, names, d, fill_iters=cfg.n("path-fill")), pre)
        _merge(rep, lambda: check_uniformity(path_fibration(P), cfg.n("path-fill"), cfg.seed, names, d), f"{pre}P-")
    P = path_object(formal_fibration(box_inclusion()))
    for sq, sample in standard_squares(P):
        _merge(rep, lambda: check_pullback_stability(sq, sample, cfg.n("pullback"), cfg.seed, names, d),
                  f"{sq.label}/")
    if cfg.iters:
        for size in (1, 2):
            _merge(rep, lambda: check_enumeration(min(cfg.rank_max, 2), min(size, cfg.names_max)), f"enum{size}/")
    return rep


RUNNERS = {
    "zsub": suite_zsub, "comonad": suite_comonad, "monad": suite_monad, "bridge": suite_bridge,
    "generators": suite_generators, "path": suite_path,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    if name == "all":
        rep = Report("all", cfg.seed, cfg.iters)
        for s in SUITES:
            _merge(rep, lambda: RUNNERS[s](cfg), f"{s}:")
        return rep
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    return RUNNERS[name](cfg)


__all__ = ["RUNNERS", "SCALE", "SUITES", "SuiteConfig", "check_box_validation", "check_enumeration", "run_suite"]
