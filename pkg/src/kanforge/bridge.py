"""Algebra structures for the pointed endofunctor ``R`` and their translation
to and from uniform Kan filling operators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .boxes import FibrationStructure, FillingOperator, OpenBox, is_filler
from .kterms import Base, Comp, Fill, KTerm, free, kmap, pi
from .names import Name
from .reports import Report
from .zsub import ZMorphism, check_morphism, identity


class AlgebraLawError(ValueError):
    pass


@dataclass(eq=False)
class AlgebraStructure:
    """``g: K f -> X`` with ``g . lam_f = 1`` and ``f . g = rho_f``."""

    f: ZMorphism
    g: ZMorphism
    label: str = "alg"

    @property
    def K(self):
        return free(self.f).object


def canonical_algebra(f: ZMorphism) -> AlgebraStructure:
    """``pi_f`` as an algebra structure on ``rho_f``."""
    ff = free(f)
    return AlgebraStructure(ff.rho, pi(f), f"pi_{f.label}")


def check_algebra(alg: AlgebraStructure, iters: int = 500, seed: int = 0,
                  names: Sequence[Name] = tuple(Name(k) for k in range(4)), depth: int = 2,
                  multiplication: bool = True) -> Report:
    """Unit, codomain and (optionally) multiplication laws on samples."""
    rng = random.Random(seed)
    f, g = alg.f, alg.g
    ff = free(f)
    K, X = ff.object, f.source
    rep = Report(f"algebra:{alg.label}", seed, iters)
    if multiplication:
        Kr = free(ff.rho).object
        Kg1 = kmap(g, identity(f.target), ff.rho, f, check_iters=0)
        mu = pi(f)
    for _ in range(iters):
        x = X.gen(rng, names, depth)
        rep.check("unit", g(ff.lam(x)) == x, lambda: f"x={x!r}")
        t = K.gen(rng, names, depth)
        gt = g(t)
        rep.check("codomain", f(gt) == ff.rho(t), lambda: f"t={t!r}")
        if multiplication:
            s = Kr.gen(rng, names, depth + 1)
            rep.check("multiplication", g(Kg1(s)) == g(mu(s)), lambda: f"s={s!r}")
    return rep


def algebra_to_filling(alg: AlgebraStructure, check_iters: int = 20, seed: int = 0) -> FibrationStructure:
    """``up(u, y) = g(Fill(lam . u, y))``; ``down`` likewise."""
    if check_iters:
        rep = check_algebra(alg, check_iters, seed, multiplication=False)
        if not rep.clean:
            raise AlgebraLawError(rep.to_text())
    K = alg.K
    g = alg.g

    def fill(box: OpenBox):
        formal = OpenBox(box.kind, box.names, box.open, ((k, K.base(v)) for k, v in box.faces), box.base)
        return g(K.fill(formal))

    return FibrationStructure(alg.f, FillingOperator(fill, fill), f"fill({alg.label})")


def filling_to_algebra(fs: FibrationStructure) -> AlgebraStructure:
    """``g(Fill(u, y)) = fill(g . u, y)``, and on compositions the missing
    face of that filler."""
    f = fs.morphism
    K = free(f).object
    X = f.source
    memo: dict = {}

    def g(t: KTerm):
        out = memo.get(t)
        if out is not None:
            return out
        if isinstance(t, Base):
            out = t.value
        else:
            box = t.box
            mapped = OpenBox(box.kind, box.names, box.open, ((k, g(v)) for k, v in box.faces), box.base)
            out = fs.fill(mapped)
            if isinstance(t, Comp):
                out = X.subst(out, box.open, box.kind)
        memo[t] = out
        return out

    return AlgebraStructure(f, ZMorphism(K, X, g, f"alg({fs.label})"), f"alg({fs.label})")


def rank_switching_algebra(f: ZMorphism, low: FibrationStructure, high: FibrationStructure) -> AlgebraStructure:
    """A pointed algebra that is not a monad algebra: fills with ``low`` on
    terms of rank at most 1 and with ``high`` above.  It satisfies the unit
    and codomain laws but not the multiplication law, and it does not
    commute with substitutions that lower the rank of a face.  Used only as
    a negative control."""
    K = free(f).object
    X = f.source
    memo: dict = {}

    def g(t: KTerm):
        out = memo.get(t)
        if out is not None:
            return out
        if isinstance(t, Base):
            out = t.value
        else:
            box = t.box
            mapped = OpenBox(box.kind, box.names, box.open, ((k, g(v)) for k, v in box.faces), box.base)
            out = (low if t.rank <= 1 else high).fill(mapped)
            if isinstance(t, Comp):
                out = X.subst(out, box.open, box.kind)
        memo[t] = out
        return out

    return AlgebraStructure(f, ZMorphism(K, X, g, "g_switch"), "rank-switching")


@dataclass
class RoundTrip:
    report: Report
    monad: bool | None = None
    notes: list = field(default_factory=list)


def roundtrip_check(f: ZMorphism, fs: FibrationStructure | None = None,
                    alg: AlgebraStructure | None = None, iters: int = 500, seed: int = 0,
                    names: Sequence[Name] = tuple(Name(k) for k in range(4)),
                    depth: int = 2) -> RoundTrip:
    """Filling -> algebra -> filling on sampled boxes, and algebra -> filling ->
    algebra on sampled terms.  An algebra failing the multiplication law is
    flagged non-monad; its round-trip differences are then recorded as notes
    rather than failures, since only monad algebras are expected to return."""
    rng = random.Random(seed)
    rep = Report(f"roundtrip:{f.label}", seed, iters)
    out = RoundTrip(rep)
    if fs is not None:
        alg1 = filling_to_algebra(fs)
        fs2 = algebra_to_filling(alg1, check_iters=0)
        for n in range(iters):
            box = fs.sample_box(rng, names, depth, kind=n % 2)
            x = fs.fill(box)
            rep.check("filling-algebra-filling", fs2.fill(box) == x, lambda: f"box={box!r}")
            rep.check("filler", is_filler(x, box, f), lambda: f"box={box!r}")
        rep.merge(check_algebra(alg1, iters, seed + 1, names, depth), "derived-")
    if alg is not None:
        law = check_algebra(alg, iters, seed + 2, names, depth)
        out.monad = law.failed.get("multiplication", 0) == 0
        if not out.monad:
            out.notes.append(f"non-monad input {alg.label}: multiplication law failed "
                             f"{law.failed['multiplication']}/{law.checks['multiplication']}")
            law.failed.pop("multiplication")
            law.failures = [x for x in law.failures if x[0] != "multiplication"]
        rep.merge(law, "input-")
        alg2 = filling_to_algebra(algebra_to_filling(alg, check_iters=0))
        K = alg.K
        differ = 0
        for _ in range(iters):
            t = K.gen(rng, names, depth)
            same = alg2.g(t) == alg.g(t)
            if out.monad:
                rep.check("algebra-filling-algebra", same, lambda: f"t={t!r}")
            elif not same:
                differ += 1
        if not out.monad:
            out.notes.append(f"algebra round trip differs on {differ}/{iters} sampled terms")
    return out


def fibdefs_chain(fs: FibrationStructure, iters: int = 200, seed: int = 0,
                  names: Sequence[Name] = tuple(Name(k) for k in range(4)), depth: int = 2) -> Report:
    """Uniform filling -> monad algebra -> (forget to) pointed algebra ->
    uniform filling, with every law checked and the final operator compared
    with the original."""
    from .boxes import check_uniformity

    f = fs.morphism
    rep = Report(f"chain:{fs.label}", seed, iters)
    rep.merge(check_uniformity(fs, iters, seed, names, depth), "start-")
    alg = filling_to_algebra(fs)
    rep.merge(check_algebra(alg, iters, seed + 1, names, depth), "monad-")
    rep.merge(check_morphism(alg.g, iters, seed + 2, names, depth), "algebra-morphism-")
    back = algebra_to_filling(alg, check_iters=0)
    rep.merge(check_uniformity(back, iters, seed + 3, names, depth), "rebuilt-")
    rng = random.Random(seed + 4)
    for n in range(iters):
        box = fs.sample_box(rng, names, depth, kind=n % 2)
        rep.check("rebuilt-equals-original", back.fill(box) == fs.fill(box), lambda: f"box={box!r}")
    return rep


__all__ = [
    "AlgebraLawError", "AlgebraStructure", "RoundTrip", "algebra_to_filling", "canonical_algebra",
    "check_algebra", "fibdefs_chain", "filling_to_algebra", "rank_switching_algebra", "roundtrip_check",
]
