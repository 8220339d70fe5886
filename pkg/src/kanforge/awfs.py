"""The comonad ``L f = lam_f`` and the monad ``R f = rho_f`` on arrows, with
randomized checks of their laws and of the functoriality of ``K``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .catalog import box_inclusion, cube_to_terminal
from .kterms import free, kmap, pi, sigma
from .names import Name
from .reports import Report
from .zsub import ZMorphism, identity, to_terminal

NAMES4 = tuple(Name(k) for k in range(4))


@dataclass(eq=False)
class Square:
    """A commuting square ``(h, k): f -> g``, i.e. ``g . h = k . f``."""

    h: ZMorphism
    k: ZMorphism
    f: ZMorphism
    g: ZMorphism
    label: str = "sq"

    def kmap(self) -> ZMorphism:
        return kmap(self.h, self.k, self.f, self.g, check_iters=0)


def check_comonad(f: ZMorphism, iters: int = 500, seed: int = 0,
                  names: Sequence[Name] = NAMES4, depth: int = 2) -> Report:
    ff = free(f)
    K = ff.object
    s = sigma(f)
    fl = free(ff.lam)
    lift_rho = kmap(identity(f.source), ff.rho, ff.lam, f, check_iters=0)
    lift_sigma = kmap(identity(f.source), s, ff.lam, fl.lam, check_iters=0)
    s_lam = sigma(ff.lam)
    rng = random.Random(seed)
    rep = Report(f"comonad:{f.label}", seed, iters)
    for _ in range(iters):
        t = K.gen(rng, names, depth)
        st = s(t)
        rep.check("left-counit", fl.rho(st) == t, lambda: f"t={t!r}")
        rep.check("right-counit", lift_rho(st) == t, lambda: f"t={t!r}")
        rep.check("coassociativity", lift_sigma(st) == s_lam(st), lambda: f"t={t!r}")
        x = f.source.gen(rng, names, depth)
        rep.check("comultiplication-on-unit", s(ff.lam(x)) == fl.lam(x), lambda: f"x={x!r}")
    return rep


def check_monad(f: ZMorphism, iters: int = 500, seed: int = 0,
                names: Sequence[Name] = NAMES4, depth: int = 2) -> Report:
    ff = free(f)
    fr = free(ff.rho)
    Kr = fr.object
    m = pi(f)
    lift_lam = kmap(ff.lam, identity(f.target), f, ff.rho, check_iters=0)
    lift_pi = kmap(m, identity(f.target), fr.rho, ff.rho, check_iters=0)
    m_rho = pi(ff.rho)
    Krr = free(fr.rho).object
    rng = random.Random(seed)
    rep = Report(f"monad:{f.label}", seed, iters)
    for _ in range(iters):
        t = ff.object.gen(rng, names, depth)
        rep.check("left-unit", m(fr.lam(t)) == t, lambda: f"t={t!r}")
        rep.check("right-unit", m(lift_lam(t)) == t, lambda: f"t={t!r}")
        u = Krr.gen(rng, names, depth)
        rep.check("associativity", m(lift_pi(u)) == m(m_rho(u)), lambda: f"u={u!r}")
        s = Kr.gen(rng, names, depth)
        rep.check("multiplication-over-base", ff.rho(m(s)) == fr.rho(s), lambda: f"s={s!r}")
    return rep


def check_factorisation(f: ZMorphism, iters: int = 500, seed: int = 0,
                        names: Sequence[Name] = NAMES4, depth: int = 2) -> Report:
    ff = free(f)
    rng = random.Random(seed)
    rep = Report(f"factorisation:{f.label}", seed, iters)
    for _ in range(iters):
        x = f.source.gen(rng, names, depth)
        rep.check("rho-lam-is-f", ff.rho(ff.lam(x)) == f(x), lambda: f"x={x!r}")
    return rep


def check_naturality(sq: Square, iters: int = 500, seed: int = 0,
                     names: Sequence[Name] = NAMES4, depth: int = 2) -> Report:
    """``lam_g . h = K(h,k) . lam_f`` and ``rho_g . K(h,k) = k . rho_f``."""
    Khk = sq.kmap()
    ff, fg = free(sq.f), free(sq.g)
    rng = random.Random(seed)
    rep = Report(f"naturality:{sq.label}", seed, iters)
    for _ in range(iters):
        x = sq.f.source.gen(rng, names, depth)
        rep.check("square-commutes", sq.g(sq.h(x)) == sq.k(sq.f(x)), lambda: f"x={x!r}")
        rep.check("lam-natural", fg.lam(sq.h(x)) == Khk(ff.lam(x)), lambda: f"x={x!r}")
        t = ff.object.gen(rng, names, depth)
        rep.check("rho-natural", fg.rho(Khk(t)) == sq.k(ff.rho(t)), lambda: f"t={t!r}")
    return rep


def check_functoriality(f: ZMorphism, iters: int = 500, seed: int = 0,
                        names: Sequence[Name] = NAMES4, depth: int = 2) -> Report:
    """``K(1,1) = 1`` and ``K(h2,k2) . K(h1,k1) = K(h2.h1, k2.k1)`` on the
    composable squares ``f -> rho_f -> rho_rho_f`` given by the units."""
    ff = free(f)
    fr = free(ff.rho)
    K = ff.object
    one = kmap(identity(f.source), identity(f.target), f, f, check_iters=0)
    first = kmap(ff.lam, identity(f.target), f, ff.rho, check_iters=0)
    second = kmap(fr.lam, identity(f.target), ff.rho, fr.rho, check_iters=0)
    both = kmap(ff.lam.then(fr.lam), identity(f.target), f, fr.rho, check_iters=0)
    rng = random.Random(seed)
    rep = Report(f"functor:{f.label}", seed, iters)
    for _ in range(iters):
        t = K.gen(rng, names, depth)
        rep.check("preserves-identity", one(t) == t, lambda: f"t={t!r}")
        rep.check("preserves-composition", second(first(t)) == both(t), lambda: f"t={t!r}")
    return rep


def sample_squares() -> list[Square]:
    """Commuting squares between the test morphisms."""
    out = []
    c = cube_to_terminal(2)
    ff = free(c)
    out.append(Square(ff.lam, identity(c.target), c, ff.rho, "unit(cube)"))
    cube = c.source
    a0, a1 = Name(0), Name(1)

    def swap(pt):
        d = dict(pt)
        return tuple(sorted(((a0, d[a1]), (a1, d[a0]))))

    out.append(Square(ZMorphism(cube, cube, swap, "swap"), identity(c.target), c, c, "swap(cube)"))
    j = box_inclusion()
    bang = to_terminal(j.target)
    out.append(Square(j, bang, j, bang, "incl->!"))
    return out


__all__ = [
    "Square", "check_comonad", "check_factorisation", "check_functoriality", "check_monad",
    "check_naturality", "sample_squares",
]
