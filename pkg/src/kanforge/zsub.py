"""Objects and morphisms of 01-substitution sets, given operationally.

A :class:`ZObject` is a bundle of operations on a carrier whose elements are
immutable, hashable Python values in canonical form, so that element
equality is ``==``.  Objects are never enumerated; ``gen`` produces test
elements on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .names import Abstraction, Name, Perm, abstract, fresh_name, parse_name
from .reports import Report

Bit = int  # 0 or 1


class SeparationError(ValueError):
    pass


class PullbackError(ValueError):
    pass


class MembershipError(ValueError):
    pass


def check_bit(i: int) -> int:
    if i not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {i!r}")
    return i


class ZObject:
    """Operational 01-substitution set.  Subclasses override the operations;
    ``support`` must return the least support of an element."""

    label = "Z"

    def act(self, p: Perm, x):
        raise NotImplementedError

    def subst(self, x, a: Name, i: Bit):
        raise NotImplementedError

    def support(self, x) -> frozenset:
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return x == y

    def contains(self, x) -> bool:
        return True

    def gen(self, rng: random.Random, names: Sequence[Name], depth: int = 2):
        raise NotImplementedError

    def to_json(self, x):
        raise NotImplementedError

    def from_json(self, j):
        raise NotImplementedError

    def fresh_for(self, a: Name, x) -> bool:
        return a not in self.support(x)

    def __repr__(self) -> str:
        return self.label


@dataclass(eq=False)
class ZMorphism:
    source: ZObject
    target: ZObject
    fn: Callable[[Any], Any]
    label: str = "h"

    def __call__(self, x):
        return self.fn(x)

    def then(self, other: "ZMorphism", label: str | None = None) -> "ZMorphism":
        """``other . self``."""
        return ZMorphism(self.source, other.target, lambda x: other.fn(self.fn(x)),
                         label or f"{other.label}.{self.label}")

    def __repr__(self) -> str:
        return f"{self.label}: {self.source!r} -> {self.target!r}"


def identity(X: ZObject) -> ZMorphism:
    return ZMorphism(X, X, lambda x: x, f"1_{X.label}")


# -- sampling helpers -------------------------------------------------------


def random_perm(rng: random.Random, names: Sequence[Name], extra: int = 1) -> Perm:
    top = max((n.id for n in names), default=-1)
    pool = list(names) + [Name(top + 1 + k) for k in range(extra)]
    k = rng.randint(0, len(pool))
    chosen = rng.sample(pool, k)
    shuffled = chosen[:]
    rng.shuffle(shuffled)
    return Perm(tuple(zip(chosen, shuffled)))


def pick_name(rng: random.Random, x_support: frozenset, names: Sequence[Name]) -> Name:
    """Prefer names that occur in the element so substitutions do something."""
    if x_support and rng.random() < 0.6:
        return rng.choice(sorted(x_support))
    return rng.choice(list(names))


# -- basic objects ----------------------------------------------------------


class _Star:
    __slots__ = ()

    def __repr__(self) -> str:
        return "*"

    def __reduce__(self):
        return (_star, ())


def _star():
    return STAR


STAR = _Star()


class Terminal(ZObject):
    label = "1"

    def act(self, p, x):
        return x

    def subst(self, x, a, i):
        return x

    def support(self, x):
        return frozenset()

    def contains(self, x):
        return x is STAR

    def gen(self, rng, names, depth=2):
        return STAR

    def to_json(self, x):
        return "*"

    def from_json(self, j):
        if j != "*":
            raise MembershipError(f"terminal element is '*', got {j!r}")
        return STAR


def terminal_object() -> Terminal:
    return TERMINAL


TERMINAL = Terminal()


def to_terminal(X: ZObject) -> ZMorphism:
    return ZMorphism(X, TERMINAL, lambda x: STAR, f"!_{X.label}")


class Discrete(ZObject):
    """A set with trivial action and substitution (all supports empty)."""

    def __init__(self, elements: Sequence, label: str = "D"):
        self.elements = tuple(elements)
        self.label = label

    def act(self, p, x):
        return x

    def subst(self, x, a, i):
        return x

    def support(self, x):
        return frozenset()

    def contains(self, x):
        return x in self.elements

    def gen(self, rng, names, depth=2):
        return rng.choice(self.elements)

    def to_json(self, x):
        return x

    def from_json(self, j):
        if j not in self.elements:
            raise MembershipError(f"{j!r} not in {self.label}")
        return j


class SeparatedProduct(ZObject):
    """``X * Y``: pairs whose components have disjoint supports."""

    def __init__(self, X: ZObject, Y: ZObject):
        self.X, self.Y = X, Y
        self.label = f"({X.label} * {Y.label})"

    def pair(self, x, y):
        if self.X.support(x) & self.Y.support(y):
            raise SeparationError(f"supports of {x!r} and {y!r} overlap")
        return (x, y)

    def contains(self, p):
        return (isinstance(p, tuple) and len(p) == 2 and self.X.contains(p[0])
                and self.Y.contains(p[1]) and not (self.X.support(p[0]) & self.Y.support(p[1])))

    def act(self, p, xy):
        return (self.X.act(p, xy[0]), self.Y.act(p, xy[1]))

    def subst(self, xy, a, i):
        return (self.X.subst(xy[0], a, i), self.Y.subst(xy[1], a, i))

    def support(self, xy):
        return self.X.support(xy[0]) | self.Y.support(xy[1])

    def gen(self, rng, names, depth=2):
        names = list(names)
        for _ in range(20):
            split = rng.randint(0, len(names))
            rng.shuffle(names)
            x = self.X.gen(rng, names[:split] or names[:1], depth)
            rest = [n for n in names if n not in self.X.support(x)]
            y = self.Y.gen(rng, rest or [fresh_name(self.X.support(x))], depth)
            if not (self.X.support(x) & self.Y.support(y)):
                return (x, y)
        raise RuntimeError(f"could not sample a separated pair in {self.label}")

    def to_json(self, xy):
        return {"pair": [self.X.to_json(xy[0]), self.Y.to_json(xy[1])]}

    def from_json(self, j):
        x, y = j["pair"]
        return self.pair(self.X.from_json(x), self.Y.from_json(y))


def separated_product(X: ZObject, Y: ZObject) -> SeparatedProduct:
    return SeparatedProduct(X, Y)


class Pullback(ZObject):
    """``X x_Y Z`` for ``f: X -> Y`` and ``g: Z -> Y``.

    ``pair_gen(rng, names, depth)`` may be supplied to sample pairs; the
    default tries independent samples, then pairs ``(x, x)`` when ``f is g``.
    """

    def __init__(self, f: ZMorphism, g: ZMorphism, pair_gen=None, label: str | None = None):
        if f.target is not g.target:
            raise PullbackError("pullback legs must share their target")
        self.f, self.g = f, g
        self.X, self.Z, self.Y = f.source, g.source, f.target
        self.pair_gen = pair_gen
        self.label = label or f"({self.X.label} x_{self.Y.label} {self.Z.label})"
        self.p1 = ZMorphism(self, self.X, lambda xz: xz[0], "pr1")
        self.p2 = ZMorphism(self, self.Z, lambda xz: xz[1], "pr2")
        self.to_base = ZMorphism(self, self.Y, lambda xz: self.f(xz[0]), f"{f.label}.pr1")

    def pair(self, x, z):
        if self.f(x) != self.g(z):
            raise PullbackError(f"{self.f.label}({x!r}) != {self.g.label}({z!r})")
        return (x, z)

    def contains(self, xz):
        return (isinstance(xz, tuple) and len(xz) == 2 and self.X.contains(xz[0])
                and self.Z.contains(xz[1]) and self.f(xz[0]) == self.g(xz[1]))

    def act(self, p, xz):
        return (self.X.act(p, xz[0]), self.Z.act(p, xz[1]))

    def subst(self, xz, a, i):
        return (self.X.subst(xz[0], a, i), self.Z.subst(xz[1], a, i))

    def support(self, xz):
        return self.X.support(xz[0]) | self.Z.support(xz[1])

    def gen(self, rng, names, depth=2):
        if self.pair_gen is not None:
            return self.pair_gen(rng, names, depth)
        for _ in range(30):
            x, z = self.X.gen(rng, names, depth), self.Z.gen(rng, names, depth)
            if self.f(x) == self.g(z):
                return (x, z)
        if self.f is self.g:
            x = self.X.gen(rng, names, depth)
            return (x, x)
        raise RuntimeError(f"could not sample an element of {self.label}")

    def universal(self, p: ZMorphism, q: ZMorphism) -> ZMorphism:
        """The pairing ``<p, q>: W -> X x_Y Z`` of a cone."""
        return ZMorphism(p.source, self, lambda w: self.pair(p(w), q(w)), f"<{p.label},{q.label}>")

    def to_json(self, xz):
        return {"pair": [self.X.to_json(xz[0]), self.Z.to_json(xz[1])]}

    def from_json(self, j):
        x, z = j["pair"]
        return self.pair(self.X.from_json(x), self.Z.from_json(z))


def pullback_object(f: ZMorphism, g: ZMorphism, pair_gen=None) -> Pullback:
    return Pullback(f, g, pair_gen)


class AbstractionObject(ZObject):
    """``[A]X`` with canonical (smallest fresh) bound names."""

    def __init__(self, X: ZObject):
        self.X = X
        self.label = f"[A]{X.label}"

    def abstract(self, a: Name, x) -> Abstraction:
        return abstract(a, x, self.X.act, self.X.support)

    def contains(self, t):
        return isinstance(t, Abstraction) and self.X.contains(t.body)

    def act(self, p, t):
        return self.abstract(p(t.bound), self.X.act(p, t.body))

    def subst(self, t, a, i):
        if a == t.bound:  # bound names are never free
            return t
        return self.abstract(t.bound, self.X.subst(t.body, a, i))

    def support(self, t):
        return self.X.support(t.body) - {t.bound}

    def concretion(self, t, b: Name):
        """``t @ b`` for ``b`` fresh for ``t``."""
        if b in self.support(t):
            raise ValueError(f"{b} is not fresh for {t!r}")
        return self.X.act(Perm.swap(b, t.bound), t.body)

    def gen(self, rng, names, depth=2):
        x = self.X.gen(rng, names, depth)
        pool = sorted(self.X.support(x)) + [rng.choice(list(names))]
        return self.abstract(rng.choice(pool), x)

    def to_json(self, t):
        return {"bound": str(t.bound), "body": self.X.to_json(t.body)}

    def from_json(self, j):
        return self.abstract(parse_name(j["bound"]), self.X.from_json(j["body"]))


def abstraction_object(X: ZObject) -> AbstractionObject:
    return AbstractionObject(X)


class FibredAbstraction(AbstractionObject):
    """``[A]_f X``: abstractions ``<a>x`` with ``a`` fresh for ``f(x)``."""

    def __init__(self, f: ZMorphism):
        super().__init__(f.source)
        self.f = f
        self.label = f"[A]_{f.label}{f.source.label}"
        self.endpoints = ZMorphism(
            self, Pullback(f, f),
            lambda t: (self.X.subst(t.body, t.bound, 0), self.X.subst(t.body, t.bound, 1)),
            "ends",
        )

    def member(self, a: Name, x) -> Abstraction:
        if a in self.f.target.support(self.f(x)):
            raise MembershipError(f"{a} occurs in {self.f.label}({x!r})")
        return self.abstract(a, x)

    def contains(self, t):
        return super().contains(t) and t.bound not in self.f.target.support(self.f(t.body))

    def gen(self, rng, names, depth=2):
        x = self.X.gen(rng, names, depth)
        base = self.f.target.support(self.f(x))
        pool = sorted(self.X.support(x) - base) + [fresh_name(base | self.X.support(x))]
        return self.abstract(rng.choice(pool), x)

    def from_json(self, j):
        return self.member(parse_name(j["bound"]), self.X.from_json(j["body"]))


def fibred_abstraction(f: ZMorphism) -> FibredAbstraction:
    return FibredAbstraction(f)


# -- law checks ---------------------------------------------------------------


def check_zsub_axioms(
    X: ZObject,
    iters: int = 1000,
    seed: int = 0,
    names: Sequence[Name] = tuple(Name(k) for k in range(4)),
    depth: int = 2,
    sample=None,
) -> Report:
    """Randomized check of the four 01-substitution axioms, plus closure of
    the carrier under both operations.  ``sample(rng)`` overrides ``X.gen``."""
    rng = random.Random(seed)
    rep = Report(f"zsub:{X.label}", seed, iters)
    draw = sample or (lambda r: X.gen(r, names, depth))
    for _ in range(iters):
        x = draw(rng)
        sx = X.support(x)
        a = pick_name(rng, sx, names)
        b = pick_name(rng, sx - {a}, [n for n in names if n != a] or [fresh_name({a})])
        i, j = rng.randint(0, 1), rng.randint(0, 1)
        p = random_perm(rng, names)
        xa = X.subst(x, a, i)
        rep.check("closure", X.contains(xa) and X.contains(X.act(p, x)),
                  lambda: f"x={x!r} a={a} i={i} p={p!r}")
        rep.check("fresh-after-subst", a not in X.support(xa),
                  lambda: f"x={x!r} ({a}:={i}) = {xa!r}")
        if a not in sx:
            rep.check("subst-of-fresh-is-identity", xa == x, lambda: f"x={x!r} ({a}:={i}) = {xa!r}")
        if b != a:
            lhs = X.subst(xa, b, j)
            rhs = X.subst(X.subst(x, b, j), a, i)
            rep.check("subst-commute", lhs == rhs,
                      lambda: f"x={x!r} ({a}:={i})({b}:={j}) = {lhs!r} vs {rhs!r}")
        lhs = X.act(p, xa)
        rhs = X.subst(X.act(p, x), p(a), i)
        rep.check("equivariance", lhs == rhs, lambda: f"x={x!r} p={p!r} ({a}:={i})")
        rep.check("support-equivariant", X.support(X.act(p, x)) == frozenset(p(n) for n in sx),
                  lambda: f"x={x!r} p={p!r}")
    return rep


def check_morphism(
    h: ZMorphism,
    iters: int = 1000,
    seed: int = 0,
    names: Sequence[Name] = tuple(Name(k) for k in range(4)),
    depth: int = 2,
    sample=None,
) -> Report:
    """Randomized check that ``h`` commutes with permutations and substitutions."""
    rng = random.Random(seed)
    X, Y = h.source, h.target
    rep = Report(f"morphism:{h.label}", seed, iters)
    draw = sample or (lambda r: X.gen(r, names, depth))
    for _ in range(iters):
        x = draw(rng)
        p = random_perm(rng, names)
        a = pick_name(rng, X.support(x), names)
        i = rng.randint(0, 1)
        hx = h(x)
        rep.check("lands-in-target", Y.contains(hx), lambda: f"x={x!r} h(x)={hx!r}")
        rep.check("equivariant", h(X.act(p, x)) == Y.act(p, hx), lambda: f"x={x!r} p={p!r}")
        rep.check("preserves-subst", h(X.subst(x, a, i)) == Y.subst(hx, a, i),
                  lambda: f"x={x!r} ({a}:={i})")
    return rep
