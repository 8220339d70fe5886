"""The free fibration ``K f``: formal fillers and compositions of open boxes
over ``f``, with the factorisation ``X -> K f -> Y``, the functorial action
``K(h, k)``, the comultiplication ``sigma`` and the multiplication ``pi``.

Terms are one inductive type; construction stages only appear through
:func:`rank`.  ``Fill`` is the formal filler of a box (``upbox``/``downbox``
according to the box kind) and ``Comp`` the formal composition, i.e. the
missing face of the filler, stored with the box's open name as its bound
name.  All terms are built through a :class:`KObject` so supports and ranks
are computed once, and every ``Comp`` is kept in canonical form (bound name
is the smallest name fresh for its free names).
"""

from __future__ import annotations

import random
from typing import Any, Sequence

from . import mutants
from .boxes import (DOWN, UP, BoxError, OpenBox, box_act, box_subst, box_support, kind_name,
                    random_box, validate_box)
from .names import Name, Perm, fresh_name, parse_name
from .zsub import ZMorphism, ZObject


class SchemaError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class CommutationViolation(ValueError):
    pass


class KTerm:
    __slots__ = ("support", "rank", "_hash")

    tag = "?"

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def _init(self, support, rank, h):
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_hash", h)

    def __hash__(self):
        return self._hash


class Base(KTerm):
    __slots__ = ("value",)
    tag = "base"

    def __init__(self, value, support: frozenset):
        object.__setattr__(self, "value", value)
        self._init(support, 0, hash(("base", value)))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Base) and self._hash == other._hash and self.value == other.value)

    __hash__ = KTerm.__hash__

    def __repr__(self):
        return f"B({self.value!r})"


class Fill(KTerm):
    __slots__ = ("box",)

    def __init__(self, box: OpenBox, support: frozenset, rank: int):
        object.__setattr__(self, "box", box)
        self._init(support, rank, hash(("fill", box)))

    @property
    def tag(self):
        return "upbox" if self.box.kind == UP else "downbox"

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Fill) and self._hash == other._hash and self.box == other.box

    __hash__ = KTerm.__hash__

    def __repr__(self):
        return f"Fill{self.box!r}"


class Comp(KTerm):
    __slots__ = ("box",)

    def __init__(self, box: OpenBox, support: frozenset, rank: int):
        object.__setattr__(self, "box", box)
        self._init(support, rank, hash(("comp", box)))

    @property
    def tag(self):
        return "plus" if self.box.kind == UP else "minus"

    @property
    def bound(self) -> Name:
        return self.box.open

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Comp) and self._hash == other._hash and self.box == other.box

    __hash__ = KTerm.__hash__

    def __repr__(self):
        return f"{'Plus' if self.box.kind == UP else 'Minus'}<{self.box.open}>{self.box!r}"


def rank(t: KTerm) -> int:
    return t.rank


def _box_rank(box: OpenBox) -> int:
    return 1 + max(v.rank for _, v in box.faces)


class KObject(ZObject):
    """``K f`` as a 01-substitution set, with ``lam: X -> K f`` and
    ``rho: K f -> Y``."""

    def __init__(self, f: ZMorphism):
        self.f = f
        self.X, self.Y = f.source, f.target
        self.label = f"K({f.label})"
        self.lam = ZMorphism(self.X, self, self.base, f"lam_{f.label}")
        self.rho = ZMorphism(self, self.Y, self._rho, f"rho_{f.label}")

    # -- constructors -----------------------------------------------------

    def base(self, x) -> Base:
        return Base(x, frozenset(self.X.support(x)))

    def fill(self, box: OpenBox) -> Fill:
        """Formal filler of an already valid box (no validation)."""
        return Fill(box, box_support(box, self, self.Y), _box_rank(box))

    def comp(self, box: OpenBox) -> Comp:
        """Formal composition ``<a>(u, y)``, canonicalized."""
        a = box.open
        free = box_support(box, self, self.Y) - {a}
        c = fresh_name(free)
        if c != a:
            box = box_act(Perm.swap(a, c), box, self, self.Y)
        return Comp(box, free, _box_rank(box))

    def make_fill(self, kind, A, a, faces, base) -> Fill:
        return self.fill(validate_box(OpenBox(kind, A, a, faces, base), self.rho))

    def make_comp(self, kind, A, a, faces, base) -> Comp:
        return self.comp(validate_box(OpenBox(kind, A, a, faces, base), self.rho))

    # -- structure --------------------------------------------------------

    def _rho(self, t: KTerm):
        if isinstance(t, Base):
            return self.f(t.value)
        if isinstance(t, Fill):
            return t.box.base
        return self.Y.subst(t.box.base, t.box.open, t.box.kind)

    def support(self, t: KTerm) -> frozenset:
        return t.support

    def act(self, p: Perm, t: KTerm) -> KTerm:
        if all(p(n) == n for n in t.support):
            return t
        if isinstance(t, Base):
            return self.base(self.X.act(p, t.value))
        box = box_act(p, t.box, self, self.Y)
        return self.fill(box) if isinstance(t, Fill) else self.comp(box)

    def subst(self, t: KTerm, c: Name, i: int) -> KTerm:
        if isinstance(t, Base):
            if c not in t.support:
                return t
            return self.base(self.X.subst(t.value, c, i))
        box = t.box
        if isinstance(t, Fill):
            if c not in t.support:
                return t
            if box.has_face(c, i):
                return box.face(c, i)
            if c == box.open:  # the missing face
                return self.comp(box)
            return self.fill(box_subst(box, c, i, self, self.Y))
        a = box.open
        if c == a:
            if mutants.active("plus-guard"):
                if box.has_face(c, i):
                    return self.subst(box.face(c, i), a, box.kind)
                return t
            b = fresh_name(t.support | {a, c})
            box = box_act(Perm.swap(a, b), box, self, self.Y)
            a = b
        if c in box.names:
            return self.subst(box.face(c, i), a, box.kind)
        return self.comp(box_subst(box, c, i, self, self.Y))

    def contains(self, t) -> bool:
        if isinstance(t, Base):
            return self.X.contains(t.value) and t.support == self.X.support(t.value)
        if not isinstance(t, (Fill, Comp)):
            return False
        box = t.box
        if not all(self.contains(v) for _, v in box.faces) or not self.Y.contains(box.base):
            return False
        try:
            validate_box(box, self.rho)
        except BoxError:
            return False
        return t == (self.fill(box) if isinstance(t, Fill) else self.comp(box))

    def gen(self, rng: random.Random, names: Sequence[Name], depth: int = 2) -> KTerm:
        """Random term of rank at most ``depth``: a box cut out of a random
        lower term, then its filler or its composition."""
        if depth <= 0 or rng.random() < 0.2:
            return self.base(self.X.gen(rng, names, max(depth - 1, 0)))
        t = self.gen(rng, names, depth - 1)
        box = random_box(self.rho, rng, names, depth, x=t)
        r = rng.random()
        if r < 0.35:
            return self.comp(box)
        out = self.fill(box)
        if r < 0.5:
            c = rng.choice(list(names))
            out = self.subst(out, c, rng.randint(0, 1))
        return out

    def to_json(self, t: KTerm):
        return term_to_json(self, t)

    def from_json(self, j):
        return term_from_json(self, j)


# -- free fibrations ------------------------------------------------------------


class FreeFibration:
    """``f = rho_f . lam_f`` with ``K f`` in the middle."""

    def __init__(self, f: ZMorphism):
        self.f = f
        self.object = KObject(f)
        self.lam = self.object.lam
        self.rho = self.object.rho
        self._sigma = None
        self._pi = None

    def __repr__(self):
        return f"FreeFibration({self.f.label})"


def free(f: ZMorphism) -> FreeFibration:
    """The free fibration on ``f``; cached on the morphism so that iterated
    constructions (``K lam_f``, ``K rho_f``, ...) share objects."""
    ff = getattr(f, "_kanforge_free", None)
    if ff is None:
        ff = FreeFibration(f)
        f._kanforge_free = ff
    return ff


make_free_fibration = free


def kterm_subst(K: KObject, t: KTerm, a: Name, i: int) -> KTerm:
    return K.subst(t, a, i)


def kterm_act(K: KObject, p: Perm, t: KTerm) -> KTerm:
    return K.act(p, t)


def _structural(src: KObject, dst: KObject, on_base, on_top, label: str) -> ZMorphism:
    """Morphism ``src -> dst`` defined by structural recursion: ``on_base``
    for base terms, faces mapped recursively and the box's base sent through
    ``on_top(t)`` (which sees the whole source term)."""
    memo: dict = {}

    def go(t: KTerm) -> KTerm:
        out = memo.get(t)
        if out is not None:
            return out
        if isinstance(t, Base):
            out = on_base(t.value)
        else:
            box = t.box
            nb = OpenBox(box.kind, box.names, box.open, ((k, go(v)) for k, v in box.faces),
                         on_top(t))
            out = dst.fill(nb) if isinstance(t, Fill) else dst.comp(nb)
        memo[t] = out
        return out

    return ZMorphism(src, dst, go, label)


def check_square(h: ZMorphism, k: ZMorphism, f: ZMorphism, g: ZMorphism, iters: int = 20,
                 seed: int = 0, names: Sequence[Name] = tuple(Name(n) for n in range(3)),
                 depth: int = 1) -> None:
    """Spot-check ``g . h == k . f``; raise CommutationViolation otherwise."""
    rng = random.Random(seed)
    for _ in range(iters):
        x = f.source.gen(rng, names, depth)
        if g(h(x)) != k(f(x)):
            raise CommutationViolation(f"{g.label}.{h.label} != {k.label}.{f.label} at {x!r}")


def kmap(h: ZMorphism, k: ZMorphism, f: ZMorphism, g: ZMorphism, check_iters: int = 20,
         seed: int = 0) -> ZMorphism:
    """``K(h, k): K f -> K g`` for a commuting square ``g . h = k . f``."""
    if check_iters:
        check_square(h, k, f, g, check_iters, seed)
    Kf, Kg = free(f).object, free(g).object
    return _structural(Kf, Kg, lambda x: Kg.base(h(x)), lambda t: k(t.box.base),
                       f"K({h.label},{k.label})")


def sigma(f: ZMorphism) -> ZMorphism:
    """Comultiplication ``K f -> K lam_f``."""
    ff = free(f)
    if ff._sigma is None:
        Kf = ff.object
        Kl = free(ff.lam).object

        def top(t):
            return Kf.fill(t.box)

        ff._sigma = _structural(Kf, Kl, Kl.base, top, f"sigma_{f.label}")
    return ff._sigma


def pi(f: ZMorphism) -> ZMorphism:
    """Multiplication ``K rho_f -> K f``."""
    ff = free(f)
    if ff._pi is None:
        Kf = ff.object
        Kr = free(ff.rho).object
        ff._pi = _structural(Kr, Kf, lambda z: z, lambda t: t.box.base, f"pi_{f.label}")
    return ff._pi


# -- JSON -------------------------------------------------------------------------


def term_to_json(K: KObject, t: KTerm) -> dict:
    if isinstance(t, Base):
        return {"tag": "base", "value": K.X.to_json(t.value)}
    box = t.box
    jb = {
        "names": [str(b) for b in sorted(box.names)],
        "open": str(box.open),
        "faces": [{"name": str(b), "bit": i, "term": term_to_json(K, v)} for (b, i), v in box.faces],
        "base": K.Y.to_json(box.base),
    }
    if isinstance(t, Fill):
        return {"tag": t.tag, "box": jb}
    return {"tag": t.tag, "bound": str(box.open), "box": jb}


_TAGS = {"base": None, "upbox": (Fill, UP), "downbox": (Fill, DOWN), "plus": (Comp, UP),
         "minus": (Comp, DOWN)}


def _name_at(v, loc: str) -> Name:
    if not isinstance(v, str):
        raise SchemaError(loc, f"expected a name string, got {v!r}")
    try:
        return parse_name(v)
    except ValueError as e:
        raise SchemaError(loc, str(e)) from None


def _field(j: dict, key: str, loc: str):
    if not isinstance(j, dict):
        raise SchemaError(loc, f"expected an object, got {type(j).__name__}")
    if key not in j:
        raise SchemaError(loc, f"missing field {key!r}")
    return j[key]


def term_from_json(K: KObject, j, loc: str = "$") -> KTerm:
    tag = _field(j, "tag", loc)
    if tag not in _TAGS:
        raise SchemaError(f"{loc}.tag", f"unknown tag {tag!r}")
    if tag == "base":
        try:
            x = K.X.from_json(_field(j, "value", loc))
        except SchemaError:
            raise
        except (ValueError, KeyError, TypeError) as e:
            raise SchemaError(f"{loc}.value", str(e)) from None
        if not K.X.contains(x):
            raise SchemaError(f"{loc}.value", f"{x!r} is not an element of {K.X.label}")
        return K.base(x)
    cls, kind = _TAGS[tag]
    jb = _field(j, "box", loc)
    bl = f"{loc}.box"
    names = _field(jb, "names", bl)
    if not isinstance(names, list):
        raise SchemaError(f"{bl}.names", "expected a list")
    A = [_name_at(v, f"{bl}.names[{n}]") for n, v in enumerate(names)]
    a = _name_at(_field(jb, "open", bl), f"{bl}.open")
    if cls is Comp:
        bound = _name_at(_field(j, "bound", loc), f"{loc}.bound")
        if bound != a:
            raise SchemaError(f"{loc}.bound", f"bound name {bound} differs from the box's open name {a}")
    faces = {}
    jf = _field(jb, "faces", bl)
    if not isinstance(jf, list):
        raise SchemaError(f"{bl}.faces", "expected a list")
    for n, e in enumerate(jf):
        el = f"{bl}.faces[{n}]"
        b = _name_at(_field(e, "name", el), f"{el}.name")
        i = _field(e, "bit", el)
        if i not in (0, 1) or isinstance(i, bool):
            raise SchemaError(f"{el}.bit", f"expected 0 or 1, got {i!r}")
        if (b, i) in faces:
            raise SchemaError(el, f"duplicate face ({b},{i})")
        faces[(b, i)] = term_from_json(K, _field(e, "term", el), f"{el}.term")
    try:
        y = K.Y.from_json(_field(jb, "base", bl))
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError) as e:
        raise SchemaError(f"{bl}.base", str(e)) from None
    try:
        box = validate_box(OpenBox(kind, A, a, faces, y), K.rho)
    except BoxError as e:
        raise SchemaError(bl, f"{type(e).__name__}: {e}") from None
    return K.fill(box) if cls is Fill else K.comp(box)


def describe(t: KTerm) -> dict[str, Any]:
    return {"tag": t.tag, "rank": t.rank, "support": [str(n) for n in sorted(t.support)]}


__all__ = [
    "Base", "Comp", "CommutationViolation", "Fill", "FreeFibration", "KObject", "KTerm",
    "SchemaError", "check_square", "describe", "free", "kind_name", "kmap", "kterm_act",
    "kterm_subst", "make_free_fibration", "pi", "rank", "sigma", "term_from_json", "term_to_json",
]
