"""Open boxes over a morphism, fillers and uniform Kan filling operators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from . import mutants
from .names import Name, Perm, fresh_name, parse_name
from .reports import Report
from .zsub import ZMorphism, ZObject, pick_name, random_perm

UP, DOWN = 1, 0  # a box's kind is the bit of its missing face


class BoxError(ValueError):
    pass


class FreshnessViolation(BoxError):
    def __init__(self, b, i, face=None):
        super().__init__(f"{b} occurs in face ({b},{i}) = {face!r}")
        self.index = (b, i)


class AdjacencyViolation(BoxError):
    def __init__(self, b, i, b2, i2):
        super().__init__(f"faces ({b},{i}) and ({b2},{i2}) disagree on their common edge")
        self.indices = ((b, i), (b2, i2))


class NotOverBase(BoxError):
    def __init__(self, b, i):
        super().__init__(f"face ({b},{i}) does not lie over the base restricted to ({b}:={i})")
        self.index = (b, i)


class IllegalSubstitution(BoxError):
    pass


def kind_name(kind: int) -> str:
    return "up" if kind == UP else "down"


def face_indices(kind: int, names: Iterable[Name], a: Name) -> list[tuple[Name, int]]:
    """``(A x 2) minus {(a, kind)}`` in canonical order."""
    return [(b, i) for b in sorted(names) for i in (0, 1) if (b, i) != (a, kind)]


class OpenBox:
    """A ``kind``-open ``(names, open)``-box: faces keyed by ``(name, bit)``
    for every index except ``(open, kind)``, together with a base element.

    Instances are immutable.  Construct validated boxes with
    :func:`make_open_box`; the bare constructor only checks the index set.
    """

    __slots__ = ("kind", "names", "open", "faces", "base", "_map", "_hash")

    def __init__(self, kind: int, names, open: Name, faces, base):
        names = frozenset(names)
        fmap = dict(faces.items() if isinstance(faces, Mapping) else faces)
        if kind not in (UP, DOWN):
            raise BoxError(f"kind must be UP or DOWN, got {kind!r}")
        if open not in names:
            raise BoxError(f"open direction {open} not in {sorted(names)}")
        idx = face_indices(kind, names, open)
        if set(fmap) != set(idx):
            raise BoxError(f"faces must be indexed by exactly {idx}, got {sorted(fmap)}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "open", open)
        object.__setattr__(self, "faces", tuple((k, fmap[k]) for k in idx))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "_map", fmap)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("OpenBox is immutable")

    def face(self, b: Name, i: int):
        return self._map[(b, i)]

    def has_face(self, b: Name, i: int) -> bool:
        return (b, i) in self._map

    @property
    def missing(self) -> tuple[Name, int]:
        return (self.open, self.kind)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, OpenBox):
            return NotImplemented
        return (hash(self) == hash(other) and self.kind == other.kind and self.open == other.open
                and self.faces == other.faces and self.base == other.base)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.kind, self.open, self.faces, self.base))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        fs = ", ".join(f"({b},{i}):{v!r}" for (b, i), v in self.faces)
        return f"{kind_name(self.kind)}[{','.join(map(str, sorted(self.names)))};{self.open}]{{{fs}}}/{self.base!r}"


def box_support(box: OpenBox, X: ZObject, Y: ZObject) -> frozenset:
    out = set(box.names)
    for _, v in box.faces:
        out |= X.support(v)
    out |= Y.support(box.base)
    return frozenset(out)


def box_act(p: Perm, box: OpenBox, X: ZObject, Y: ZObject) -> OpenBox:
    return OpenBox(box.kind, (p(b) for b in box.names), p(box.open),
                   (((p(b), i), X.act(p, v)) for (b, i), v in box.faces), Y.act(p, box.base))


def box_subst(box: OpenBox, c: Name, i: int, X: ZObject, Y: ZObject) -> OpenBox:
    """Substitution ``(c := i)`` for ``c`` outside the box's names."""
    if c in box.names:
        raise IllegalSubstitution(f"({c}:={i}) on a box over names {sorted(box.names)}")
    return OpenBox(box.kind, box.names, box.open,
                   ((k, X.subst(v, c, i)) for k, v in box.faces), Y.subst(box.base, c, i))


def validate_box(box: OpenBox, f: ZMorphism) -> OpenBox:
    """Raise the first violated open-box condition, in canonical index order."""
    X, Y = f.source, f.target
    skip_fresh = mutants.active("box-freshness")
    for (b, i), v in box.faces:
        if not skip_fresh and b in X.support(v):
            raise FreshnessViolation(b, i, v)
    faces = box.faces
    for n, ((b, i), v) in enumerate(faces):
        for (b2, i2), v2 in faces[n + 1:]:
            if b2 != b and X.subst(v, b2, i2) != X.subst(v2, b, i):
                raise AdjacencyViolation(b, i, b2, i2)
    for (b, i), v in faces:
        if f(v) != Y.subst(box.base, b, i):
            raise NotOverBase(b, i)
    return box


def make_open_box(kind: int, A, a: Name, faces, base, f: ZMorphism) -> OpenBox:
    return validate_box(OpenBox(kind, A, a, faces, base), f)


def box_apply(box: OpenBox, action, f: ZMorphism) -> OpenBox:
    """Apply a permutation, or a substitution ``(c, i)`` with ``c`` outside
    the box's names, then revalidate."""
    X, Y = f.source, f.target
    if isinstance(action, Perm):
        out = box_act(action, box, X, Y)
    else:
        c, i = action
        out = box_subst(box, c, i, X, Y)
    return validate_box(out, f)


def is_filler(x, box: OpenBox, f: ZMorphism) -> bool:
    X = f.source
    return f(x) == box.base and all(X.subst(x, b, i) == v for (b, i), v in box.faces)


def box_of_point(f: ZMorphism, x, kind: int, A, a: Name) -> OpenBox:
    """The box cut out of ``x``: faces ``x(b:=i)``, base ``f(x)``."""
    X = f.source
    return OpenBox(kind, A, a, ((k, X.subst(x, *k)) for k in face_indices(kind, A, a)), f(x))


def random_box(f: ZMorphism, rng: random.Random, names: Sequence[Name], depth: int = 2,
               kind: int | None = None, max_dim: int = 3, x=None) -> OpenBox:
    X = f.source
    if x is None:
        x = X.gen(rng, names, depth)
    if kind is None:
        kind = rng.randint(0, 1)
    sx = X.support(x)
    k = rng.randint(1, max(1, min(max_dim, len(names))))
    A = set()
    while len(A) < k:
        A.add(pick_name(rng, sx, names))
    return box_of_point(f, x, kind, A, rng.choice(sorted(A)))


def box_to_json(box: OpenBox, face_json, base_json) -> dict:
    return {
        "kind": kind_name(box.kind),
        "names": [str(b) for b in sorted(box.names)],
        "open": str(box.open),
        "faces": [{"name": str(b), "bit": i, "term": face_json(v)} for (b, i), v in box.faces],
        "base": base_json(box.base),
    }


def box_from_json(j: dict, face_json, base_json) -> OpenBox:
    kind = {"up": UP, "down": DOWN}[j["kind"]]
    faces = {(parse_name(e["name"]), int(e["bit"])): face_json(e["term"]) for e in j["faces"]}
    return OpenBox(kind, map(parse_name, j["names"]), parse_name(j["open"]), faces, base_json(j["base"]))


@dataclass
class FillingOperator:
    up: Callable[[OpenBox], Any]
    down: Callable[[OpenBox], Any]

    def __call__(self, box: OpenBox):
        return self.up(box) if box.kind == UP else self.down(box)


@dataclass
class FibrationStructure:
    morphism: ZMorphism
    fill: FillingOperator
    label: str = "fib"
    box_sampler: Callable | None = None  # (rng, names, depth) -> OpenBox

    @property
    def source(self) -> ZObject:
        return self.morphism.source

    @property
    def target(self) -> ZObject:
        return self.morphism.target

    def sample_box(self, rng, names, depth=2, kind=None) -> OpenBox:
        if self.box_sampler is not None:
            return self.box_sampler(rng, names, depth, kind)
        return random_box(self.morphism, rng, names, depth, kind)


def check_uniformity(fs: FibrationStructure, iters: int = 500, seed: int = 0,
                     names: Sequence[Name] = tuple(Name(k) for k in range(4)),
                     depth: int = 2) -> Report:
    """Fillers are fillers, commute with permutations, and commute with
    substitutions of names outside the box, for both kinds of box."""
    rng = random.Random(seed)
    f = fs.morphism
    X, Y = f.source, f.target
    rep = Report(f"uniformity:{fs.label}", seed, iters)
    skip_perm = mutants.active("uniformity-branch")
    for n in range(iters):
        box = fs.sample_box(rng, names, depth, kind=n % 2)
        x = fs.fill(box)
        rep.check(f"{kind_name(box.kind)}-is-filler", is_filler(x, box, f), lambda: f"box={box!r} fill={x!r}")
        if not skip_perm:
            p = random_perm(rng, names)
            px = fs.fill(box_act(p, box, X, Y))
            rep.check(f"{kind_name(box.kind)}-perm-equivariant", px == X.act(p, x),
                      lambda: f"box={box!r} p={p!r}")
        outside = box_support(box, X, Y) - box.names
        pool = sorted(outside) or [fresh_name(box.names)]
        c = rng.choice(pool + [fresh_name(box.names | outside)])
        i = rng.randint(0, 1)
        sx = fs.fill(box_subst(box, c, i, X, Y))
        rep.check(f"{kind_name(box.kind)}-fresh-subst", sx == X.subst(x, c, i),
                  lambda: f"box={box!r} ({c}:={i})")
    return rep
