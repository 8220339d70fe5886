"""Standard cubes, open-box subobjects, the generating maps ``J`` and their
``L``-coalgebra structure, Yoneda evaluation, and the passage between
lifting data against ``J`` and Kan filling operators.

A cube point on ``A`` is a tuple of ``(label, value)`` pairs sorted by label,
each value a :class:`Name` or a bit, injective on the name values.  Labels
are positions and are not touched by the action; only values are.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .boxes import (DOWN, UP, FibrationStructure, FillingOperator, OpenBox, box_support,
                    face_indices, is_filler)
from .kterms import free, kmap, sigma
from .names import Name, Perm, fresh_name, fresh_names, parse_name
from .reports import Report
from .zsub import MembershipError, SeparatedProduct, ZMorphism, ZObject, identity, random_perm

CubePoint = tuple  # ((label, value), ...)


class SupportEscape(ValueError):
    pass


def make_point(assignment: Mapping[Name, object]) -> CubePoint:
    vals = [v for v in assignment.values() if isinstance(v, Name)]
    if len(vals) != len(set(vals)):
        raise MembershipError(f"assignment {dict(assignment)} is not injective on names")
    for v in assignment.values():
        if not isinstance(v, Name) and v not in (0, 1):
            raise MembershipError(f"cube values are names or bits, got {v!r}")
    return tuple(sorted(assignment.items(), key=lambda kv: kv[0]))


def generic_point(A: Iterable[Name]) -> CubePoint:
    """``1_A``."""
    return tuple((a, a) for a in sorted(A))


def point_subst_value(pt: CubePoint, c: Name, i: int) -> CubePoint:
    return tuple((l, i if v == c else v) for l, v in pt)


class CubeObject(ZObject):
    """The standard ``A``-cube."""

    def __init__(self, A: Iterable[Name]):
        self.A = tuple(sorted(A))
        self.label = "[]{" + ",".join(map(str, self.A)) + "}"

    def act(self, p, pt):
        return tuple((l, p(v) if isinstance(v, Name) else v) for l, v in pt)

    def subst(self, pt, c, i):
        return point_subst_value(pt, c, i)

    def support(self, pt):
        return frozenset(v for _, v in pt if isinstance(v, Name))

    def contains(self, pt):
        if not isinstance(pt, tuple) or tuple(l for l, _ in pt) != self.A:
            return False
        try:
            make_point(dict(pt))
        except MembershipError:
            return False
        return True

    def gen(self, rng, names, depth=2):
        free_names = list(names)
        rng.shuffle(free_names)
        out = {}
        for l in self.A:
            if free_names and rng.random() < 0.7:
                out[l] = free_names.pop()
            else:
                out[l] = rng.randint(0, 1)
        return make_point(out)

    def points(self, alphabet: Sequence[Name]) -> list:
        """Every point with name values drawn from ``alphabet``."""
        values = list(alphabet) + [0, 1]
        out = []
        for combo in itertools.product(values, repeat=len(self.A)):
            ns = [v for v in combo if isinstance(v, Name)]
            if len(ns) == len(set(ns)):
                out.append(tuple(zip(self.A, combo)))
        return out

    def to_json(self, pt):
        return {str(l): (str(v) if isinstance(v, Name) else v) for l, v in pt}

    def from_json(self, j):
        if not isinstance(j, dict):
            raise MembershipError(f"cube point must be an object, got {j!r}")
        pt = make_point({parse_name(k): (parse_name(v) if isinstance(v, str) else v) for k, v in j.items()})
        if not self.contains(pt):
            raise MembershipError(f"{j!r} is not a point of {self.label}")
        return pt


_CUBES: dict = {}


def cube_object(A: Iterable[Name]) -> CubeObject:
    key = tuple(sorted(A))
    if key not in _CUBES:
        _CUBES[key] = CubeObject(key)
    return _CUBES[key]


def in_open_box(kind: int, a: Name, pt: CubePoint) -> bool:
    return any(v == i and (l, i) != (a, kind) for l, v in pt for i in (0, 1) if not isinstance(v, Name))


class OpenBoxObject(CubeObject):
    """The ``kind``-open ``(A, a)``-box as a subobject of the ``A``-cube."""

    def __init__(self, kind: int, A: Iterable[Name], a: Name):
        super().__init__(A)
        if a not in self.A:
            raise ValueError(f"{a} not in {self.A}")
        self.kind, self.a = kind, a
        sym = "U" if kind == UP else "n"
        self.label = f"{sym}{{{','.join(map(str, self.A))};{a}}}"

    def member(self, pt):
        if not (super().contains(pt) and in_open_box(self.kind, self.a, pt)):
            raise MembershipError(f"{pt!r} is not in {self.label}")
        return pt

    def contains(self, pt):
        return super().contains(pt) and in_open_box(self.kind, self.a, pt)

    def gen(self, rng, names, depth=2):
        pt = super().gen(rng, names, depth)
        if in_open_box(self.kind, self.a, pt):
            return pt
        l, i = rng.choice(face_indices(self.kind, self.A, self.a))
        return tuple((m, i if m == l else v) for m, v in pt)

    def points(self, alphabet):
        return [p for p in super().points(alphabet) if in_open_box(self.kind, self.a, p)]

    def from_json(self, j):
        return self.member(super().from_json(j))


_BOXES: dict = {}


def open_box_subobject(kind: int, A: Iterable[Name], a: Name) -> OpenBoxObject:
    key = (kind, tuple(sorted(A)), a)
    if key not in _BOXES:
        _BOXES[key] = OpenBoxObject(kind, A, a)
    return _BOXES[key]


# -- the category J -----------------------------------------------------------------


@dataclass(frozen=True)
class JObject:
    kind: int
    A: frozenset
    a: Name
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))
        if self.a not in self.A:
            raise ValueError(f"{self.a} not in A")
        if self.A & self.B:
            raise ValueError("A and B must be disjoint label sets")

    def __repr__(self):
        return (f"J({'up' if self.kind == UP else 'down'},{{{','.join(map(str, sorted(self.A)))}}};"
                f"{self.a},{{{','.join(map(str, sorted(self.B)))}}})")


_JMAPS: dict = {}


def j_map(obj: JObject) -> ZMorphism:
    """``(open box) * []_B  ->  []_A * []_B``, the product of the inclusion with
    the identity."""
    if obj not in _JMAPS:
        dom = SeparatedProduct(open_box_subobject(obj.kind, obj.A, obj.a), cube_object(obj.B))
        cod = SeparatedProduct(cube_object(obj.A), cube_object(obj.B))
        _JMAPS[obj] = ZMorphism(dom, cod, lambda pq: pq, f"j{obj!r}")
    return _JMAPS[obj]


def jobject_points(obj: JObject, alphabet: Sequence[Name]) -> list:
    """All points of ``[]_A * []_B`` over ``alphabet``."""
    out = []
    for p in cube_object(obj.A).points(alphabet):
        used = {v for _, v in p if isinstance(v, Name)}
        for q in cube_object(obj.B).points([n for n in alphabet if n not in used]):
            out.append((p, q))
    return out


@dataclass(frozen=True)
class JMorphism:
    """A morphism ``source -> target`` in J.  ``f`` maps the target's ``A``
    bijectively onto the source's (sending open name to open name) and ``g``
    maps the target's ``B`` into the source's ``B`` or a bit, injective where
    defined.  ``J`` acts by precomposition, covariantly."""

    source: JObject
    target: JObject
    f: tuple  # ((a', a), ...)
    g: tuple  # ((b', b or bit), ...)

    def __post_init__(self):
        fm, gm = dict(self.f), dict(self.g)
        s, t = self.source, self.target
        if s.kind != t.kind:
            raise ValueError("J-morphisms preserve the kind")
        if set(fm) != t.A or set(fm.values()) != s.A or fm[t.a] != s.a:
            raise ValueError("f must be a bijection on A preserving the open name")
        if set(gm) != t.B:
            raise ValueError("g must be total on B")
        ns = [v for v in gm.values() if isinstance(v, Name)]
        if len(ns) != len(set(ns)) or not set(ns) <= s.B:
            raise ValueError("g must be injective where defined into B")

    def on_point(self, pq):
        p, q = dict(pq[0]), dict(pq[1])
        fm, gm = dict(self.f), dict(self.g)
        p2 = make_point({l: p[fm[l]] for l in self.target.A})
        q2 = make_point({l: (q[gm[l]] if isinstance(gm[l], Name) else gm[l]) for l in self.target.B})
        return (p2, q2)

    def then(self, other: "JMorphism") -> "JMorphism":
        """``other . self``."""
        fm, gm = dict(self.f), dict(self.g)
        f2 = tuple((l, fm[m]) for l, m in other.f)
        g2 = tuple((l, gm[m] if isinstance(m, Name) else m) for l, m in other.g)
        return JMorphism(self.source, other.target, f2, g2)

    def as_morphism(self) -> ZMorphism:
        src, tgt = j_map(self.source).target, j_map(self.target).target
        return ZMorphism(src, tgt, self.on_point, "J(f,g)")


def identity_jmorphism(obj: JObject) -> JMorphism:
    return JMorphism(obj, obj, tuple((a, a) for a in sorted(obj.A)), tuple((b, b) for b in sorted(obj.B)))


def random_jmorphism(rng: random.Random, src: JObject, max_b: int = 2) -> JMorphism:
    """A random morphism out of ``src`` to a relabelled target."""
    labels = fresh_names(len(src.A) + max_b, src.A | src.B)
    A2 = labels[:len(src.A)]
    shuffled = sorted(src.A)
    rng.shuffle(shuffled)
    fm = dict(zip(A2, shuffled))
    a2 = next(l for l, m in fm.items() if m == src.a)
    nb = rng.randint(0, max_b)
    B2 = labels[len(src.A):len(src.A) + nb]
    pool = sorted(src.B)
    rng.shuffle(pool)
    gm = {}
    for l in B2:
        if pool and rng.random() < 0.6:
            gm[l] = pool.pop()
        else:
            gm[l] = rng.randint(0, 1)
    tgt = JObject(src.kind, frozenset(A2), a2, frozenset(B2))
    return JMorphism(src, tgt, tuple(sorted(fm.items())), tuple(sorted(gm.items())))


# -- Yoneda evaluation ----------------------------------------------------------------


def yoneda_evaluate(X: ZObject, x, point) -> object:
    """Image of ``x`` under the unique morphism ``[]_A * []_B -> X`` sending the
    generic point to ``x``.  Name-valued labels are first renamed to fresh
    names, bit-valued labels substituted, and the fresh names then swapped to
    their targets."""
    p, q = point
    assign = dict(p)
    assign.update(dict(q))
    sx = X.support(x)
    if not sx <= set(assign):
        raise SupportEscape(f"support {sorted(sx)} of {x!r} is not inside {sorted(assign)}")
    relevant = sorted(sx)
    values = {v for v in assign.values() if isinstance(v, Name)}
    temps = fresh_names(len(relevant), set(assign) | values | sx)
    swap1 = []
    for l, t in zip(relevant, temps):
        swap1 += [(l, t), (t, l)]
    x = X.act(Perm(tuple(swap1)), x)
    swap2 = []
    for l, t in zip(relevant, temps):
        v = assign[l]
        if isinstance(v, Name):
            swap2 += [(t, v), (v, t)]
        else:
            x = X.subst(x, t, v)
    return X.act(Perm(tuple(swap2)), x)


# -- the coalgebra eta ------------------------------------------------------------------


def eta_coalgebra(obj: JObject) -> ZMorphism:
    """``[]_A * []_B -> K j`` for ``j = j_map(obj)``."""
    j = j_map(obj)
    K = free(j).object
    kind, a = obj.kind, obj.a

    def interior(pq):
        p, q = pq
        pm = dict(p)
        names = [pm[l] for l in sorted(obj.A)]
        opened = pm[a]
        faces = {}
        for n in names:
            for i in (0, 1):
                if (n, i) != (opened, kind):
                    faces[(n, i)] = K.base((point_subst_value(p, n, i), q))
        return K.fill(OpenBox(kind, names, opened, faces, pq))

    def h(pq):
        p, q = pq
        if in_open_box(kind, a, p):
            return K.base(pq)
        pm = dict(p)
        if isinstance(pm[a], Name):
            return interior(pq)
        # pm[a] == kind and every other label is name-valued
        b = fresh_name(j.target.support(pq))
        pm[a] = b
        return K.subst(interior((make_point(pm), q)), b, kind)

    return ZMorphism(j.target, K, h, f"eta{obj!r}")


def small_jobjects(max_a: int = 2, max_b: int = 1) -> list[JObject]:
    out = []
    for kind in (UP, DOWN):
        for na in range(1, max_a + 1):
            A = [Name(k) for k in range(na)]
            for nb in range(0, max_b + 1):
                B = [Name(na + k) for k in range(nb)]
                for a in A:
                    out.append(JObject(kind, frozenset(A), a, frozenset(B)))
    return out


def check_eta(obj: JObject, alphabet: Sequence[Name], perms: int = 2, seed: int = 0) -> Report:
    """Exhaustive check of the three coalgebra diagrams (and that eta is a
    morphism) on every point over ``alphabet``."""
    rng = random.Random(seed)
    j = j_map(obj)
    ff = free(j)
    K = ff.object
    h = eta_coalgebra(obj)
    sig = sigma(j)
    Kh = kmap(identity(j.source), h, j, ff.lam, check_iters=0)
    rep = Report(f"eta:{obj!r}", seed, None)
    for pq in jobject_points(obj, alphabet):
        t = h(pq)
        rep.check("eta-lands-in-K", K.contains(t), lambda: f"{pq!r} -> {t!r}")
        if j.source.contains(pq):
            rep.check("coalgebra-top-square", t == ff.lam(pq), lambda: f"{pq!r} -> {t!r}")
        rep.check("coalgebra-counit", ff.rho(t) == pq, lambda: f"{pq!r} -> {t!r}")
        rep.check("coalgebra-comultiplication", sig(t) == Kh(t), lambda: f"{pq!r}")
        for c in alphabet:
            for i in (0, 1):
                lhs = h(j.target.subst(pq, c, i))
                rep.check("eta-preserves-subst", lhs == K.subst(t, c, i), lambda: f"{pq!r} ({c}:={i})")
        for _ in range(perms):
            p = random_perm(rng, alphabet)
            rep.check("eta-equivariant", h(j.target.act(p, pq)) == K.act(p, t), lambda: f"{pq!r} {p!r}")
    return rep


# -- lifting data ---------------------------------------------------------------------


@dataclass
class LiftingData:
    """Lazily represented lifting data for ``g`` against J: ``solve(obj, top,
    bottom)`` returns the diagonal as a function on points of
    ``[]_A * []_B``, for a commuting square ``top: dom j -> X``,
    ``bottom: cod j -> Y``."""

    g: ZMorphism
    solve: Callable


def _boundary_face(obj: JObject, p: CubePoint):
    for l, v in p:
        if not isinstance(v, Name) and (l, v) != (obj.a, obj.kind):
            return l, v
    raise MembershipError(f"{p!r} is not on the open box")


def lifting_to_fibration(g: ZMorphism, phi: LiftingData, extra: int = 0,
                         label: str | None = None) -> FibrationStructure:
    """Kan filling from lifting data: read the box as a square out of
    ``j(kind, A, a, C minus A)`` with ``C`` the box's support (plus ``extra``
    fresh names), solve it, and evaluate the diagonal at the generic point."""
    X, Y = g.source, g.target

    def fill(box: OpenBox):
        C = set(box_support(box, X, Y)) | set(box.names)
        C |= set(fresh_names(extra, C))
        obj = JObject(box.kind, frozenset(box.names), box.open, frozenset(C - box.names))

        def top(pq):
            l, i = _boundary_face(obj, pq[0])
            return yoneda_evaluate(X, box.face(l, i), pq)

        def bottom(pq):
            return yoneda_evaluate(Y, box.base, pq)

        diag = phi.solve(obj, top, bottom)
        return diag((generic_point(obj.A), generic_point(obj.B)))

    return FibrationStructure(g, FillingOperator(fill, fill), label or f"lift({g.label})")


def fibration_to_lifting(fs: FibrationStructure) -> LiftingData:
    g = fs.morphism
    X = g.source

    def solve(obj: JObject, top, bottom):
        gp, gq = generic_point(obj.A), generic_point(obj.B)
        faces = {}
        for l, i in face_indices(obj.kind, obj.A, obj.a):
            faces[(l, i)] = top((point_subst_value(gp, l, i), gq))
        x = fs.fill(OpenBox(obj.kind, obj.A, obj.a, faces, bottom((gp, gq))))
        return lambda pq: yoneda_evaluate(X, x, pq)

    return LiftingData(g, solve)


def square_of_element(g: ZMorphism, obj: JObject, x):
    """The square ``(top, bottom)`` out of ``j(obj)`` determined by an element
    ``x`` whose support lies in ``A`` and ``B``."""
    X, Y = g.source, g.target
    return (lambda pq: yoneda_evaluate(X, x, pq), lambda pq: yoneda_evaluate(Y, g(x), pq))


def check_lifting(fs: FibrationStructure, iters: int = 200, seed: int = 0,
                  names: Sequence[Name] = tuple(Name(k) for k in range(4)), depth: int = 2) -> Report:
    """Round trips between ``fs`` and its lifting data, support-enlargement
    independence, and coherence of the lifting data under J-morphisms."""
    rng = random.Random(seed)
    g = fs.morphism
    X = g.source
    phi = fibration_to_lifting(fs)
    back = lifting_to_fibration(g, phi)
    wide = lifting_to_fibration(g, phi, extra=1)
    rep = Report(f"lifting:{fs.label}", seed, iters)
    for n in range(iters):
        box = fs.sample_box(rng, names, depth, kind=n % 2)
        x = fs.fill(box)
        y = back.fill(box)
        rep.check("fibration-lifting-fibration", y == x, lambda: f"box={box!r}")
        rep.check("rebuilt-is-filler", is_filler(y, box, g), lambda: f"box={box!r}")
        rep.check("support-enlargement", wide.fill(box) == y, lambda: f"box={box!r}")
        # a lifting problem given by a filler-shaped square, and its coherence
        A = frozenset(box.names)
        obj = JObject(box.kind, A, box.open, frozenset(box_support(box, X, g.target) - A))
        top, bottom = square_of_element(g, obj, x)
        d = phi.solve(obj, top, bottom)
        phi2 = fibration_to_lifting(back)
        d2 = phi2.solve(obj, top, bottom)
        pts = [(generic_point(obj.A), generic_point(obj.B))]
        pts.append(j_map(obj).target.gen(rng, names, depth))
        for pq in pts:
            rep.check("lifting-fibration-lifting", d(pq) == d2(pq), lambda: f"obj={obj!r} pt={pq!r}")
        m = random_jmorphism(rng, obj)
        xt = X.gen(rng, sorted(m.target.A | m.target.B), depth)
        topt, bottomt = square_of_element(g, m.target, xt)
        dt = phi.solve(m.target, topt, bottomt)
        ds = phi.solve(obj, lambda pq: topt(m.on_point(pq)), lambda pq: bottomt(m.on_point(pq)))
        pq = j_map(obj).target.gen(rng, names, depth)
        rep.check("lifting-coherence", ds(pq) == dt(m.on_point(pq)), lambda: f"m={m!r} pt={pq!r}")
    return rep

