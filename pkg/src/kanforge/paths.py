"""Path objects by labelled name abstraction.

For a fibration ``f: X -> Y`` the path object ``P_Y X`` is the set of normal
forms inside ``K Delta``, where ``Delta: X -> X x_Y X`` is the diagonal.  A
normal form is stored as its ``K Delta`` term (a base term, or a canonical
``Plus``); its direction is recovered by unbinding at a fresh name.
"""

from __future__ import annotations

import random
from typing import Sequence

from .boxes import UP, FibrationStructure, FillingOperator, OpenBox, box_support, is_filler, random_box
from .kterms import Base, Comp, Fill, KTerm, free
from .names import Name, Perm, fresh_name, parse_name
from .reports import Report
from .zsub import STAR, TERMINAL, MembershipError, Pullback, ZMorphism, ZObject, pick_name, random_perm


class NotNormalForm(ValueError):
    pass


class SupportNotComputable(ValueError):
    pass


def diagonal(f: ZMorphism) -> ZMorphism:
    d = getattr(f, "_kanforge_diagonal", None)
    if d is None:
        XX = Pullback(f, f, pair_gen=lambda rng, names, depth: _diag_pair(f, rng, names, depth))
        d = ZMorphism(f.source, XX, lambda x: (x, x), f"Delta_{f.label}")
        f._kanforge_diagonal = d
    return d


def _diag_pair(f, rng, names, depth):
    x = f.source.gen(rng, names, depth)
    return (x, x)


class PathObject(ZObject):
    """``P_Y X`` for ``f``.  ``fs`` (a filling operator on ``f``) is needed
    for filling, homotopies and the reflexivity coalgebra, not for the
    carrier itself."""

    def __init__(self, f: ZMorphism, fs: FibrationStructure | None = None):
        self.f = f
        self.fs = fs
        self.X, self.Y = f.source, f.target
        self.delta = diagonal(f)
        self.XX = self.delta.target
        self.KD = free(self.delta).object
        self.label = f"P({f.label})"
        self.rho = ZMorphism(self, self.XX, self.KD.rho, f"rhoP_{f.label}")
        self.p = ZMorphism(self, self.Y, lambda w: f(self.KD.rho(w)[0]), f"p_{f.label}")
        self.r = ZMorphism(self.X, self, self.KD.base, f"r_{f.label}")
        self._h: dict = {}
        self._k: dict = {}

    # -- carrier ----------------------------------------------------------------

    def act(self, p, w):
        return self.KD.act(p, w)

    def subst(self, w, a, i):
        return self.KD.subst(w, a, i)

    def support(self, w):
        return w.support

    def contains(self, w):
        return is_normal(self, w) and self.KD.contains(w)

    def gen(self, rng: random.Random, names: Sequence[Name], depth: int = 2) -> KTerm:
        r = rng.random()
        if r < 0.15:
            return self.r(self.X.gen(rng, names, depth))
        if r < 0.75 or self.fs is None or depth <= 0:
            for _ in range(10):
                x = self.X.gen(rng, names, depth)
                free_dirs = sorted(self.X.support(x) - self.Y.support(self.f(x)))
                if free_dirs:
                    a = rng.choice(free_dirs)
                    w = abstraction_to_normal_form(self, a, x)
                    if rng.random() < 0.3:
                        w = self.KD.act(random_perm(rng, names), w)
                    return w
            return self.r(x)
        w = self.gen(rng, names, depth - 1)
        box = random_box(self.rho, rng, names, depth, x=w, max_dim=2)
        return path_fill(self, box)

    def to_json(self, w):
        out = dict(self.KD.to_json(w))
        out["direction"] = str(direction_of(w))
        return out

    def from_json(self, j):
        if not isinstance(j, dict) or "direction" not in j:
            raise MembershipError("normal forms carry a 'direction' field")
        body = {k: v for k, v in j.items() if k != "direction"}
        w = self.KD.from_json(body)
        a = parse_name(j["direction"])
        if not is_normal(self, w):
            raise NotNormalForm(f"{w!r} is not a normal form")
        if a != direction_of(w) and a in w.support:
            raise NotNormalForm(f"direction {a} is not fresh for {w!r}")
        return w


def direction_of(w: KTerm) -> Name:
    """The cached witness direction: the bound name of a ``Plus``, otherwise
    the least fresh name."""
    return w.bound if isinstance(w, Comp) else fresh_name(w.support)


def path_object(fs: FibrationStructure) -> PathObject:
    P = getattr(fs, "_path_object", None)
    if P is None:
        P = PathObject(fs.morphism, fs)
        fs._path_object = P
    return P


# -- pre-normal and normal forms ----------------------------------------------------------


def is_prenormal(P: PathObject, t: KTerm, a: Name) -> bool:
    X = P.X
    if isinstance(t, Base):
        return a not in t.support
    if not isinstance(t, Fill):
        return False
    box = t.box
    if box.kind != UP or box.open != a:
        return False
    x1, _ = box.base
    if a in X.support(x1) or box.face(a, 0) != P.KD.base(x1):
        return False
    return all(is_prenormal(P, v, a) for (b, _), v in box.faces if b != a)


def is_normal(P: PathObject, w: KTerm) -> bool:
    if isinstance(w, Base):
        return True
    if isinstance(w, Comp) and w.box.kind == UP:
        return is_prenormal(P, P.KD.fill(w.box), w.box.open)
    return False


def bind(P: PathObject, z: KTerm, a: Name) -> KTerm:
    return P.KD.subst(z, a, 1)


def unbind(P: PathObject, w: KTerm, a: Name) -> KTerm:
    """The unique pre-normal form ``z`` in direction ``a`` with ``z(a:=1) = w``."""
    if a in w.support:
        raise ValueError(f"{a} is not fresh for {w!r}")
    if isinstance(w, Base):
        return w
    if not (isinstance(w, Comp) and w.box.kind == UP):
        raise NotNormalForm(f"{w!r} is not a normal form")
    b = w.box.open
    z = P.KD.fill(w.box)
    if b != a:
        z = P.KD.act(Perm.swap(a, b), z)
    if not is_prenormal(P, z, a):
        raise NotNormalForm(f"{w!r} does not unbind to a pre-normal form")
    return z


# -- filling P_Y X --------------------------------------------------------------------------


def path_fill(P: PathObject, v: OpenBox) -> KTerm:
    """Kan filler for a box of normal forms over ``rho`` restricted to ``P``.

    Unbind every face in a fresh direction ``b``; fill the box of their
    endpoints, widened in ``b`` by the base pair, in ``X``; compose that to
    get the far face in ``a``; assemble the pre-normal ``(A + b, b)``-box and
    bind ``b``.  The 0-open case is the mirror image in ``a``."""
    fs = P.fs
    X, KD = P.X, P.KD
    kind, a, A = v.kind, v.open, v.names
    x1, x2 = v.base
    b = fresh_name(box_support(v, P, P.XX) | A)
    vp = {k: unbind(P, face, b) for k, face in v.faces}
    wide = {k: KD.rho(z)[1] for k, z in vp.items()}
    wide[(b, 0)] = x1
    wide[(b, 1)] = x2
    filled = fs.fill(OpenBox(kind, A | {b}, a, wide, P.f(x1)))
    far = X.subst(filled, a, kind)
    x1far = X.subst(x1, a, kind)
    wf = {(b, 0): KD.base(x1far)}
    for (c, i), z in vp.items():
        if c != a:
            wf[(c, i)] = KD.subst(z, a, kind)
    w = KD.fill(OpenBox(UP, (A - {a}) | {b}, b, wf, (x1far, far)))
    wp = dict(vp)
    wp[(b, 0)] = KD.base(x1)
    wp[(a, kind)] = w
    return KD.comp(OpenBox(UP, A | {b}, b, wp, (x1, filled)))


def path_fibration(P: PathObject) -> FibrationStructure:
    def fill(box):
        return path_fill(P, box)

    return FibrationStructure(P.rho, FillingOperator(fill, fill), f"path({P.f.label})",
                              box_sampler=lambda rng, names, depth, kind: random_box(
                                  P.rho, rng, names, depth, kind, max_dim=2,
                                  x=P.gen(rng, names, depth)))


# -- homotopies and the reflexivity coalgebra -------------------------------------------------


def homotopy_h(P: PathObject, z: KTerm, b: Name):
    """A homotopy in ``X`` from the constant path at ``x1`` to ``x2``."""
    if isinstance(z, Base):
        return z.value
    key = (z, b)
    out = P._h.get(key)
    if out is not None:
        return out
    box = z.box
    x1, x2 = box.base
    faces = {k: homotopy_h(P, u, b) for k, u in box.faces}
    faces[(b, 0)] = x1
    faces[(b, 1)] = x2
    out = P.fs.fill(OpenBox(UP, box.names | {b}, box.open, faces, P.f(x1)))
    P._h[key] = out
    return out


def homotopy_k(P: PathObject, z: KTerm, b: Name) -> KTerm:
    """A direction-preserving homotopy of pre-normal forms from ``x1`` to ``z``."""
    if isinstance(z, Base):
        return z
    key = (z, b)
    out = P._k.get(key)
    if out is not None:
        return out
    KD = P.KD
    box = z.box
    x1, _ = box.base
    faces = {k: homotopy_k(P, u, b) for k, u in box.faces}
    faces[(b, 0)] = KD.base(x1)
    faces[(b, 1)] = z
    out = KD.fill(OpenBox(UP, box.names | {b}, box.open, faces, (x1, homotopy_h(P, z, b))))
    P._k[key] = out
    return out


def homotopy_l(P: PathObject, z: KTerm, b: Name) -> KTerm:
    """The map into ``K r`` from which the coalgebra ``c`` is read off."""
    Kr = free(P.r).object
    if isinstance(z, Base):
        return Kr.base(z.value)
    box = z.box
    a = box.open
    x1, _ = box.base
    faces = {(c, i): homotopy_l(P, u, b) for (c, i), u in box.faces if c != a}
    faces[(b, 0)] = Kr.base(x1)
    top = P.KD.subst(homotopy_k(P, z, b), a, 1)
    return Kr.fill(OpenBox(UP, (box.names - {a}) | {b}, b, faces, top))


def reflexivity_coalgebra(P: PathObject):
    """``(r, c)`` with ``r: X -> P_Y X`` and ``c: P_Y X -> K r``."""
    Kr = free(P.r).object

    def c(w):
        if isinstance(w, Base):
            return Kr.base(w.value)
        a = fresh_name(w.support)
        z = unbind(P, w, a)
        b = fresh_name(w.support | {a})
        return Kr.subst(homotopy_l(P, z, b), b, 1)

    return P.r, ZMorphism(P, Kr, c, f"c_{P.f.label}")


def decidable_image(j: ZMorphism, v) -> bool:
    """Membership of ``v`` in the image of a left map ``i``, given a diagonal
    ``j`` into ``K i`` of its lifting square: in the image iff ``j(v)`` has
    rank 0."""
    return j(v).rank == 0


# -- the classical comparison ---------------------------------------------------------------------


def abstraction_to_normal_form(P: PathObject, a: Name, x) -> KTerm:
    """``<a>x`` (with ``a`` fresh for ``f(x)``) as a normal form."""
    if not getattr(P.X, "least_support", True):
        raise SupportNotComputable(f"{P.X.label} does not compute least supports")
    if a in P.Y.support(P.f(x)):
        raise MembershipError(f"{a} occurs in {P.f.label}({x!r})")
    return P.KD.subst(_g0(P, a, x), a, 1)


def _g0(P: PathObject, a: Name, x) -> KTerm:
    X, KD = P.X, P.KD
    S = X.support(x)
    if a not in S:
        return KD.base(x)
    x0 = X.subst(x, a, 0)
    faces = {(a, 0): KD.base(x0)}
    for c in sorted(S - {a}):
        for i in (0, 1):
            faces[(c, i)] = _g0(P, a, X.subst(x, c, i))
    return KD.fill(OpenBox(UP, S, a, faces, (x0, x)))


# -- pullback stability -----------------------------------------------------------------------------


class PullbackSquare:
    """``U --h--> X``, ``U --g--> V``, ``V --k--> Y``, ``X --f--> Y`` with
    ``U = V x_Y X``."""

    def __init__(self, f: ZMorphism, k: ZMorphism, pair_gen=None, label="sq"):
        self.f, self.k = f, k
        self.U = Pullback(k, f, pair_gen=pair_gen, label=f"({k.source.label} x_{f.target.label} {f.source.label})")
        self.g, self.h = self.U.p1, self.U.p2
        self.V = k.source
        self.label = label
        self.PX = PathObject(f)
        self.PU = PathObject(self.g)
        dh = ZMorphism(self.PU.XX, self.PX.XX, lambda uu: (self.h(uu[0]), self.h(uu[1])), "hxh")
        self._transport = _structural_map(self.PU.KD, self.PX.KD, self.h, dh)

    def transport(self, u: KTerm) -> KTerm:
        """``P_V U -> P_Y X``."""
        return self._transport(u)

    def lift(self, v, w: KTerm) -> KTerm:
        """The unique element of ``P_V U`` over ``(v, w)``."""
        if self.k(v) != self.PX.p(w):
            raise MembershipError(f"{self.k.label}({v!r}) != p({w!r})")
        a = fresh_name(self.V.support(v) | w.support)
        z = unbind(self.PX, w, a)
        return self.PU.KD.subst(self._lift0(v, z), a, 1)

    def _lift0(self, v, z):
        KU = self.PU.KD
        if isinstance(z, Base):
            return KU.base((v, z.value))
        box = z.box
        x1, x2 = box.base
        faces = {(c, i): self._lift0(self.V.subst(v, c, i), t) for (c, i), t in box.faces}
        return KU.fill(OpenBox(UP, box.names, box.open, faces, ((v, x1), (v, x2))))


def _structural_map(src, dst, h, dh):
    memo: dict = {}

    def go(t):
        out = memo.get(t)
        if out is None:
            if isinstance(t, Base):
                out = dst.base(h(t.value))
            else:
                box = t.box
                nb = OpenBox(box.kind, box.names, box.open, ((k, go(v)) for k, v in box.faces), dh(box.base))
                out = dst.fill(nb) if isinstance(t, Fill) else dst.comp(nb)
            memo[t] = out
        return out

    return go


def check_pullback_stability(sq: PullbackSquare, sample_w, iters: int = 100, seed: int = 0,
                             names: Sequence[Name] = tuple(Name(k) for k in range(4)),
                             depth: int = 2) -> Report:
    """``P_V U -> V x_Y P_Y X`` is a bijection on samples: lifting then
    transporting is the identity, and so is transporting then lifting."""
    rng = random.Random(seed)
    rep = Report(f"pullback:{sq.label}", seed, iters)
    PU, PX = sq.PU, sq.PX
    for _ in range(iters):
        v, w = sample_w(rng, names, depth)
        u = sq.lift(v, w)
        rep.check("lift-is-normal", PU.contains(u), lambda: f"v={v!r} w={w!r}")
        rep.check("lift-over-v", PU.p(u) == v, lambda: f"v={v!r} w={w!r}")
        rep.check("transport-lift", sq.transport(u) == w, lambda: f"v={v!r} w={w!r}")
        u2 = PU.gen(rng, names, depth)
        t = sq.transport(u2)
        rep.check("transport-is-normal", PX.contains(t), lambda: f"u={u2!r}")
        rep.check("square-commutes", PX.p(t) == sq.k(PU.p(u2)), lambda: f"u={u2!r}")
        rep.check("lift-transport", sq.lift(PU.p(u2), t) == u2, lambda: f"u={u2!r}")
    return rep


def _zero_out(obj: ZObject, x, names_of):
    for c in sorted(names_of(x)):
        x = obj.subst(x, c, 0)
    return x


def standard_squares(P: PathObject, tries: int = 200) -> list:
    """Two pullback squares over ``P.f`` with element samplers for
    :func:`check_pullback_stability`: along the identity of ``Y``, and along
    the global point of ``Y`` obtained by zeroing every name.  Samples over
    the point are drawn by zeroing the names below and rejecting misses."""
    f, X, Y = P.f, P.X, P.Y
    ident = ZMorphism(Y, Y, lambda y: y, f"1_{Y.label}")

    def pair1(rng, names, d):
        x = X.gen(rng, names, d)
        return (f(x), x)

    def sample1(rng, names, d):
        w = P.gen(rng, names, d)
        return (P.p(w), w)

    x0 = _zero_out(X, X.gen(random.Random(0), (Name(0),), 0), X.support)
    y0 = f(x0)
    point = ZMorphism(TERMINAL, Y, lambda _: y0, "y0")

    def over_point(gen, obj, proj):
        def draw(rng, names, d):
            for _ in range(tries):
                e = _zero_out(obj, gen(rng, names, d), lambda e: Y.support(proj(e)))
                if proj(e) == y0:
                    return (STAR, e)
            raise RuntimeError(f"no sample over {y0!r} in {tries} tries")
        return draw

    sq1 = PullbackSquare(f, ident, pair_gen=pair1, label="along-identity")
    sq2 = PullbackSquare(f, point, pair_gen=over_point(X.gen, X, f), label="along-point")
    return [(sq1, sample1), (sq2, over_point(P.gen, P, P.p))]


# -- law runner ------------------------------------------------------------------------------------


def check_path_object(P: PathObject, iters: int = 500, seed: int = 0,
                      names: Sequence[Name] = tuple(Name(k) for k in range(4)), depth: int = 2,
                      fill_iters: int | None = None) -> Report:
    rng = random.Random(seed)
    KD, X = P.KD, P.X
    r, c = reflexivity_coalgebra(P)
    Kr = c.target
    rep = Report(f"path:{P.label}", seed, iters)
    for n in range(iters):
        w = P.gen(rng, names, depth)
        rep.check("normal-form", P.contains(w), lambda: f"w={w!r}")
        a = fresh_name(w.support | set(names))
        z = unbind(P, w, a)
        rep.check("unbind-prenormal", is_prenormal(P, z, a), lambda: f"w={w!r}")
        rep.check("bind-unbind", bind(P, z, a) == w, lambda: f"w={w!r}")
        rep.check("unbind-bind", unbind(P, bind(P, z, a), a) == z, lambda: f"z={z!r}")
        p = random_perm(rng, names)
        cn = pick_name(rng, w.support, names)
        i = rng.randint(0, 1)
        rep.check("closed-under-action", is_normal(P, KD.act(p, w)), lambda: f"w={w!r} p={p!r}")
        rep.check("closed-under-subst", is_normal(P, KD.subst(w, cn, i)), lambda: f"w={w!r} ({cn}:={i})")
        cw = c(w)
        rep.check("counit", Kr.rho(cw) == w, lambda: f"w={w!r}")
        rep.check("coalgebra-on-r", c(r(KD.rho(w)[0])) == Kr.lam(KD.rho(w)[0]), lambda: f"w={w!r}")
        rep.check("decidable-image", decidable_image(c, w) == isinstance(w, Base), lambda: f"w={w!r}")
        b = fresh_name(z.support | {a})
        hz = homotopy_h(P, z, b)
        x1, x2 = KD.rho(z)
        rep.check("h-endpoints", (X.subst(hz, b, 0), X.subst(hz, b, 1)) == (x1, x2), lambda: f"z={z!r}")
        kz = homotopy_k(P, z, b)
        rep.check("k-endpoints", KD.subst(kz, b, 0) == KD.base(x1) and KD.subst(kz, b, 1) == z,
                  lambda: f"z={z!r}")
        rep.check("k-direction", is_prenormal(P, kz, a), lambda: f"z={z!r}")
        lz = homotopy_l(P, z, b)
        rep.check("l-invariant", Kr.rho(lz) == KD.subst(kz, a, 1) and a not in lz.support,
                  lambda: f"z={z!r}")
        cs = [n for n in sorted(z.support) if n != a]
        if cs:
            cn = rng.choice(cs)
            zc = KD.subst(z, cn, i)
            rep.check("h-subst", homotopy_h(P, zc, b) == X.subst(hz, cn, i), lambda: f"z={z!r} ({cn}:={i})")
            rep.check("k-subst", homotopy_k(P, zc, b) == KD.subst(kz, cn, i), lambda: f"z={z!r} ({cn}:={i})")
            rep.check("l-subst", homotopy_l(P, zc, b) == Kr.subst(lz, cn, i), lambda: f"z={z!r} ({cn}:={i})")
        x = X.gen(rng, names, depth)
        dirs = sorted(X.support(x) - P.Y.support(P.f(x)))
        if dirs:
            ad = rng.choice(dirs)
            g = abstraction_to_normal_form(P, ad, x)
            rep.check("abstraction-projections", KD.rho(g) == (X.subst(x, ad, 0), X.subst(x, ad, 1)),
                      lambda: f"<{ad}>{x!r}")
            fa = fresh_name(g.support | {ad})
            rep.check("abstraction-prenormal", is_prenormal(P, unbind(P, g, fa), fa), lambda: f"<{ad}>{x!r}")
        else:
            rep.check("abstraction-degenerate", abstraction_to_normal_form(P, fresh_name(X.support(x)), x)
                      == r(x), lambda: f"x={x!r}")
    fib = path_fibration(P)
    for n in range(iters if fill_iters is None else fill_iters):
        box = fib.sample_box(rng, names, depth, kind=n % 2)
        y = path_fill(P, box)
        rep.check("fill-is-filler", is_filler(y, box, P.rho), lambda: f"box={box!r}")
        rep.check("fill-is-normal", P.contains(y), lambda: f"box={box!r}")
    return rep
