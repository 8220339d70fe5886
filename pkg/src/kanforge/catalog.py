"""Small concrete morphisms and fibration structures used by the law suites."""

from __future__ import annotations

from .boxes import DOWN, UP, FibrationStructure, FillingOperator, OpenBox, box_support
from .cubes import JObject, cube_object, j_map
from .kterms import free
from .names import Name, fresh_name
from .zsub import TERMINAL, Discrete, ZMorphism, identity, to_terminal

A2 = frozenset((Name(0), Name(1)))


def unit_morphism() -> ZMorphism:
    """``1_1``."""
    return _cached("unit", lambda: ZMorphism(TERMINAL, TERMINAL, lambda x: x, "1_1"))


def cube_to_terminal(n: int = 2) -> ZMorphism:
    """``[]_A -> 1`` for ``A = {a0, ..., a(n-1)}``."""
    return _cached(("cube!", n), lambda: to_terminal(cube_object(Name(k) for k in range(n))))


def box_inclusion(kind: int = UP, n: int = 2) -> ZMorphism:
    """The open-box inclusion into ``[]_A`` (the generating map with B empty)."""
    A = frozenset(Name(k) for k in range(n))
    return j_map(JObject(kind, A, Name(0), frozenset()))


def sample_morphisms() -> list[ZMorphism]:
    return [unit_morphism(), cube_to_terminal(2), box_inclusion(UP, 2)]


_CACHE: dict = {}


def _cached(key, build):
    if key not in _CACHE:
        _CACHE[key] = build()
    return _CACHE[key]


# -- fibration structures -----------------------------------------------------------


def formal_fibration(f: ZMorphism) -> FibrationStructure:
    """``rho_f`` filled by the formal filler: the canonical free algebra."""
    ff = free(f)
    K = ff.object
    return FibrationStructure(ff.rho, FillingOperator(K.fill, K.fill), f"formal({f.label})")


def twisted_fill(f: ZMorphism):
    """A second uniform filler on ``rho_f``: compose the box of the formal filler
    ``p``, degenerate in a fresh direction ``c`` with ``p`` as its base face."""
    K = free(f).object
    Y = f.target

    def fill(box: OpenBox):
        p = K.fill(box)
        c = fresh_name(box_support(box, K, Y))
        faces = {(b, i): K.subst(p, b, i) for b in box.names for i in (0, 1)}
        faces[(c, 1 - box.kind)] = p
        return K.comp(OpenBox(box.kind, box.names | {c}, c, faces, box.base))

    return fill


def twisted_fibration(f: ZMorphism) -> FibrationStructure:
    ff = free(f)
    fill = twisted_fill(f)
    return FibrationStructure(ff.rho, FillingOperator(fill, fill), f"twisted({f.label})")


def identity_fibration(Y) -> FibrationStructure:
    def fill(box):
        return box.base

    return FibrationStructure(identity(Y), FillingOperator(fill, fill), f"id({Y.label})")


def discrete_fibration(elements=("p", "q", "r")) -> FibrationStructure:
    """``D -> 1`` for a discrete ``D``; every face of a box is the same point."""
    D = Discrete(elements, "D")

    def fill(box):
        return box.faces[0][1]

    return FibrationStructure(to_terminal(D), FillingOperator(fill, fill), "discrete")


def lopsided_fibration(f: ZMorphism) -> FibrationStructure:
    """Negative control: formal filler when the open name is the least name of
    the box, twisted otherwise.  Commutes with fresh substitutions but not
    with permutations."""
    K = free(f).object
    tw = twisted_fill(f)

    def fill(box):
        return K.fill(box) if box.open == min(box.names) else tw(box)

    return FibrationStructure(free(f).rho, FillingOperator(fill, fill), f"lopsided({f.label})")


def produced_fibrations() -> list[FibrationStructure]:
    """Every filling operator the library constructs on the test morphisms."""
    out = []
    for f in sample_morphisms():
        out.append(formal_fibration(f))
        out.append(twisted_fibration(f))
    out.append(identity_fibration(cube_object(A2)))
    out.append(discrete_fibration())
    return out


__all__ = [
    "A2", "box_inclusion", "cube_to_terminal", "discrete_fibration", "formal_fibration",
    "identity_fibration", "lopsided_fibration", "produced_fibrations", "sample_morphisms",
    "twisted_fibration", "twisted_fill", "unit_morphism", "DOWN", "UP",
]
