"""Names, finite permutations, freshness and name abstraction.

Names are interned naturals ``a0, a1, ...``.  Everything here is immutable.
The generic helpers :func:`act_any` and :func:`support_any` give a structural
nominal action on plain Python data (names nested inside tuples, frozensets
and ``Abstraction`` values); richer carriers supply their own.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping

__all__ = [
    "Name",
    "NameSet",
    "Perm",
    "Abstraction",
    "ContractViolation",
    "fresh_name",
    "fresh_names",
    "parse_name",
    "perm_apply",
    "act_any",
    "support_any",
    "abstract",
    "alpha_equal",
    "extend_over_abstraction",
]


class ContractViolation(Exception):
    """A caller-asserted freshness contract failed a spot-check."""


@dataclass(frozen=True, order=True, slots=True)
class Name:
    id: int

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"name ids are natural numbers, got {self.id}")

    def __repr__(self) -> str:
        return f"a{self.id}"

    __str__ = __repr__


NameSet = frozenset  # finite sets of Name

_NAME_RE = re.compile(r"^a(\d+)$")


def parse_name(text: str) -> Name:
    m = _NAME_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a name: {text!r} (expected a<id>)")
    return Name(int(m.group(1)))


def fresh_name(avoid: Iterable[Name] = ()) -> Name:
    """Smallest-id name not in ``avoid``."""
    used = {n.id for n in avoid}
    i = 0
    while i in used:
        i += 1
    return Name(i)


def fresh_names(k: int, avoid: Iterable[Name] = ()) -> list[Name]:
    avoid = set(avoid)
    out = []
    for _ in range(k):
        n = fresh_name(avoid)
        avoid.add(n)
        out.append(n)
    return out


@dataclass(frozen=True, slots=True)
class Perm:
    """A finite permutation of names, stored as its non-fixed points."""

    pairs: tuple[tuple[Name, Name], ...] = ()
    _map: Mapping[Name, Name] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pairs = tuple(sorted((a, b) for a, b in self.pairs if a != b))
        mapping = dict(pairs)
        if sorted(mapping.values()) != sorted(mapping):
            raise ValueError(f"not a bijection on its carrier: {pairs}")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_map", mapping)

    @classmethod
    def identity(cls) -> "Perm":
        return cls(())

    @classmethod
    def swap(cls, a: Name, b: Name) -> "Perm":
        return cls(((a, b), (b, a)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[Name, Name]) -> "Perm":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_cycles(cls, *cycles: Iterable[Name]) -> "Perm":
        """Compose cycles right to left, as written: ``(a0 a1)(a1 a2)``."""
        p = cls.identity()
        for cyc in cycles:
            cyc = list(cyc)
            m = {cyc[k]: cyc[(k + 1) % len(cyc)] for k in range(len(cyc))}
            p = p * cls.from_mapping(m)
        return p

    def __call__(self, a: Name) -> Name:
        return self._map.get(a, a)

    def __mul__(self, other: "Perm") -> "Perm":
        """``(p * q)(a) == p(q(a))``."""
        carrier = set(self._map) | set(other._map)
        return Perm(tuple((a, self(other(a))) for a in carrier))

    def inverse(self) -> "Perm":
        return Perm(tuple((b, a) for a, b in self.pairs))

    @property
    def carrier(self) -> frozenset:
        return frozenset(self._map)

    def is_identity(self) -> bool:
        return not self.pairs

    def fixes(self, names: Iterable[Name]) -> bool:
        return all(self(a) == a for a in names)

    def __repr__(self) -> str:
        if not self.pairs:
            return "Perm()"
        return "Perm(" + ", ".join(f"{a}->{b}" for a, b in self.pairs) + ")"


def perm_apply(p: Perm, a: Name) -> Name:
    return p(a)


@dataclass(frozen=True, slots=True)
class Abstraction:
    """``<bound>body``.  Build through :func:`abstract` to get the canonical
    representative, so that alpha-equivalent abstractions compare equal."""

    bound: Name
    body: Any

    def __repr__(self) -> str:
        return f"<{self.bound}>{self.body!r}"


def act_any(p: Perm, v: Any) -> Any:
    if isinstance(v, Name):
        return p(v)
    if isinstance(v, tuple):
        return tuple(act_any(p, w) for w in v)
    if isinstance(v, frozenset):
        return frozenset(act_any(p, w) for w in v)
    if isinstance(v, Abstraction):
        return abstract(p(v.bound), act_any(p, v.body))
    return v


def support_any(v: Any) -> frozenset:
    if isinstance(v, Name):
        return frozenset((v,))
    if isinstance(v, (tuple, frozenset)):
        out = frozenset()
        for w in v:
            out |= support_any(w)
        return out
    if isinstance(v, Abstraction):
        return support_any(v.body) - {v.bound}
    return frozenset()


def abstract(
    a: Name,
    x: Any,
    act: Callable[[Perm, Any], Any] = act_any,
    support: Callable[[Any], frozenset] = support_any,
) -> Abstraction:
    """Canonical ``<a>x``: the bound name is the smallest name fresh for the
    abstraction's free names.  Relies on ``support`` being the least support."""
    free = support(x) - {a}
    c = fresh_name(free)
    if c != a:
        x = act(Perm.swap(c, a), x)
    return Abstraction(c, x)


def alpha_equal(
    x: Abstraction,
    y: Abstraction,
    eq: Callable[[Any, Any], bool] = lambda u, v: u == v,
    act: Callable[[Perm, Any], Any] = act_any,
    support: Callable[[Any], frozenset] = support_any,
) -> bool:
    """``<a>x ~ <a'>x'`` iff swapping both bound names to a common fresh name
    gives equal bodies.  Works on non-canonical representatives too."""
    c = fresh_name(support(x.body) | support(y.body) | {x.bound, y.bound})
    return eq(act(Perm.swap(c, x.bound), x.body), act(Perm.swap(c, y.bound), y.body))


def extend_over_abstraction(
    F: Callable[[Name, Any], Any],
    params: Iterable[Name] = (),
    act: Callable[[Perm, Any], Any] = act_any,
    support: Callable[[Any], frozenset] = support_any,
    result_support: Callable[[Any], frozenset] = support_any,
) -> Callable[[Abstraction], Any]:
    """Extend ``F(a, x)``, given for ``a`` fresh for ``params``, to a map on
    abstractions.  The bound name is renamed to a name fresh for the
    parameters and the abstraction before ``F`` is applied; the result is
    checked not to mention that name."""
    params = frozenset(params)

    def extended(t: Abstraction) -> Any:
        free = support(t.body) - {t.bound}
        b = fresh_name(params | free | {t.bound})
        body = act(Perm.swap(b, t.bound), t.body)
        out = F(b, body)
        if b in result_support(out):
            raise ContractViolation(f"{b} occurs in F({b}, ...) = {out!r}")
        return out

    return extended
