"""Rank-stratified enumeration of ``K 1_1``.

A term is counted for an alphabet when some alpha-variant of it mentions
only alphabet names, free or bound, at every depth.  Two enumerators are
provided: a backtracking one that prunes on freshness and adjacency while
assigning faces, and a staged brute force that tries every face tuple and
lets box validation decide.  They share nothing beyond the term constructors.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable

from .boxes import DOWN, UP, BoxError, OpenBox, box_act, face_indices, validate_box
from .kterms import Base, Fill, KObject, KTerm, free, term_to_json
from .names import Name, Perm
from .zsub import STAR, TERMINAL

MAX_RANK = 3
MAX_ALPHABET = 4
MAX_TERMS = 200_000


class ResourceLimit(RuntimeError):
    pass


def terminal_k() -> KObject:
    from .catalog import unit_morphism

    return free(unit_morphism()).object


def alphabet(size: int) -> tuple[Name, ...]:
    return tuple(Name(k) for k in range(size))


def _guard(rank_max: int, size: int, limit: int):
    if rank_max < 0 or size < 0:
        raise ValueError("rank_max and alphabet size must be non-negative")
    if rank_max > MAX_RANK:
        raise ResourceLimit(f"rank_max {rank_max} exceeds the limit {MAX_RANK}")
    if size > MAX_ALPHABET:
        raise ResourceLimit(f"alphabet size {size} exceeds the limit {MAX_ALPHABET}")


def _subsets(names: tuple[Name, ...]):
    for k in range(1, len(names) + 1):
        yield from itertools.combinations(names, k)


def recursive_rank(t: KTerm) -> int:
    """Rank recomputed from the term tree, ignoring the stored field."""
    if isinstance(t, Base):
        return 0
    return 1 + max(recursive_rank(v) for _, v in t.box.faces)


# -- backtracking enumerator ------------------------------------------------------


def enumerate_terms(rank_max: int, size: int, limit: int = MAX_TERMS) -> dict[int, list[KTerm]]:
    """Terms of ``K 1_1`` over the first ``size`` names, grouped by rank, each
    group sorted by its JSON rendering."""
    _guard(rank_max, size, limit)
    K = terminal_k()
    names = alphabet(size)
    seen: set[KTerm] = {K.base(STAR)}
    layers: dict[int, list[KTerm]] = {0: [K.base(STAR)]}
    pool = list(layers[0])
    for r in range(1, rank_max + 1):
        new: set[KTerm] = set()
        for A in _subsets(names):
            for a in A:
                for kind in (UP, DOWN):
                    for box in _boxes(K, kind, frozenset(A), a, pool):
                        for t in (K.fill(box), K.comp(box)):
                            if t not in seen:
                                new.add(t)
                                if len(seen) + len(new) > limit:
                                    raise ResourceLimit(f"more than {limit} terms")
        # everything new has rank exactly r: its faces come from the pool and
        # a term of rank < r would have appeared at an earlier stage
        layers[r] = sorted(new, key=_sort_key)
        seen |= new
        pool.extend(layers[r])
    return layers


def _boxes(K: KObject, kind: int, A: frozenset, a: Name, pool: list[KTerm]):
    idx = face_indices(kind, A, a)
    by_name = {b: [t for t in pool if b not in t.support] for b in A}
    chosen: list[KTerm] = []

    def go(n: int):
        if n == len(idx):
            yield OpenBox(kind, A, a, zip(idx, chosen), STAR)
            return
        b, i = idx[n]
        for v in by_name[b]:
            ok = True
            for (b2, i2), v2 in zip(idx, chosen):
                if b2 != b and K.subst(v, b2, i2) != K.subst(v2, b, i):
                    ok = False
                    break
            if ok:
                chosen.append(v)
                yield from go(n + 1)
                chosen.pop()

    yield from go(0)


def _sort_key(t: KTerm):
    return json.dumps(term_to_json(terminal_k(), t), sort_keys=True)


def count_terms(rank_max: int, size: int, limit: int = MAX_TERMS) -> dict[int, int]:
    return {r: len(ts) for r, ts in enumerate_terms(rank_max, size, limit).items()}


# -- staged brute force -----------------------------------------------------------


def brute_force_stages(rank_max: int, size: int) -> dict[int, frozenset]:
    """Independent oracle: stage ``r`` holds every term whose faces all lie in
    stage ``r - 1``.  Face tuples come from a plain cartesian product and are
    kept when :func:`validate_box` accepts them; compositions are obtained by
    substituting the missing face of the filler."""
    if rank_max > 2 or (rank_max == 2 and size > 2):
        raise ResourceLimit("the brute-force oracle is limited to rank 2 over at most 2 names")
    K = terminal_k()
    names = alphabet(size)
    stages = {0: frozenset({K.base(STAR)})}
    for r in range(1, rank_max + 1):
        prev = sorted(stages[r - 1], key=_sort_key)
        out = set(prev)
        for A in _subsets(names):
            A = frozenset(A)
            for a in sorted(A):
                for kind in (UP, DOWN):
                    idx = face_indices(kind, A, a)
                    for faces in itertools.product(prev, repeat=len(idx)):
                        box = OpenBox(kind, A, a, zip(idx, faces), STAR)
                        try:
                            validate_box(box, K.rho)
                        except BoxError:
                            continue
                        filler = K.fill(box)
                        out.add(filler)
                        out.add(K.subst(filler, a, kind))
        stages[r] = frozenset(out)
    return stages


def brute_force_counts(rank_max: int, size: int) -> dict[int, int]:
    stages = brute_force_stages(rank_max, size)
    return {r: len(stages[r]) - (len(stages[r - 1]) if r else 0) for r in stages}


def staged_rank(t: KTerm, stages: dict[int, frozenset]) -> int | None:
    """First stage containing ``t``."""
    for r in sorted(stages):
        if t in stages[r]:
            return r
    return None


def in_alphabet(t: KTerm, names: Iterable[Name]) -> bool:
    """Whether some alpha-variant of ``t`` uses only ``names``."""
    names = frozenset(names)
    if isinstance(t, Base):
        return True
    box = t.box
    if isinstance(t, Fill):
        return box.names <= names and all(in_alphabet(v, names) for _, v in box.faces)
    spare = sorted(names - t.support)
    if not spare:
        return False
    c = spare[0]
    K = terminal_k()
    if c != box.open:
        box = box_act(Perm.swap(box.open, c), box, K, TERMINAL)
    return box.names <= names and all(in_alphabet(v, names) for _, v in box.faces)


__all__ = [
    "MAX_ALPHABET", "MAX_RANK", "MAX_TERMS", "ResourceLimit", "alphabet", "brute_force_counts",
    "brute_force_stages", "count_terms", "enumerate_terms", "in_alphabet", "recursive_rank",
    "staged_rank", "terminal_k",
]
