import random

import pytest

from kanforge.cubes import cube_object, make_point
from kanforge.names import Name, Perm
from kanforge.zsub import (STAR, TERMINAL, Discrete, MembershipError, SeparatedProduct, SeparationError,
                           ZMorphism, check_morphism, check_zsub_axioms, identity, to_terminal)

a0, a1, a2 = Name(0), Name(1), Name(2)


def test_terminal_axioms():
    assert check_zsub_axioms(TERMINAL, 200, 1).clean


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cube_axioms(k):
    C = cube_object(Name(j) for j in range(k))
    assert check_zsub_axioms(C, 300, k).clean


def test_cube_points_substitute():
    C = cube_object([a0, a1])
    pt = make_point({a0: a2, a1: 1})
    assert C.subst(pt, a2, 0) == make_point({a0: 0, a1: 1})
    assert C.support(pt) == {a2}
    assert C.act(Perm.swap(a2, a0), pt) == make_point({a0: a0, a1: 1})


def test_cube_rejects_repeated_names():
    with pytest.raises(MembershipError):
        make_point({a0: a2, a1: a2})


def test_separated_product():
    S = SeparatedProduct(cube_object([a0]), cube_object([a1]))
    assert check_zsub_axioms(S, 200, 2).clean
    with pytest.raises(SeparationError):
        S.pair(make_point({a0: a2}), make_point({a1: a2}))


def test_discrete():
    D = Discrete("pq")
    assert check_zsub_axioms(D, 50, 0).clean
    assert D.subst("p", a0, 1) == "p"


def test_morphism_checks():
    C = cube_object([a0, a1])
    assert check_morphism(to_terminal(C), 100).clean
    assert check_morphism(identity(C), 100).clean
    # forgetting a coordinate value is not equivariant for a constant map to a name
    bad = ZMorphism(C, cube_object([a0]), lambda pt: make_point({a0: a0}), "const")
    assert not check_morphism(bad, 100).clean


def test_terminal_json():
    assert TERMINAL.from_json(TERMINAL.to_json(STAR)) is STAR
    with pytest.raises(MembershipError):
        TERMINAL.from_json(None)


def test_check_is_seeded():
    C = cube_object([a0, a1])
    r1 = check_zsub_axioms(C, 50, 4)
    r2 = check_zsub_axioms(C, 50, 4)
    assert r1.as_dict() == r2.as_dict()
    assert random.Random(4).random() == random.Random(4).random()
