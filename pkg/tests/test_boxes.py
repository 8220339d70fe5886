import random

import pytest

from kanforge.boxes import (DOWN, UP, AdjacencyViolation, BoxError, FreshnessViolation, NotOverBase, OpenBox,
                            box_from_json, box_of_point, box_to_json, check_uniformity, face_indices,
                            is_filler, make_open_box, random_box)
from kanforge.catalog import (box_inclusion, cube_to_terminal, discrete_fibration, formal_fibration,
                              lopsided_fibration, produced_fibrations, unit_morphism)
from kanforge.cubes import cube_object, make_point
from kanforge.kterms import free
from kanforge.names import Name
from kanforge.zsub import STAR, identity

a0, a1, a2 = Name(0), Name(1), Name(2)


def test_face_indices_skip_the_missing_face():
    assert face_indices(UP, [a0, a1], a0) == [(a0, 0), (a1, 0), (a1, 1)]
    assert face_indices(DOWN, [a0], a0) == [(a0, 1)]


def test_open_box_index_set_enforced():
    with pytest.raises(BoxError):
        OpenBox(UP, [a0], a0, {(a0, 1): STAR}, STAR)
    with pytest.raises(BoxError):
        OpenBox(UP, [a0], a1, {}, STAR)


def test_validation_errors():
    K = free(unit_morphism()).object
    u = K.make_fill(UP, [a0], a0, {(a0, 0): K.base(STAR)}, STAR)
    with pytest.raises(FreshnessViolation):
        make_open_box(DOWN, [a0], a0, {(a0, 1): u}, STAR, K.rho)
    d = K.make_fill(DOWN, [a0], a0, {(a0, 1): K.base(STAR)}, STAR)
    faces = {(a0, 0): K.base(STAR), (a1, 0): d, (a1, 1): K.base(STAR)}
    with pytest.raises(AdjacencyViolation):
        make_open_box(UP, [a0, a1], a0, faces, STAR, K.rho)
    C = cube_object([a0])
    f = identity(C)
    with pytest.raises(NotOverBase):
        make_open_box(UP, [a1], a1, {(a1, 0): make_point({a0: 0})}, make_point({a0: 1}), f)


def test_box_of_point_is_valid_and_filled_by_the_point():
    C = cube_object([a0, a1])
    x = make_point({a0: a1, a1: a2})
    f = identity(C)
    box = make_open_box(UP, [a1, a2], a1, box_of_point(f, x, UP, [a1, a2], a1).faces, x, f)
    assert is_filler(x, box, f)


def test_box_json_roundtrip():
    f = cube_to_terminal(2)
    K = free(f).object
    rng = random.Random(3)
    for _ in range(20):
        box = random_box(K.rho, rng, [a0, a1, a2], 2)
        j = box_to_json(box, K.to_json, lambda y: f.target.to_json(y))
        assert box_from_json(j, K.from_json, f.target.from_json) == box


@pytest.mark.parametrize("fs", produced_fibrations(), ids=lambda fs: fs.label)
def test_produced_fibrations_are_uniform(fs):
    assert check_uniformity(fs, 150, 5).clean


def test_discrete_fibration_fill():
    fs = discrete_fibration()
    box = OpenBox(UP, [a0], a0, {(a0, 0): "q"}, STAR)
    assert fs.fill(box) == "q"


def test_lopsided_control_is_caught():
    rep = check_uniformity(lopsided_fibration(box_inclusion()), 200, 3)
    assert not rep.clean
    assert set(rep.failed) <= {"up-perm-equivariant", "down-perm-equivariant"}


def test_formal_filler_fills():
    fs = formal_fibration(unit_morphism())
    K = free(unit_morphism()).object
    box = OpenBox(DOWN, [a0], a0, {(a0, 1): K.base(STAR)}, STAR)
    assert is_filler(fs.fill(box), box, fs.morphism)
