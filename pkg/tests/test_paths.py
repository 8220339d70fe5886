import random

import pytest

from kanforge.boxes import check_uniformity
from kanforge.catalog import box_inclusion, cube_to_terminal, formal_fibration, twisted_fibration
from kanforge.kterms import Comp, free, sigma
from kanforge.names import Name
from kanforge.paths import (NotNormalForm, abstraction_to_normal_form, bind, check_path_object,
                            check_pullback_stability, decidable_image, direction_of, is_normal,
                            is_prenormal, path_fibration, path_fill, path_object, reflexivity_coalgebra,
                            standard_squares, unbind)
from kanforge.zsub import STAR, check_zsub_axioms

a0, a1, a2 = Name(0), Name(1), Name(2)
FIBS = [formal_fibration(cube_to_terminal(2)), formal_fibration(box_inclusion()),
        twisted_fibration(box_inclusion())]


@pytest.mark.parametrize("fs", FIBS, ids=lambda fs: fs.label)
def test_path_object_laws(fs):
    assert check_path_object(path_object(fs), 60, 1, fill_iters=30).clean


def test_path_object_is_a_zsub():
    P = path_object(FIBS[1])
    assert check_zsub_axioms(P, 150, 2).clean


def test_reflexivity():
    P = path_object(FIBS[0])
    r, c = reflexivity_coalgebra(P)
    x = P.X.base(((a0, a1), (a1, 0)))
    assert r(x) == P.KD.base(x) and is_normal(P, r(x))
    assert c(r(x)) == free(P.r).object.lam(x)


def test_abstraction_gives_a_plus_with_the_right_ends():
    P = path_object(FIBS[0])
    X = P.X
    x = X.base(((a0, a1), (a1, 0)))
    w = abstraction_to_normal_form(P, a1, x)
    assert isinstance(w, Comp) and direction_of(w) == w.bound
    assert P.KD.rho(w) == (X.subst(x, a1, 0), X.subst(x, a1, 1))
    # a name that does not occur gives the constant path
    assert abstraction_to_normal_form(P, a2, x) == P.r(x)


def test_bind_unbind():
    P = path_object(FIBS[1])
    rng = random.Random(4)
    for _ in range(50):
        w = P.gen(rng, [a0, a1, a2], 2)
        z = unbind(P, w, Name(7))
        assert is_prenormal(P, z, Name(7))
        assert bind(P, z, Name(7)) == w


def test_unbind_rejects_non_normal_terms():
    P = path_object(FIBS[0])
    x = P.X.base(((a0, a1), (a1, 0)))
    w = abstraction_to_normal_form(P, a1, x)
    with pytest.raises(NotNormalForm):
        unbind(P, P.KD.fill(w.box), Name(9))


def test_normal_form_json_carries_direction():
    P = path_object(FIBS[0])
    x = P.X.base(((a0, a1), (a1, 0)))
    w = abstraction_to_normal_form(P, a1, x)
    j = P.to_json(w)
    assert j["direction"] == str(w.bound)
    assert P.from_json(j) == w


def test_path_fill_fills():
    P = path_object(FIBS[2])
    fib = path_fibration(P)
    rng = random.Random(8)
    for n in range(30):
        box = fib.sample_box(rng, [a0, a1, a2], 2, kind=n % 2)
        y = path_fill(P, box)
        assert P.contains(y)


def test_path_fibration_uniform():
    assert check_uniformity(path_fibration(path_object(FIBS[1])), 60, 3).clean


def test_pullback_squares():
    P = path_object(FIBS[1])
    for sq, sample in standard_squares(P):
        assert check_pullback_stability(sq, sample, 40, 1).clean, sq.label


def test_decidable_image_small_cases():
    f = cube_to_terminal(2)
    ff = free(f)
    K = ff.object
    assert decidable_image(sigma(f), ff.lam(((a0, a1), (a1, 0))))
    up = K.make_fill(1, [a2], a2, {(a2, 0): K.base(((a0, 0), (a1, 0)))}, STAR)
    assert not decidable_image(sigma(f), K.subst(up, a2, 1))
