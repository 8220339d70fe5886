import pytest

from kanforge.boxes import check_uniformity
from kanforge.bridge import (AlgebraLawError, AlgebraStructure, algebra_to_filling, canonical_algebra,
                             check_algebra, fibdefs_chain, filling_to_algebra, rank_switching_algebra,
                             roundtrip_check)
from kanforge.catalog import (cube_to_terminal, formal_fibration, identity_fibration, sample_morphisms,
                              twisted_fibration, unit_morphism)
from kanforge.cubes import cube_object
from kanforge.kterms import free
from kanforge.names import Name
from kanforge.zsub import ZMorphism

MORPHISMS = sample_morphisms()
ids = [f.label for f in MORPHISMS]


@pytest.mark.parametrize("f", MORPHISMS, ids=ids)
def test_canonical_algebra(f):
    assert check_algebra(canonical_algebra(f), 150, 1).clean


@pytest.mark.parametrize("f", MORPHISMS, ids=ids)
@pytest.mark.parametrize("make", [formal_fibration, twisted_fibration], ids=["formal", "twisted"])
def test_roundtrips(f, make):
    fs = make(f)
    rt = roundtrip_check(fs.morphism, fs=fs, alg=filling_to_algebra(fs), iters=120, seed=2)
    assert rt.report.clean and rt.monad


def test_formal_filler_gives_the_canonical_algebra():
    f = unit_morphism()
    fs = formal_fibration(f)
    alg = filling_to_algebra(fs)
    K = free(fs.morphism).object
    import random
    rng = random.Random(0)
    canon = canonical_algebra(f)
    for _ in range(100):
        t = K.gen(rng, [Name(0), Name(1), Name(2)], 2)
        assert alg.g(t) == canon.g(t)


def test_identity_fibration_roundtrip():
    fs = identity_fibration(cube_object([Name(0), Name(1)]))
    assert roundtrip_check(fs.morphism, fs=fs, iters=80).report.clean


def test_rank_switching_control_is_flagged():
    f = cube_to_terminal(2)
    low, high = formal_fibration(f), twisted_fibration(f)
    rt = roundtrip_check(low.morphism, alg=rank_switching_algebra(low.morphism, low, high), iters=200, seed=3)
    assert rt.monad is False
    assert rt.report.clean  # differences are notes, not failures
    assert any("multiplication" in n for n in rt.notes)


def test_pointed_algebra_laws_are_enforced():
    f = unit_morphism()
    ff = free(f)
    bad = AlgebraStructure(ff.rho, ZMorphism(ff.object, ff.object, lambda t: ff.object.lam(t), "wrong"), "wrong")
    with pytest.raises(AlgebraLawError):
        algebra_to_filling(bad)


def test_algebra_filling_is_uniform():
    fs = algebra_to_filling(canonical_algebra(cube_to_terminal(2)))
    assert check_uniformity(fs, 120, 1).clean


def test_fibdefs_chain():
    assert fibdefs_chain(twisted_fibration(unit_morphism()), 60, 4).clean
