import pytest

from kanforge.awfs import (check_comonad, check_factorisation, check_functoriality, check_monad,
                           check_naturality, sample_squares)
from kanforge.catalog import sample_morphisms, unit_morphism
from kanforge.kterms import free, pi, sigma
from kanforge.names import Name
from kanforge.zsub import STAR, check_morphism

MORPHISMS = sample_morphisms()
ids = [f.label for f in MORPHISMS]


@pytest.mark.parametrize("f", MORPHISMS, ids=ids)
def test_comonad_laws(f):
    assert check_comonad(f, 150, 1).clean


@pytest.mark.parametrize("f", MORPHISMS, ids=ids)
def test_monad_laws(f):
    assert check_monad(f, 150, 1).clean


@pytest.mark.parametrize("f", MORPHISMS, ids=ids)
def test_factorisation_and_functoriality(f):
    assert check_factorisation(f, 150, 2).clean
    assert check_functoriality(f, 150, 2).clean


@pytest.mark.parametrize("sq", sample_squares(), ids=lambda s: s.label)
def test_naturality(sq):
    assert check_naturality(sq, 150, 3).clean


@pytest.mark.parametrize("f", MORPHISMS, ids=ids)
def test_structure_maps_are_morphisms(f):
    ff = free(f)
    for h in (ff.lam, ff.rho, sigma(f), pi(f)):
        assert check_morphism(h, 100, 4).clean, h.label


def test_sigma_and_pi_on_small_terms():
    f = unit_morphism()
    ff = free(f)
    K = ff.object
    a0 = Name(0)
    B = K.base(STAR)
    u = K.make_fill(1, [a0], a0, {(a0, 0): B}, STAR)
    su = sigma(f)(u)
    # the base of sigma(u) is the term u itself
    assert su.box.base == u
    assert free(ff.lam).rho(su) == u
    # pi flattens a base term of K rho
    assert pi(f)(free(ff.rho).lam(u)) == u
