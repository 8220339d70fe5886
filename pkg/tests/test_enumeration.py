import pytest

from kanforge.enumeration import (ResourceLimit, alphabet, brute_force_counts, brute_force_stages, count_terms,
                                  enumerate_terms, in_alphabet, recursive_rank, staged_rank)
from kanforge.laws import check_enumeration


def test_rank_zero_is_the_single_base_term():
    assert count_terms(0, 3) == {0: 1}
    assert brute_force_counts(0, 3) == {0: 1}


def test_rank_one_over_one_name():
    # up and down fillers of the ({a0},a0) box and their two compositions
    assert count_terms(1, 1) == {0: 1, 1: 4}
    assert brute_force_counts(1, 1) == {0: 1, 1: 4}


@pytest.mark.parametrize("rank_max,size", [(1, 2), (1, 3), (2, 1), (2, 2)])
def test_enumerators_agree(rank_max, size):
    assert count_terms(rank_max, size) == brute_force_counts(rank_max, size)


def test_rank_matches_stage():
    layers = enumerate_terms(2, 2)
    stages = brute_force_stages(2, 2)
    for r, ts in layers.items():
        for t in ts:
            assert t.rank == recursive_rank(t) == staged_rank(t, stages) == r


def test_enumerated_terms_use_the_alphabet():
    for ts in enumerate_terms(2, 2).values():
        for t in ts:
            assert in_alphabet(t, alphabet(2))


def test_alphabet_criterion_on_compositions():
    layers = enumerate_terms(1, 2)
    plus_free = [t for t in layers[1] if t.tag in ("plus", "minus") and t.support]
    # a composition with a free name needs a second name for its binder
    assert plus_free and not any(in_alphabet(t, alphabet(1)) for t in plus_free)


def test_enumeration_is_deterministic():
    assert enumerate_terms(2, 2) == enumerate_terms(2, 2)


def test_resource_guards():
    with pytest.raises(ResourceLimit):
        count_terms(4, 1)
    with pytest.raises(ResourceLimit):
        count_terms(1, 5)
    with pytest.raises(ResourceLimit):
        count_terms(3, 3, limit=1000)
    with pytest.raises(ResourceLimit):
        brute_force_stages(2, 3)


def test_decidable_image_agrees_with_enumeration():
    assert check_enumeration(2, 2).clean
