import pytest

from kanforge import mutants
from kanforge.boxes import check_uniformity
from kanforge.catalog import box_inclusion, lopsided_fibration
from kanforge.laws import SuiteConfig, run_suite

CFG = SuiteConfig(seed=7, iters=60)


def test_unknown_mutant():
    with pytest.raises(ValueError):
        with mutants.enabled("nope"):
            pass


def test_mutants_are_scoped():
    with mutants.enabled("plus-guard"):
        assert mutants.active("plus-guard")
    assert not mutants.active("plus-guard")


@pytest.mark.parametrize("mutant,suite", [
    ("plus-guard", "zsub"),
    ("plus-guard", "monad"),
    ("box-freshness", "zsub"),
    ("uniformity-branch", "bridge"),
])
def test_mutant_breaks_suite(mutant, suite):
    assert run_suite(suite, CFG).clean
    with mutants.enabled(mutant):
        assert not run_suite(suite, CFG).clean


def test_uniformity_branch_hides_the_lopsided_filler():
    fs = lopsided_fibration(box_inclusion())
    assert not check_uniformity(fs, 100, 1).clean
    with mutants.enabled("uniformity-branch"):
        assert check_uniformity(fs, 100, 1).clean
