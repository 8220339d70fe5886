"""Switchable source mutations used to show the law suites are not vacuous.

Each mutant names one deleted check or branch in the library.  They are off
unless enabled with :func:`enabled` (tests) or ``--mutant`` (CLI).
"""

from __future__ import annotations

from contextlib import contextmanager

KNOWN = {
    "plus-guard": "Plus/Minus substitution skips renaming the bound name away from the substituted name",
    "box-freshness": "open-box validation skips the face freshness check",
    "uniformity-branch": "uniformity checking skips the permutation branch",
}

_active: set[str] = set()


def active(name: str) -> bool:
    return name in _active


@contextmanager
def enabled(*names: str):
    unknown = set(names) - set(KNOWN)
    if unknown:
        raise ValueError(f"unknown mutant(s): {sorted(unknown)}")
    before = set(_active)
    _active.update(names)
    try:
        yield
    finally:
        _active.clear()
        _active.update(before)
