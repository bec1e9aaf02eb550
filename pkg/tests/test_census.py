"""Census counts at desk scale.

Expected rows: totals are the standard numerical-semigroup counting sequence
1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, ...; the proportionally
modular column was cross-checked by running the interval test over an
independent brute-force enumeration of gap sets for genus <= 6.
"""

import pytest

from propmod.census import CensusRow, census
from propmod.intervals import minimal_intervals
from propmod.numsem import from_gaps, from_interval, minimal_generators

TOTALS = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592]
PROPMOD = [1, 1, 2, 4, 6, 9, 15, 18, 22, 32, 36, 42, 57]


def test_rows_to_genus_twelve():
    rows = census(12)
    assert [r.total for r in rows] == TOTALS
    assert [r.propmod for r in rows] == PROPMOD
    assert [r.genus for r in rows] == list(range(13))


def test_root_row_only():
    assert census(0) == [CensusRow(0, 1, 1)]


def test_genus_cap():
    with pytest.raises(ValueError):
        census(-1)
    with pytest.raises(ValueError):
        census(26)
    with pytest.raises(ValueError):
        census(5, genus_cap=4)
    assert census(4, genus_cap=4)[-1] == CensusRow(4, 7, 6)


def test_row_validation():
    with pytest.raises(ValueError):
        CensusRow(3, 2, 5)


def _tree(max_genus):
    stack = [frozenset()]
    while stack:
        gaps = stack.pop()
        yield gaps
        if len(gaps) == max_genus:
            continue
        frobenius = max(gaps, default=0)
        for gen in minimal_generators(gaps):
            if gen > frobenius:
                stack.append(gaps | {gen})


def test_propmod_semigroups_regenerate_from_interval():
    # whatever the census tags positive must actually come back from one of
    # its defining intervals
    count = 0
    for gaps in _tree(6):
        if not gaps:
            continue
        S = from_gaps(gaps)
        pairs = minimal_intervals(S)
        if not pairs:
            continue
        count += 1
        for pair in pairs:
            assert from_interval(pair.minimal).gaps == S.gaps
    assert count == sum(PROPMOD[1:7])
