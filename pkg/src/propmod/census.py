"""Genus-tree enumeration and the proportionally modular census.

Exploration follows the effective-generator recursion: the children of S are
the semigroups S minus one minimal generator exceeding the Frobenius number.
Every numerical semigroup shows up exactly once, at tree depth equal to its
genus, so per-depth counters give exact totals without bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intervals import minimal_intervals
from .numsem import from_gaps, minimal_generators

# node counts roughly triple per genus; past this the sequential recursion
# stops being a desk-scale tool
GENUS_CAP = 25


@dataclass(frozen=True)
class CensusRow:
    genus: int
    total: int
    propmod: int

    def __post_init__(self):
        if not 0 <= self.propmod <= self.total:
            raise ValueError("propmod count out of range")


def _is_propmod(gaps: frozenset) -> bool:
    if not gaps:
        return True  # all of N solves x mod 1 <= x
    return bool(minimal_intervals(from_gaps(gaps)))


def census(max_genus: int, genus_cap: int = GENUS_CAP) -> list[CensusRow]:
    """Exact per-genus counts for genus 0..max_genus."""
    if max_genus < 0:
        raise ValueError("max_genus must be nonnegative")
    if max_genus > genus_cap:
        raise ValueError(
            f"genus {max_genus} exceeds the cap of {genus_cap}; "
            "raise genus_cap explicitly if you really mean it"
        )
    totals = [0] * (max_genus + 1)
    props = [0] * (max_genus + 1)
    stack: list[frozenset] = [frozenset()]
    while stack:
        gaps = stack.pop()
        depth = len(gaps)
        totals[depth] += 1
        if _is_propmod(gaps):
            props[depth] += 1
        if depth == max_genus:
            continue
        frobenius = max(gaps, default=0)
        for gen in minimal_generators(gaps):
            if gen > frobenius:
                stack.append(gaps | {gen})
    return [CensusRow(g, totals[g], props[g]) for g in range(max_genus + 1)]
