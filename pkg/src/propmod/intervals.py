"""Defining intervals of proportionally modular numerical semigroups.

A numerical semigroup is proportionally modular when it equals the set of
naturals covered by the positive integer dilations of a bounded interval of
rationals, equivalently when it is the solution set of ax mod b <= cx. This
module computes all inclusion-minimal closed defining intervals, the unique
maximal open interval around each, and the conversions between intervals and
such inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .numsem import NumericalSemigroup, from_interval, special_gaps


@dataclass(frozen=True)
class RationalInterval:
    """Interval of rationals; hi = None encodes an interval unbounded above.

    Lower endpoints below 1 never occur for defining intervals: a closed
    endpoint must exceed 1, an open one may equal 1 (the dilations of ]1,oo[
    cover every integer above 1).
    """

    lo: Fraction
    hi: Fraction | None = None
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is None:
            object.__setattr__(self, "hi_closed", False)
        else:
            object.__setattr__(self, "hi", Fraction(self.hi))
            if not self.lo < self.hi:
                raise ValueError("need lo < hi")
        if self.lo_closed:
            if self.lo <= 1:
                raise ValueError("closed lower endpoint must exceed 1")
        elif self.lo < 1:
            raise ValueError("lower endpoint must be at least 1")

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if not (self.lo < x or (self.lo_closed and x == self.lo)):
            return False
        if self.hi is None:
            return True
        return x < self.hi or (self.hi_closed and x == self.hi)

    def contains_interval(self, other: "RationalInterval") -> bool:
        if other.lo < self.lo or (
            other.lo == self.lo and other.lo_closed and not self.lo_closed
        ):
            return False
        if self.hi is None:
            return True
        if other.hi is None:
            return False
        return other.hi < self.hi or (
            other.hi == self.hi and not (other.hi_closed and not self.hi_closed)
        )

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "]"
        right = "]" if self.hi_closed else "["
        return f"{left}{self.lo},{self.hi if self.hi is not None else 'oo'}{right}"


def phi(I: RationalInterval) -> int:
    """Least i with the dilations iI and (i+1)I overlapping from i on.

    ceil(lo / (hi - lo)) for bounded I; 1 for an interval unbounded above,
    where the dilations by 1, 2, ... already overlap pairwise.
    """
    if I.hi is None:
        return 1
    return ceil(I.lo / (I.hi - I.lo))


def is_halfline_interval(I: RationalInterval) -> bool:
    """True when enlarging hi (even to infinity) defines the same semigroup.

    Equivalent to every gap of the defined semigroup lying below lo: then
    each x >= lo is already reached and a wider interval adds nothing.
    """
    return all(g < I.lo for g in from_interval(I).gaps)


@dataclass(frozen=True)
class IntervalPair:
    """A minimal closed defining interval with its maximal open enlargement.

    `halfline` records that the closed interval is a half-line representative:
    the maximal interval is then unbounded above and the stored finite hi is
    just the smallest convenient right endpoint.
    """

    minimal: RationalInterval
    maximal: RationalInterval
    halfline: bool = field(default=False)

    def __post_init__(self):
        if not (self.minimal.lo_closed and self.minimal.hi_closed):
            raise ValueError("minimal interval must be closed and bounded")
        if self.maximal.lo_closed or self.maximal.hi_closed:
            raise ValueError("maximal interval must be open")
        if not self.maximal.contains_interval(self.minimal):
            raise ValueError("minimal interval must sit inside the maximal one")
        if self.halfline != (self.maximal.hi is None):
            raise ValueError("halfline flag disagrees with the maximal interval")
        if from_interval(self.minimal) != from_interval(self.maximal):
            raise ValueError("the two intervals define different semigroups")


def _fraction_entries(S: NumericalSemigroup):
    """All fractions a/k with a a minimal generator or special gap, 0 < k < a.

    Sorted by fraction, ties by numerator. Each entry is (fraction, numerator,
    generator?) with the flag marking numerators that are generators.
    """
    lam = set(S.generators)
    eh = special_gaps(S) - {1}
    entries = []
    for a in lam | eh:
        is_gen = a in lam
        for k in range(1, a):
            entries.append((Fraction(a, k), a, is_gen))
    entries.sort(key=lambda e: (e[0], e[1]))
    return entries, lam


def _candidate_runs(S: NumericalSemigroup):
    """Yield (lo, hi) for each shortest admissible run of fraction entries.

    A run is a block of consecutive entries, aligned with the equal-fraction
    clusters, whose numerators are exactly the minimal generators: every
    generator appears and no special gap does. The interval spanned by such
    a run defines S; longer runs from the same start only widen it, so per
    start the shortest suffices.
    """
    entries, lam = _fraction_entries(S)
    n = len(entries)
    for h in range(n):
        if h > 0 and entries[h][0] == entries[h - 1][0]:
            continue  # runs start on a strict fraction increase
        need = set(lam)
        j = h
        while j < n:
            frac, a, is_gen = entries[j]
            if not is_gen:
                break  # a special gap kills every run through here
            need.discard(a)
            if not need and (j + 1 == n or entries[j + 1][0] != frac):
                yield entries[h][0], frac
                break
            j += 1


def minimal_intervals(S: NumericalSemigroup) -> list[IntervalPair]:
    """All inclusion-minimal closed intervals defining S, with maximal pairs.

    Empty exactly when S is not proportionally modular. Sorted by (lo, hi).
    Raises for S = N, which every interval fails to define.
    """
    if not S.gaps:
        raise ValueError("the full set of naturals has no defining interval")
    runs = sorted(set(_candidate_runs(S)))
    keep = [
        (lo, hi)
        for lo, hi in runs
        if not any(
            (lo2, hi2) != (lo, hi) and lo2 >= lo and hi2 <= hi for lo2, hi2 in runs
        )
    ]
    pairs = []
    for lo, hi in keep:
        closed = RationalInterval(lo, hi)
        opened = maximal_open_interval(closed, S)
        pairs.append(IntervalPair(closed, opened, opened.hi is None))
    return pairs


def is_proportionally_modular(S: NumericalSemigroup) -> bool:
    """Whether some closed bounded interval defines S.  N itself counts."""
    if not S.gaps:
        return True
    return next(_candidate_runs(S), None) is not None


def maximal_open_interval(
    I: RationalInterval, S: NumericalSemigroup
) -> RationalInterval:
    """Widest open interval defining the same semigroup as the closed I.

    The endpoints are extremal gap fractions: p = max s/i over gaps s with
    (i-1)*hi < s < i*lo, q = min s/i over gaps s with i*hi < s < (i+1)*lo,
    for 1 <= i <= phi(I); past phi(I) those slots contain no integers. When
    no gap bounds the right side, the interval is unbounded above.
    """
    if not (I.lo_closed and I.hi_closed):
        raise ValueError("expected a closed bounded interval")
    if from_interval(I) != S:
        raise ValueError("interval does not define this semigroup")
    p_hat = None
    q_hat = None
    for i in range(1, phi(I) + 1):
        for s in S.gaps:
            if (i - 1) * I.hi < s < i * I.lo:
                v = Fraction(s, i)
                if p_hat is None or v > p_hat:
                    p_hat = v
            if i * I.hi < s < (i + 1) * I.lo:
                v = Fraction(s, i)
                if q_hat is None or v < q_hat:
                    q_hat = v
    # 1 is a gap below lo, so the left endpoint always exists
    return RationalInterval(p_hat, q_hat, lo_closed=False, hi_closed=False)


def inequality_to_interval(a: int, b: int, c: int) -> RationalInterval:
    """Closed interval whose dilations solve ax mod b <= cx; needs 0<c<a<b."""
    if not 0 < c < a < b:
        raise ValueError("need 0 < c < a < b")
    return RationalInterval(Fraction(b, a), Fraction(b, a - c))


def interval_to_inequality(I: RationalInterval) -> tuple[int, int, int]:
    """Inequality ax mod b <= cx solved exactly by the dilations of closed I.

    With lo = b1/a1 and hi = b2/a2 in lowest terms the coefficients are
    (a1*b2, b1*b2, a1*b2 - a2*b1).
    """
    if I.hi is None:
        raise ValueError("half-line: choose a finite representative first")
    if not (I.lo_closed and I.hi_closed):
        raise ValueError("closed intervals only")
    b1, a1 = I.lo.numerator, I.lo.denominator
    b2, a2 = I.hi.numerator, I.hi.denominator
    return a1 * b2, b1 * b2, a1 * b2 - a2 * b1
