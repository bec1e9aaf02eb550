"""Defining-interval computations against brute-force oracles.

The oracle for minimal intervals enumerates every closed interval whose
endpoints are fractions a/k (a a generator or special gap), keeps the ones
that regenerate the semigroup, and filters for inclusion-minimality. It
shares no run-scanning logic with the implementation.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propmod.intervals import (
    IntervalPair,
    RationalInterval,
    inequality_to_interval,
    interval_to_inequality,
    is_halfline_interval,
    is_proportionally_modular,
    maximal_open_interval,
    minimal_intervals,
    phi,
)
from propmod.numsem import from_generators, from_interval, special_gaps


def oracle_minimal_intervals(S):
    lam = set(S.generators)
    eh = special_gaps(S) - {1}
    fracs = sorted({Fraction(a, k) for a in (lam | eh) for k in range(1, a)})
    good = []
    for lo in fracs:
        if lo <= 1:
            continue
        for hi in fracs:
            if hi <= lo:
                continue
            if from_interval(RationalInterval(lo, hi)) == S:
                good.append((lo, hi))
    return sorted(
        iv
        for iv in good
        if not any(jv != iv and jv[0] >= iv[0] and jv[1] <= iv[1] for jv in good)
    )


def ineq_members(a, b, c, bound):
    return [x for x in range(bound + 1) if (a * x) % b <= c * x]


def interval_members(I, bound):
    S = from_interval(I)
    return [x for x in range(bound + 1) if x in S]


def semigroups_for_property_tests():
    gens_list = [
        [2, 3],
        [3, 4, 5],
        [3, 5, 7],
        [4, 6, 7, 9],
        [5, 7, 9],
        [10, 11, 12, 13, 27],
        [4, 9, 11],
        [6, 9, 20],
        [5, 6, 8, 9],
        [7, 8],
    ]
    return [from_generators(g) for g in gens_list]


def test_phi_values():
    assert phi(RationalInterval(2, 3)) == 2
    assert phi(RationalInterval(10, Fraction(27, 2))) == 3
    assert phi(RationalInterval(3, None)) == 1


def test_interval_validation():
    with pytest.raises(ValueError):
        RationalInterval(1, 2)  # closed at 1
    with pytest.raises(ValueError):
        RationalInterval(Fraction(1, 2), 2, lo_closed=False)
    with pytest.raises(ValueError):
        RationalInterval(3, 2)
    # open at 1 is fine, and an unbounded interval is never closed above
    I = RationalInterval(1, None, lo_closed=False)
    assert not I.hi_closed
    assert Fraction(3, 2) in I and 1 not in I


def test_interval_containment():
    big = RationalInterval(1, None, lo_closed=False)
    assert big.contains_interval(RationalInterval(Fraction(3, 2), 2))
    assert not RationalInterval(2, 3).contains_interval(big)
    open_i = RationalInterval(2, 3, lo_closed=False, hi_closed=False)
    assert not open_i.contains_interval(RationalInterval(2, 3))
    assert RationalInterval(2, 3).contains_interval(open_i)


def test_is_halfline():
    assert is_halfline_interval(RationalInterval(3, 5)) is True
    assert is_halfline_interval(RationalInterval(10, Fraction(27, 2))) is False
    # gaps of S([2,3]) = <2,3> are {1}, all below 2: enlarging hi changes nothing
    assert is_halfline_interval(RationalInterval(2, 3)) is True
    assert from_interval(RationalInterval(2, 3)) == from_interval(
        RationalInterval(2, 100)
    )


def test_minimal_intervals_two_three():
    pairs = minimal_intervals(from_generators([2, 3]))
    got = [(p.minimal.lo, p.minimal.hi) for p in pairs]
    assert got == [(Fraction(3, 2), Fraction(2)), (Fraction(2), Fraction(3))]
    assert all(p.halfline for p in pairs)
    assert all(p.maximal.lo == 1 and p.maximal.hi is None for p in pairs)


def test_minimal_intervals_ten_to_twentyseven():
    S = from_generators([10, 11, 12, 13, 27])
    pairs = minimal_intervals(S)
    got = [(p.minimal.lo, p.minimal.hi) for p in pairs]
    assert got == [
        (Fraction(27, 25), Fraction(10, 9)),
        (Fraction(10), Fraction(27, 2)),
    ]
    opened = [(p.maximal.lo, p.maximal.hi) for p in pairs]
    assert opened == [
        (Fraction(14, 13), Fraction(29, 26)),
        (Fraction(29, 3), Fraction(14)),
    ]
    assert not any(p.halfline for p in pairs)


def test_minimal_intervals_three_four_five():
    # four inclusion-minimal intervals; frozen from the enumeration oracle
    S = from_generators([3, 4, 5])
    got = [(p.minimal.lo, p.minimal.hi) for p in pairs_of(S)]
    expect = [
        (Fraction(5, 4), Fraction(3, 2)),
        (Fraction(4, 3), Fraction(5, 3)),
        (Fraction(5, 2), Fraction(4)),
        (Fraction(3), Fraction(5)),
    ]
    assert got == expect
    assert got == oracle_minimal_intervals(S)


def pairs_of(S):
    return minimal_intervals(S)


def test_minimal_intervals_rejects_naturals():
    with pytest.raises(ValueError):
        minimal_intervals(from_generators([1]))


def test_non_proportionally_modular():
    S = from_generators([4, 6, 7, 9])
    assert minimal_intervals(S) == []
    assert not is_proportionally_modular(S)
    assert oracle_minimal_intervals(S) == []


def test_is_proportionally_modular_naturals():
    assert is_proportionally_modular(from_generators([1]))


def test_minimal_intervals_match_oracle():
    for S in semigroups_for_property_tests():
        got = [(p.minimal.lo, p.minimal.hi) for p in minimal_intervals(S)]
        assert got == oracle_minimal_intervals(S), S


def test_interval_pairs_define_same_semigroup():
    for S in semigroups_for_property_tests():
        for p in minimal_intervals(S):
            assert from_interval(p.minimal) == S
            assert from_interval(p.maximal) == S
            assert p.halfline == is_halfline_interval(p.minimal)


def test_maximality_endpoints_witnessed_by_gaps():
    # each finite endpoint of the open interval is a gap fraction s/i: moving
    # the endpoint into the interval would admit gap s
    for S in semigroups_for_property_tests():
        for p in minimal_intervals(S):
            I = p.maximal
            f = phi(RationalInterval(I.lo, I.hi, False, False))
            wit_lo = any(
                Fraction(s, i) == I.lo for s in S.gaps for i in range(1, f + 2)
            )
            assert wit_lo, (S, I)
            if I.hi is not None:
                wit_hi = any(
                    Fraction(s, i) == I.hi for s in S.gaps for i in range(1, f + 2)
                )
                assert wit_hi, (S, I)


def test_minimality_shrinking_changes_semigroup():
    # raising lo or lowering hi to the adjacent generator/special-gap fraction
    # loses the semigroup
    for S in semigroups_for_property_tests():
        lam = set(S.generators)
        eh = special_gaps(S) - {1}
        fracs = sorted({Fraction(a, k) for a in (lam | eh) for k in range(1, a)})
        for p in minimal_intervals(S):
            lo, hi = p.minimal.lo, p.minimal.hi
            above = [f for f in fracs if f > lo]
            below = [f for f in fracs if f < hi]
            if above and above[0] < hi:
                assert from_interval(RationalInterval(above[0], hi)) != S
            if below and lo < below[-1] and below[-1] > 1:
                assert from_interval(RationalInterval(lo, below[-1])) != S


def test_maximal_open_interval_validation():
    S = from_generators([10, 11, 12, 13, 27])
    with pytest.raises(ValueError):
        maximal_open_interval(RationalInterval(2, 3), S)
    with pytest.raises(ValueError):
        maximal_open_interval(
            RationalInterval(10, Fraction(27, 2), lo_closed=False), S
        )


def test_interval_pair_validation():
    with pytest.raises(ValueError):
        IntervalPair(
            RationalInterval(2, 3),
            RationalInterval(1, None, lo_closed=False),
            halfline=False,  # flag contradicts unbounded maximal
        )
    with pytest.raises(ValueError):
        IntervalPair(
            RationalInterval(10, Fraction(27, 2)),
            RationalInterval(Fraction(14, 13), Fraction(29, 26), False, False),
            halfline=False,  # disjoint, not containing
        )


def test_inequality_to_interval_examples():
    assert inequality_to_interval(11, 110, 3) == RationalInterval(10, Fraction(55, 4))
    assert inequality_to_interval(2, 4, 1) == RationalInterval(2, 4)
    assert inequality_to_interval(3, 7, 1) == RationalInterval(
        Fraction(7, 3), Fraction(7, 2)
    )
    with pytest.raises(ValueError):
        inequality_to_interval(3, 2, 1)
    with pytest.raises(ValueError):
        inequality_to_interval(2, 4, 2)


def test_inequality_to_interval_membership_agreement():
    for a, b, c, bound in [(11, 110, 3, 200), (3, 7, 1, 50), (2, 4, 1, 30)]:
        I = inequality_to_interval(a, b, c)
        assert interval_members(I, bound) == ineq_members(a, b, c, bound)


def test_interval_to_inequality_examples():
    assert interval_to_inequality(RationalInterval(10, Fraction(27, 2))) == (
        27,
        270,
        7,
    )
    assert interval_to_inequality(RationalInterval(2, 3)) == (3, 6, 1)
    assert interval_to_inequality(RationalInterval(Fraction(3, 2), 2)) == (4, 6, 1)
    with pytest.raises(ValueError):
        interval_to_inequality(RationalInterval(2, None, lo_closed=False))
    with pytest.raises(ValueError):
        interval_to_inequality(RationalInterval(2, 3, hi_closed=False))


def test_interval_to_inequality_membership_agreement():
    for lo, hi in [(Fraction(10), Fraction(27, 2)), (Fraction(3, 2), 2), (2, 3)]:
        I = RationalInterval(lo, hi)
        a, b, c = interval_to_inequality(I)
        assert 0 < c < a < b
        assert ineq_members(a, b, c, 100) == interval_members(I, 100)


@given(
    a=st.integers(min_value=2, max_value=60),
    b=st.integers(min_value=3, max_value=200),
    c=st.integers(min_value=1, max_value=59),
)
@settings(max_examples=150, deadline=None)
def test_round_trip_inequality_interval(a, b, c):
    if not 0 < c < a < b:
        return
    I = inequality_to_interval(a, b, c)
    a2, b2, c2 = interval_to_inequality(I)
    bound = max(b, b2) + 10
    assert ineq_members(a, b, c, bound) == ineq_members(a2, b2, c2, bound)
