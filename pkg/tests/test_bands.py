"""Band-geometry forms against fully multiplied-out oracles."""

from fractions import Fraction
from itertools import product
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propmod.bands import (
    ExtendedSystem,
    IntervalSystem,
    h1_sign,
    h2_sign,
    kappa,
    phi_system,
    region_points,
    tau1_sign,
    tau2_sign,
    theta,
)
from propmod.intervals import RationalInterval

TWO_THREE = IntervalSystem((RationalInterval(2, 3),))
PLANAR_2D = IntervalSystem(
    (RationalInterval(10, Fraction(27, 2)), RationalInterval(Fraction(15, 2), 12))
)


def closed(lo, hi):
    return RationalInterval(Fraction(lo), Fraction(hi))


def rationals(min_value, max_value):
    return st.builds(
        Fraction,
        st.integers(min_value=int(min_value * 12), max_value=int(max_value * 12)),
        st.just(12),
    )


@st.composite
def systems(draw, max_t=3):
    t = draw(st.integers(min_value=1, max_value=max_t))
    ivs = []
    for _ in range(t):
        lo = draw(rationals(Fraction(13, 12), 8))
        width = draw(rationals(Fraction(1, 12), 6))
        ivs.append(RationalInterval(lo, lo + width))
    return IntervalSystem(tuple(ivs))


@st.composite
def system_points(draw):
    L = draw(systems())
    x = tuple(draw(st.integers(min_value=0, max_value=30)) for _ in range(L.t))
    i = draw(st.integers(min_value=0, max_value=12))
    return L, i, x


def test_h_sign_examples():
    assert h1_sign(TWO_THREE, 1, (2,)) == 0
    assert h1_sign(PLANAR_2D, 1, (10, 0)) == 0
    assert h2_sign(PLANAR_2D, 1, (10, 0)) == 1
    assert h1_sign(PLANAR_2D, 3, (23, 4)) == 1


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        h1_sign(TWO_THREE, 1, (1, 2))
    with pytest.raises(ValueError):
        theta(PLANAR_2D, (1,))


def test_phi_system():
    assert phi_system(TWO_THREE) == 2
    assert phi_system(PLANAR_2D) == 3
    assert phi_system(IntervalSystem((RationalInterval(3, None),))) == 1


def test_kappa_examples():
    assert kappa(PLANAR_2D, (0, 0)) == 0
    hat = IntervalSystem(
        (
            RationalInterval(Fraction(29, 3), 14, False, False),
            RationalInterval(7, 13, False, False),
        )
    )
    # 23*3/29 + 4/7 = 599/203, strictly between 2 and 3
    assert kappa(hat, (23, 4)) == 2
    # boundary: 6/2 = 3 exactly, and the comparison is strict
    assert kappa(TWO_THREE, (6,)) == 2


def test_theta_examples():
    assert theta(PLANAR_2D, (0, 0)) == 1
    assert theta(PLANAR_2D, (23, 4)) == 0
    assert theta(PLANAR_2D, (10, 0)) == 1


def test_theta_halfline_system():
    L = IntervalSystem((RationalInterval(3, None, lo_closed=False),))
    # dilations of ]3,oo[ cover 4,5,... but i=0 reaches nothing but 0
    assert theta(L, (0,)) == 1
    assert theta(L, (2,)) == 0
    assert theta(L, (4,)) == 1


def test_region_points_examples():
    assert region_points(TWO_THREE, "H", 1) == {(1,)}
    assert region_points(TWO_THREE, "S", 1) == {(2,), (3,)}
    s1 = region_points(PLANAR_2D, "S", 1)
    assert (10, 0) in s1 and (0, 8) in s1 and (9, 0) not in s1


def test_region_points_validation():
    with pytest.raises(ValueError):
        region_points(TWO_THREE, "S", 0)
    with pytest.raises(ValueError):
        region_points(TWO_THREE, "S", 3)  # phi = 2
    with pytest.raises(ValueError):
        region_points(TWO_THREE, "T", 1)
    with pytest.raises(ValueError):
        region_points(TWO_THREE, "X")
    with pytest.raises(ValueError):
        region_points(IntervalSystem((RationalInterval(3, None),)), "S", 1)


def test_extended_system_validation():
    base = IntervalSystem((RationalInterval(10, Fraction(55, 4)),))
    with pytest.raises(ValueError):
        ExtendedSystem(base, (Fraction(-1, 2),), (Fraction(1, 2),))
    with pytest.raises(ValueError):
        ExtendedSystem(base, (Fraction(1, 2),), ())


def test_tau_examples():
    # head interval [10, 55/4]; one tail coordinate with slopes from the
    # edge directions mu = (9/17, 8/17), nu = (6/17, 11/17)
    base = IntervalSystem((RationalInterval(10, Fraction(55, 4)),))
    w = Fraction(9, 17) / (Fraction(55, 4) * Fraction(8, 17))  # 9/110
    z = Fraction(6, 17) / (10 * Fraction(11, 17))  # 6/110
    assert (w, z) == (Fraction(9, 110), Fraction(6, 110))
    E = ExtendedSystem(base, (w,), (z,))
    assert tau1_sign(E, 0, (0, 0)) == 0
    assert tau2_sign(E, 0, (0, 0)) == 0
    assert tau2_sign(E, 1, (10, 0)) == 0
    # (3,1) violates 11x + 6y mod 110 <= 3x + 15y (39 > 24): it is a gap and
    # sits strictly between the hyperplanes tau1_0 and tau2_1
    assert tau1_sign(E, 0, (3, 1)) == -1
    assert tau2_sign(E, 1, (3, 1)) == 1


@given(system_points())
@settings(max_examples=200, deadline=None)
def test_h_signs_match_product_form(data):
    L, i, x = data
    p, q = L.p, L.q
    prod_p = 1
    for pj in p:
        prod_p *= pj
    full_h1 = prod_p * i
    for j, xj in enumerate(x):
        term = prod_p / p[j]
        full_h1 -= term * xj
    assert h1_sign(L, i, x) == (full_h1 > 0) - (full_h1 < 0)
    prod_q = 1
    for qj in q:
        prod_q *= qj
    full_h2 = prod_q * i
    for j, xj in enumerate(x):
        full_h2 -= (prod_q / q[j]) * xj
    assert h2_sign(L, i, x) == (full_h2 > 0) - (full_h2 < 0)


@given(
    system_points(),
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=5), st.integers(min_value=1, max_value=6)
        ),
        min_size=1,
        max_size=2,
    ),
    st.lists(st.integers(min_value=0, max_value=9), min_size=2, max_size=2),
)
@settings(max_examples=150, deadline=None)
def test_tau_signs_match_product_form(data, mu_nu_raw, tail_raw):
    L, i, head = data
    # normalized edge data: mu1 + mu2 = 1 with mu2 in (0,1]
    mus, nus = [], []
    for m1_raw, m2_raw in mu_nu_raw:
        tot = m1_raw + m2_raw
        mus.append((Fraction(m1_raw, tot), Fraction(m2_raw, tot)))
        nus.append((Fraction(m2_raw, tot), Fraction(m1_raw, tot) or Fraction(1)))
    k = len(mus)
    tail = tuple(tail_raw[:1] * k)[:k]
    w = tuple(m1 / (L.q[-1] * m2) for m1, m2 in mus)
    z = tuple(n1 / (L.p[-1] * n2) for n1, n2 in nus)
    E = ExtendedSystem(L, w, z)
    x = head + tail

    prod_q = 1
    for qj in L.q:
        prod_q *= qj
    for _, m2 in mus:
        prod_q *= m2
    inner1 = Fraction(i)
    for j, xj in enumerate(head):
        inner1 -= Fraction(xj) / L.q[j]
    for wj, xj in zip(w, tail):
        inner1 += wj * xj
    full1 = prod_q * inner1
    assert tau1_sign(E, i, x) == (full1 > 0) - (full1 < 0)

    prod_p = 1
    for pj in L.p:
        prod_p *= pj
    for _, n2 in nus:
        prod_p *= n2
    inner2 = Fraction(i)
    for j, xj in enumerate(head):
        inner2 -= Fraction(xj) / L.p[j]
    for zj, xj in zip(z, tail):
        inner2 -= zj * xj
    full2 = prod_p * inner2
    assert tau2_sign(E, i, x) == (full2 > 0) - (full2 < 0)


@given(system_points())
@settings(max_examples=200, deadline=None)
def test_theta_consistent_with_h_forms(data):
    L, _, x = data
    k = kappa(L, x)
    if any(x):
        brute = any(
            h1_sign(L, i, x) <= 0 and h2_sign(L, i, x) >= 0
            for i in range(1, k + 2)
        )
    else:
        brute = True
    assert theta(L, x) == int(brute)


@given(system_points())
@settings(max_examples=200, deadline=None)
def test_kappa_is_largest_strict_index(data):
    L, _, x = data
    k = kappa(L, x)
    assert k >= 0
    if k > 0:
        assert h1_sign(L, k, x) == -1
    assert h1_sign(L, k + 1, x) >= 0


@given(systems(max_t=2))
@settings(max_examples=60, deadline=None)
def test_theta_zero_forces_point_below_phi(L):
    f = phi_system(L)
    bounds = [int(ceil((f + 2) * qj)) for qj in L.q]
    for x in product(*(range(b + 1) for b in bounds)):
        if theta(L, x) == 0:
            total = sum(Fraction(xj) / pj for xj, pj in zip(x, L.p))
            assert total < f


def _region_cover(L):
    f = phi_system(L)
    T = region_points(L, "T")
    H = [region_points(L, "H", i) for i in range(1, f + 1)]
    S = [region_points(L, "S", i) for i in range(1, f + 1)]
    return T, H, S


@pytest.mark.parametrize(
    "L",
    [
        TWO_THREE,
        PLANAR_2D,
        IntervalSystem((closed(Fraction(3, 2), 2),)),
        IntervalSystem((closed(2, 3), closed(Fraction(5, 2), 4), closed(3, 5))),
    ],
    ids=["one-simple", "planar-2d", "one-steep", "three"],
)
def test_region_cover_and_disjointness(L):
    T, H, S = _region_cover(L)
    union = {tuple(0 for _ in range(L.t))}
    for part in H + S:
        union |= part
    assert union == T
    # strips are pairwise disjoint and never meet a band
    for i in range(len(H)):
        for j in range(i + 1, len(H)):
            assert not (H[i] & H[j])
        for j in range(len(S)):
            assert not (H[i] & S[j])
    origin = tuple(0 for _ in range(L.t))
    for part in H + S:
        assert origin not in part


def test_bands_can_overlap():
    # consecutive bands share points once the band interval spans an integer
    # twice; the decomposition is a cover, not a partition
    assert (0, 24) in region_points(PLANAR_2D, "S", 2)
    assert (0, 24) in region_points(PLANAR_2D, "S", 3)
