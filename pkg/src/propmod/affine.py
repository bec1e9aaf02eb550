"""Semigroups of N^n with finitely many gaps, and their modular inequalities.

Membership in the solution set of f(x) mod b <= g(x) is equivalent to lying
in one of the slabs ib <= f(x), (f-g)(x) <= ib, which gives both a direct
membership test and a band index for every member. When all g_i are positive
the complement is finite and can be enumerated exactly: every gap satisfies
g(x) < b. On top of that this module provides the coordinate projections,
prism regions and neighbor classifications used to set up witness searches,
and the two-dimensional triangle picture of the gap set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor, lcm

from .bands import IntervalSystem, LatticePoint, h1_sign, h2_sign, phi_system
from .numsem import NumericalSemigroup, from_gaps


@dataclass(frozen=True)
class AffineSemigroup:
    """Subsemigroup of N^n whose complement is the finite set `gaps`.

    The complement must be closed in the semigroup sense: removing the gaps
    may not destroy additivity, i.e. a gap can never be the sum of two
    members. `generators` is optional input data; nothing here relies on it
    being minimal.
    """

    dimension: int
    gaps: frozenset
    generators: frozenset | None = None

    def __post_init__(self):
        gaps = frozenset(tuple(int(c) for c in h) for h in self.gaps)
        object.__setattr__(self, "gaps", gaps)
        if self.generators is not None:
            gens = frozenset(tuple(int(c) for c in s) for s in self.generators)
            object.__setattr__(self, "generators", gens)
        n = self.dimension
        for h in gaps:
            if len(h) != n:
                raise ValueError(f"gap {h} does not have dimension {n}")
            if any(c < 0 for c in h):
                raise ValueError(f"gap {h} has negative coordinates")
            if not any(h):
                raise ValueError("the origin cannot be a gap")
        for h in gaps:
            for a in product(*(range(c + 1) for c in h)):
                rest = tuple(hc - ac for hc, ac in zip(h, a))
                if (
                    any(a)
                    and any(rest)
                    and a not in gaps
                    and rest not in gaps
                ):
                    raise ValueError(
                        f"not a semigroup: gap {h} = {a} + {rest}, both members"
                    )
        if self.generators is not None:
            for s in self.generators:
                if len(s) != n:
                    raise ValueError(f"generator {s} does not have dimension {n}")
                if s in gaps:
                    raise ValueError(f"generator {s} is listed as a gap")

    def contains(self, x) -> bool:
        x = tuple(x)
        if len(x) != self.dimension:
            raise ValueError(f"point {x} does not have dimension {self.dimension}")
        if any(c < 0 for c in x):
            raise ValueError("membership is defined for nonnegative points")
        return x not in self.gaps

    def __contains__(self, x) -> bool:
        return self.contains(x)


@dataclass(frozen=True)
class ModularInequality:
    """f(x) mod b <= g(x) over N^n; f nonnegative, b positive.

    With `reduced` the f_i are stored mod b, which leaves the solution set
    unchanged. Witness-derived inequalities keep their raw f (possibly >= b)
    so the reconstruction is inspectable.
    """

    f: tuple
    b: int
    g: tuple
    reduced: bool = False

    def __post_init__(self):
        b = int(self.b)
        if b <= 0:
            raise ValueError("modulus must be positive")
        f = tuple(int(v) for v in self.f)
        g = tuple(int(v) for v in self.g)
        if len(f) != len(g):
            raise ValueError("f and g must have the same length")
        if any(v < 0 for v in f):
            raise ValueError("f must be nonnegative")
        if self.reduced:
            f = tuple(v % b for v in f)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "b", b)

    @property
    def dimension(self) -> int:
        return len(self.f)

    def _require_dim(self, x) -> None:
        if len(x) != self.dimension:
            raise ValueError(
                f"point has dimension {len(x)}, inequality has {self.dimension}"
            )


def _dot(u, x):
    return sum(uc * xc for uc, xc in zip(u, x))


def ineq_membership(M: ModularInequality, x: LatticePoint) -> bool:
    """Whether f(x) mod b <= g(x)."""
    M._require_dim(x)
    return _dot(M.f, x) % M.b <= _dot(M.g, x)


def band_membership(M: ModularInequality, x: LatticePoint) -> int | None:
    """Band index i with f(x) >= ib and (f-g)(x) <= ib, or None.

    i = floor(f(x)/b) is the only candidate, so membership and band index
    come out of a single division.
    """
    M._require_dim(x)
    fx = _dot(M.f, x)
    i = fx // M.b
    return i if fx - M.b * i <= _dot(M.g, x) else None


def gaps_from_inequality(M: ModularInequality) -> AffineSemigroup:
    """Solution-set semigroup of M, with its finitely many gaps enumerated.

    Needs every g_i > 0: each gap satisfies g(x) < b, so the scan region
    {x >= 0 : g(x) < b} is a finite simplex containing all of them.
    """
    if any(v <= 0 for v in M.g):
        raise ValueError("some g_i <= 0: the complement may be infinite")
    n = M.dimension
    gaps = []

    def scan(prefix, budget):
        j = len(prefix)
        if j == n:
            x = tuple(prefix)
            if not ineq_membership(M, x):
                gaps.append(x)
            return
        step = M.g[j]
        c = 0
        while c * step <= budget:
            scan(prefix + [c], budget - c * step)
            c += 1

    scan([], M.b - 1)
    return AffineSemigroup(n, frozenset(gaps))


def axis_semigroup(S: AffineSemigroup, axis: int) -> NumericalSemigroup:
    """Numerical semigroup cut out on the given coordinate axis (0-based)."""
    if not 0 <= axis < S.dimension:
        raise ValueError(f"axis {axis} out of range")
    ax_gaps = [
        h[axis]
        for h in S.gaps
        if all(c == 0 for j, c in enumerate(h) if j != axis)
    ]
    return from_gaps(ax_gaps)


def project(x, coords) -> tuple:
    """Keep the listed coordinates (0-based), in the listed order."""
    return tuple(x[c] for c in coords)


def sigma_slice(A, coords) -> set:
    """Project the points whose non-listed coordinates all vanish."""
    coords = tuple(coords)
    keep = set(coords)
    out = set()
    for x in A:
        if all(c == 0 for j, c in enumerate(x) if j not in keep):
            out.add(project(x, coords))
    return out


def split_du(S: AffineSemigroup, t: int):
    """Split off the first t coordinates: the slice semigroup and a predicate.

    Requires the axis semigroups of coordinates t..n-1 to be all of N. The
    slice S_d lives in N^t; the second return value tests membership in the
    upper part (members with a nonzero tail), which is an infinite set and
    therefore never materialized.
    """
    n = S.dimension
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= {n}")
    for i in range(t, n):
        if axis_semigroup(S, i).gaps:
            raise ValueError(f"axis {i} semigroup is not all of N")
    head = tuple(range(t))
    d_gaps = sigma_slice(S.gaps, head)
    d_gens = None
    if S.generators is not None:
        d_gens = frozenset(sigma_slice(S.generators, head))
    S_d = AffineSemigroup(t, frozenset(d_gaps), d_gens)

    def in_upper(x) -> bool:
        return S.contains(x) and any(x[t:])

    return S_d, in_upper


def minimal_generators(S: AffineSemigroup) -> frozenset:
    """Irreducible elements of S, unique minimal generating set.

    Returns the stored generators when present. Otherwise sieves the box
    with per-coordinate bound 2*(C_i + 1), C_i = max gap coordinate + 1:
    any member with a larger coordinate splits off (C_i+1)e_i, which is a
    member because every point with i-th coordinate >= C_i is one.
    """
    if S.generators is not None:
        return S.generators
    n = S.dimension
    C = [0] * n
    for h in S.gaps:
        for j, c in enumerate(h):
            C[j] = max(C[j], c + 1)
    bounds = [2 * (cj + 1) for cj in C]
    gens = set()
    for x in product(*(range(b + 1) for b in bounds)):
        if not any(x) or x in S.gaps:
            continue
        reducible = False
        for a in product(*(range(c + 1) for c in x)):
            rest = tuple(xc - ac for xc, ac in zip(x, a))
            if any(a) and any(rest) and a not in S.gaps and rest not in S.gaps:
                reducible = True
                break
        if not reducible:
            gens.add(x)
    return frozenset(gens)


def in_strip(L: IntervalSystem, i: int, head) -> bool:
    """Whether a head point lies in the open strip between bands i-1 and i.

    The strip is cut by sum x/p < i and, for i >= 2, sum x/q > i - 1; the
    first strip is bounded below by band 0 = {0} only. Accepts rational
    coordinates, which the divided forms handle exactly.
    """
    if h1_sign(L, i, head) != 1:
        return False
    return i == 1 or h2_sign(L, i - 1, head) == -1


@dataclass(frozen=True)
class PrismBand:
    """Gap and neighbor classification of one prism P_i (strip i times tails).

    gaps: the gaps of S whose head lies in strip i. plus: members with
    nonzero tail that drop into those gaps by one step along a head axis;
    minus: members that climb into them; star: members reached from them by
    one step along a tail axis, not already in plus or minus.
    """

    index: int
    gaps: frozenset
    plus: frozenset
    minus: frozenset
    star: frozenset


def prism_regions(S: AffineSemigroup, t: int, Ltilde: IntervalSystem) -> dict:
    """Per-strip classification of gaps and their semigroup neighbors.

    For each i in 1..phi(Ltilde): the gaps in prism i, and the neighbor sets
    described on PrismBand. Neighbors are found by scanning unit steps from
    the gap set, which is exhaustive because each classified point is one
    step away from some gap in the prism.
    """
    if Ltilde.t != t:
        raise ValueError("interval system must cover the head coordinates")
    n = S.dimension

    def su_contains(x) -> bool:
        return all(c >= 0 for c in x) and S.contains(x) and any(x[t:])

    out = {}
    for i in range(1, phi_system(Ltilde) + 1):
        pg = frozenset(h for h in S.gaps if in_strip(Ltilde, i, h[:t]))
        plus, minus = set(), set()
        for h in pg:
            for j in range(t):
                up = h[:j] + (h[j] + 1,) + h[j + 1 :]
                if su_contains(up):
                    plus.add(up)
                if h[j] > 0:
                    down = h[:j] + (h[j] - 1,) + h[j + 1 :]
                    if su_contains(down):
                        minus.add(down)
        star = set()
        for h in pg:
            for j in range(t, n):
                up = h[:j] + (h[j] + 1,) + h[j + 1 :]
                if su_contains(up) and up not in plus and up not in minus:
                    star.add(up)
        out[i] = PrismBand(i, pg, frozenset(plus), frozenset(minus), frozenset(star))
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def vset(points) -> set:
    """Vertices of the convex hull, exactly, in dimension <= 2.

    In higher dimension returns the input unchanged: a sound superset, since
    linear constraints imposed on all points of a set and on its hull
    vertices cut out the same feasible regions.
    """
    pts = {tuple(p) for p in points}
    if len(pts) <= 1:
        return pts
    dim = len(next(iter(pts)))
    if dim == 1:
        return {min(pts), max(pts)}
    if dim > 2:
        return pts
    ordered = sorted(pts)
    lower, upper = [], []
    for p in ordered:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(ordered):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return set(lower[:-1]) | set(upper[:-1])


@dataclass(frozen=True)
class Triangle:
    """Gap triangle number k of a planar inequality.

    Two vertices sit on the first axis, the apex strictly above it. With
    `open_edges` the two slanted edges (and with them the base endpoints)
    are excluded, leaving exactly the gap region the triangle carries.
    """

    k: int
    vertices: tuple
    open_edges: bool = False

    def __post_init__(self):
        vs = tuple((Fraction(a), Fraction(c)) for a, c in self.vertices)
        if len(vs) != 3:
            raise ValueError("a triangle has three vertices")
        if any(a < 0 or c < 0 for a, c in vs):
            raise ValueError("vertices must be nonnegative")
        base = [v for v in vs if v[1] == 0]
        apex = [v for v in vs if v[1] > 0]
        if len(base) != 2 or len(apex) != 1:
            raise ValueError("need two base vertices on the axis and one apex")
        object.__setattr__(self, "vertices", vs)

    @property
    def base_left(self):
        return min(v for v in self.vertices if v[1] == 0)

    @property
    def base_right(self):
        return max(v for v in self.vertices if v[1] == 0)

    @property
    def apex(self):
        return next(v for v in self.vertices if v[1] > 0)

    def contains(self, x) -> bool:
        """Point-in-triangle, honoring the open_edges flag."""
        p = (Fraction(x[0]), Fraction(x[1]))
        L, R, A = self.base_left, self.base_right, self.apex
        s1 = _cross(L, R, p)
        s2 = _cross(R, A, p)
        s3 = _cross(A, L, p)
        if s1 < 0 or s2 < 0 or s3 < 0:
            return False
        if self.open_edges and (s2 == 0 or s3 == 0):
            return False
        return True


def triangle_vertices(M: ModularInequality, k: int) -> Triangle:
    """Triangle number k of a planar inequality with f1 > g1 > 0, g2 >= f2.

    Vertices (kb/f1, 0), ((k-1)b/(f1-g1), 0) and the apex where the line
    f(x) = kb crosses g(x) = b. Valid for 0 < k < f1/g1; at k = f1/g1 the
    triangle collapses to an axis point and carries no gaps.
    """
    if M.dimension != 2:
        raise ValueError("triangles exist for planar inequalities only")
    f1, f2 = M.f
    g1, g2 = M.g
    b = M.b
    if not f1 > g1 > 0:
        raise ValueError("need f1 > g1 > 0")
    if g2 < f2:
        raise ValueError("need g2 >= f2")
    det = f1 * g2 - f2 * g1
    if det == 0:
        raise ValueError("degenerate: the f- and g-lines are parallel")
    if not 0 < k < Fraction(f1, g1):
        raise ValueError(f"band index must satisfy 0 < k < {f1}/{g1}")
    apex = (Fraction(b * (k * g2 - f2), det), Fraction(b * (f1 - k * g1), det))
    right = (Fraction(k * b, f1), Fraction(0))
    left = (Fraction((k - 1) * b, f1 - g1), Fraction(0))
    return Triangle(k, (right, left, apex))


def triangle_edge_directions(T: Triangle):
    """Normalized slant directions (mu, nu) with coordinates summing to 1.

    mu points from the left base vertex to the apex, nu from the right base
    vertex to the apex with its first coordinate negated; the apex must sit
    horizontally between the base vertices for both to be nonnegative.
    """
    L, R, A = T.base_left, T.base_right, T.apex
    mu_raw = (A[0] - L[0], A[1])
    nu_raw = (R[0] - A[0], A[1])
    mu_sum = mu_raw[0] + mu_raw[1]
    nu_sum = nu_raw[0] + nu_raw[1]
    if mu_raw[0] < 0 or nu_raw[0] < 0 or mu_sum <= 0 or nu_sum <= 0:
        raise ValueError("apex lies outside the base span")
    mu = (mu_raw[0] / mu_sum, mu_raw[1] / mu_sum)
    nu = (nu_raw[0] / nu_sum, nu_raw[1] / nu_sum)
    return mu, nu


def _as_int(v: Fraction) -> int:
    if v.denominator != 1:
        raise ValueError(f"expected an integer, got {v}")
    return v.numerator


def triangle_to_inequality(T: Triangle, p, q) -> ModularInequality:
    """Planar inequality whose first gap triangle is T with band [p, q].

    The apex gamma must satisfy 0 <= gamma_1 <= p < q, gamma_2 > 0. The two
    edge lines through (p, 0) and (q, 0) are cleared to integer coefficients
    with the smallest multipliers, then rescaled to a common modulus.
    """
    p, q = Fraction(p), Fraction(q)
    g1_, g2_ = T.apex
    if g2_ <= 0:
        raise ValueError("apex must lie strictly above the axis")
    if not 0 <= g1_ <= p < q:
        raise ValueError("need 0 <= gamma_1 <= p < q")
    r1 = lcm(
        g2_.denominator, (p - g1_).denominator, (p * g2_).denominator
    )
    r2 = lcm(
        ((q - p) * g2_).denominator,
        (p * q - g1_ * (q - p)).denominator,
        (p * q * g2_).denominator,
    )
    b = lcm(_as_int(r1 * p * g2_), _as_int(r2 * p * q * g2_))
    f1 = _as_int(Fraction(b) / p)
    f2 = _as_int(b * (p - g1_) / (p * g2_))
    gg1 = _as_int(b * (q - p) / (p * q))
    gg2 = _as_int(b * (p * q - g1_ * (q - p)) / (p * q * g2_))
    return ModularInequality((f1, f2), b, (gg1, gg2))


def triangles_cover_check(M: ModularInequality, box=None) -> bool:
    """Exhaustively confirm that gaps are exactly the open-triangle points.

    Preconditions f1 > g1 > 0, g2 >= f2 and (0,1) a member. The default box
    covers every triangle with a margin of two lattice units; outside the
    triangles all points must be members.
    """
    if M.dimension != 2:
        raise ValueError("planar inequalities only")
    f1, f2 = M.f
    g1, g2 = M.g
    if not f1 > g1 > 0:
        raise ValueError("need f1 > g1 > 0")
    if g2 < f2 or not ineq_membership(M, (0, 1)):
        raise ValueError("need g2 >= f2 and (0,1) a member")
    tris = []
    k = 1
    while k * g1 < f1:
        tris.append(
            Triangle(k, triangle_vertices(M, k).vertices, open_edges=True)
        )
        k += 1
    if box is None:
        xs = [v[0] for T in tris for v in T.vertices]
        ys = [v[1] for T in tris for v in T.vertices]
        box = (floor(max(xs)) + 2, floor(max(ys)) + 2)
    bx, by = box
    for x in range(bx + 1):
        for y in range(by + 1):
            member = ineq_membership(M, (x, y))
            covered = any(T.contains((x, y)) for T in tris)
            if member == covered:
                return False
    return True
