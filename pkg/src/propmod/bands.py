"""Band geometry for systems of rational intervals.

A system L = [I_1..I_t] of intervals [p_j, q_j] cuts the nonnegative orthant
into bands i*P_L = {x : sum x_j/q_j <= i <= sum x_j/p_j}. Points of N^t inside
some band correspond to semigroup elements, points in the open strips between
consecutive bands to gaps. Everything here is evaluated in exact rationals;
the defining forms are used in divided-through shape, which has the same sign
as the fully multiplied-out versions because the cleared denominators are
positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, floor

from .intervals import RationalInterval, phi
from .numsem import integer_in

LatticePoint = tuple[int, ...]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class IntervalSystem:
    """Ordered interval system; per-interval half-line markers.

    A half-line marker says the stored finite upper endpoint is one of many
    valid choices (any larger value defines the same axis semigroup), which
    consumers use to drop the corresponding upper-endpoint constraints. An
    interval that is literally unbounded above is always marked.
    """

    intervals: tuple[RationalInterval, ...]
    halfline: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        ivs = tuple(self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise ValueError("need at least one interval")
        flags = tuple(self.halfline) if self.halfline else tuple(
            I.hi is None for I in ivs
        )
        if len(flags) != len(ivs):
            raise ValueError("one half-line flag per interval")
        flags = tuple(
            bool(f) or I.hi is None for f, I in zip(flags, ivs)
        )
        object.__setattr__(self, "halfline", flags)

    @property
    def t(self) -> int:
        return len(self.intervals)

    @property
    def p(self) -> tuple[Fraction, ...]:
        return tuple(I.lo for I in self.intervals)

    @property
    def q(self) -> tuple[Fraction | None, ...]:
        return tuple(I.hi for I in self.intervals)

    def _require_dim(self, x) -> None:
        if len(x) != self.t:
            raise ValueError(f"point has dimension {len(x)}, system has {self.t}")


def _sum_over(x, vals) -> Fraction:
    """sum x_j / vals_j, with a None divisor contributing nothing."""
    total = Fraction(0)
    for c, v in zip(x, vals):
        if v is not None and c:
            total += Fraction(c) / v
    return total


def h1_sign(L: IntervalSystem, i: int, x: LatticePoint) -> int:
    """Sign of i - sum x_j/p_j."""
    L._require_dim(x)
    return _sign(i - _sum_over(x, L.p))


def h2_sign(L: IntervalSystem, i: int, x: LatticePoint) -> int:
    """Sign of i - sum x_j/q_j."""
    L._require_dim(x)
    return _sign(i - _sum_over(x, L.q))


def phi_system(L: IntervalSystem) -> int:
    """Max per-interval phi: from this index on consecutive bands overlap."""
    return max(phi(I) for I in L.intervals)


def kappa(L: IntervalSystem, x: LatticePoint) -> int:
    """Largest integer strictly below sum x_j/p_j, at least 0.

    Counts the hyperplanes sum x/p = i separating x from the origin; the
    comparison is strict, so a point on the i-th hyperplane has kappa = i - 1.
    """
    L._require_dim(x)
    v = _sum_over(x, L.p)
    return max(0, ceil(v) - 1)


def theta(L: IntervalSystem, x: LatticePoint) -> int:
    """1 when x lies in some band i*P_L, else 0.

    The origin is the whole of band 0. Other points need an integer i >= 1
    between sum x_j/q_j and sum x_j/p_j inclusive.
    """
    L._require_dim(x)
    if not any(x):
        return 1
    lo = max(Fraction(1), _sum_over(x, L.q))
    return 1 if integer_in(lo, _sum_over(x, L.p)) is not None else 0


def _box(bounds) -> "product":
    return product(*(range(b + 1) for b in bounds))


def region_points(L: IntervalSystem, kind: str, i: int | None = None) -> set:
    """Integer points of one region of the band decomposition.

    kind "H": the open strip between bands i-1 and i, i.e. sum x/q > i-1 and
    sum x/p < i; for i = 1 only the second condition applies and the origin
    is excluded (it belongs to band 0). kind "S": the band i*P_L itself.
    kind "T": everything under sum x/q <= phi(L), the cone that contains all
    strips and all bands up to phi(L). Regions S and T are finite only when
    every interval is bounded.
    """
    f = phi_system(L)
    if kind in ("H", "S"):
        if i is None or not 1 <= i <= f:
            raise ValueError(f"band index must be in 1..{f}")
    elif kind == "T":
        if i is not None:
            raise ValueError("the enclosing cone takes no band index")
    else:
        raise ValueError(f"unknown region kind {kind!r}")

    if kind == "H":
        bounds = [floor(i * pj) for pj in L.p]
        out = set()
        for x in _box(bounds):
            if not any(x):
                continue
            if _sum_over(x, L.p) < i and (i == 1 or _sum_over(x, L.q) > i - 1):
                out.add(x)
        return out

    if any(qj is None for qj in L.q):
        raise ValueError("region is unbounded for half-line intervals")
    if kind == "S":
        bounds = [floor(i * qj) for qj in L.q]
        return {
            x
            for x in _box(bounds)
            if _sum_over(x, L.q) <= i <= _sum_over(x, L.p)
        }
    bounds = [floor(f * qj) for qj in L.q]
    return {x for x in _box(bounds) if _sum_over(x, L.q) <= f}


@dataclass(frozen=True)
class ExtendedSystem:
    """Interval system on the head coordinates plus linear tail slopes.

    Models membership tests in dimension n = t + len(slopes): the head
    coordinates pass through the band system, each tail coordinate x_j tilts
    the two bounding forms by w_j (lower form) and z_j (upper form). Slopes
    must be nonnegative for the tilted forms to keep their band meaning.
    """

    base: IntervalSystem
    slopes_w: tuple[Fraction, ...]
    slopes_z: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(v) for v in self.slopes_w)
        z = tuple(Fraction(v) for v in self.slopes_z)
        if len(w) != len(z):
            raise ValueError("need one w and one z slope per tail coordinate")
        if any(v < 0 for v in w) or any(v < 0 for v in z):
            raise ValueError("tail slopes must be nonnegative")
        object.__setattr__(self, "slopes_w", w)
        object.__setattr__(self, "slopes_z", z)

    @property
    def n(self) -> int:
        return self.base.t + len(self.slopes_w)

    def _split(self, x):
        if len(x) != self.n:
            raise ValueError(f"point has dimension {len(x)}, system has {self.n}")
        t = self.base.t
        return x[:t], x[t:]


def tau1_sign(E: ExtendedSystem, i: int, x: LatticePoint) -> int:
    """Sign of i - sum_head x_j/q_j + sum_tail w_j x_j."""
    head, tail = E._split(x)
    v = i - _sum_over(head, E.base.q) + sum(
        w * c for w, c in zip(E.slopes_w, tail)
    )
    return _sign(v)


def tau2_sign(E: ExtendedSystem, i: int, x: LatticePoint) -> int:
    """Sign of i - sum_head x_j/p_j - sum_tail z_j x_j."""
    head, tail = E._split(x)
    v = i - _sum_over(head, E.base.p) - sum(
        z * c for z, c in zip(E.slopes_z, tail)
    )
    return _sign(v)
