"""Numerical semigroups: cofinite additive submonoids of the naturals.

A semigroup is stored by its minimal generating set together with the full
gap set and the Frobenius number, so membership is a set lookup and every
derived quantity (genus, multiplicity, special gaps) is immediate.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, gcd


class NumericalSemigroup:
    """Immutable numerical semigroup.

    Attributes:
        generators: minimal generating set, sorted tuple.
        gaps: sorted tuple of the finitely many naturals not in the semigroup.
        frobenius: max(gaps), or -1 when the semigroup is all of N.
        multiplicity: least positive element.
    """

    __slots__ = ("generators", "gaps", "frobenius", "multiplicity", "_gapset")

    def __init__(self, generators, gaps):
        self.generators = tuple(sorted(generators))
        self.gaps = tuple(sorted(gaps))
        self._gapset = frozenset(self.gaps)
        self.frobenius = self.gaps[-1] if self.gaps else -1
        m = 1
        while m in self._gapset:
            m += 1
        self.multiplicity = m

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def contains(self, x: int) -> bool:
        if x < 0:
            raise ValueError("membership is defined for nonnegative integers")
        return x not in self._gapset

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalSemigroup) and self.gaps == other.gaps

    def __hash__(self) -> int:
        return hash(self.gaps)

    def __repr__(self) -> str:
        gens = ",".join(str(g) for g in self.generators)
        return f"NumericalSemigroup(<{gens}>)"


def _closure_gaps(gens):
    # Sieve reachable sums, doubling the bound until the top multiplicity-many
    # values are all reachable; from then on everything above is reachable.
    m = min(gens)
    bound = max(gens) * 2 + 1
    while True:
        reach = bytearray(bound + 1)
        reach[0] = 1
        for x in range(1, bound + 1):
            for g in gens:
                if g <= x and reach[x - g]:
                    reach[x] = 1
                    break
        if all(reach[bound - k] for k in range(m)):
            return [x for x in range(1, bound + 1) if not reach[x]]
        bound *= 2


def _minimal_system(gaps):
    """Minimal generating set of the semigroup with the given gap set."""
    gapset = set(gaps)
    if not gapset:
        return [1]
    frob = max(gapset)
    m = 1
    while m in gapset:
        m += 1
    # Minimal generators are the elements that are not a sum of two nonzero
    # elements; all of them lie in [m, frobenius + multiplicity].
    gens = []
    for x in range(m, frob + m + 1):
        if x in gapset:
            continue
        decomposable = False
        for a in range(m, x - m + 1):
            if a not in gapset and (x - a) not in gapset:
                decomposable = True
                break
        if not decomposable:
            gens.append(x)
    return gens


def from_generators(gens) -> NumericalSemigroup:
    """Semigroup generated by `gens`; requires gcd 1 so the gap set is finite."""
    gens = sorted(set(int(g) for g in gens))
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    d = 0
    for g in gens:
        d = gcd(d, g)
    if d != 1:
        raise ValueError("gcd of generators is %d, semigroup is not cofinite" % d)
    gaps = _closure_gaps(gens)
    return NumericalSemigroup(_minimal_system(gaps), gaps)


def minimal_generators(gaps) -> list:
    """Unique minimal generating set of the semigroup whose gap set is `gaps`.

    Raises ValueError when the complement of `gaps` is not closed under
    addition, i.e. when `gaps` is not the gap set of any numerical semigroup.
    """
    gapset = set(int(h) for h in gaps)
    if any(h <= 0 for h in gapset):
        raise ValueError("gaps must be positive integers")
    for h in gapset:
        for a in range(1, h):
            if a not in gapset and (h - a) not in gapset:
                raise ValueError(
                    "not a semigroup: %d = %d + %d with both summands present"
                    % (h, a, h - a)
                )
    return _minimal_system(gapset)


def from_gaps(gaps) -> NumericalSemigroup:
    """Semigroup from its gap set (validated)."""
    return NumericalSemigroup(minimal_generators(gaps), set(int(h) for h in gaps))


def special_gaps(S: NumericalSemigroup) -> set:
    """Gaps x such that S together with x is still closed under addition."""
    if not S.gaps:
        raise ValueError("N has no gaps")
    out = set()
    for x in S.gaps:
        if 2 * x <= S.frobenius and not S.contains(2 * x):
            continue
        ok = True
        for s in range(1, S.frobenius - x + 1):
            if S.contains(s) and not S.contains(x + s):
                ok = False
                break
        if ok:
            out.add(x)
    return out


def integer_in(lo, hi, lo_strict=False, hi_strict=False):
    """Least integer in the rational interval, or None.

    `hi` may be None for an interval unbounded above. Bound types are exact,
    no epsilon anywhere.
    """
    lo = Fraction(lo)
    n = ceil(lo)
    if n == lo and lo_strict:
        n += 1
    if hi is None:
        return n
    hi = Fraction(hi)
    if n < hi or (n == hi and not hi_strict):
        return n
    return None


def from_interval(I) -> NumericalSemigroup:
    """The semigroup of naturals hit by some positive integer dilation of I.

    x > 0 belongs exactly when some integer i >= 1 lies in [x/hi, x/lo],
    with strict comparison on open endpoints; 0 always belongs (the dilation
    by i = 0). The gap scan stops at ceil(phi(I) * hi) for bounded I and at
    ceil(lo) for half-line I, beyond which membership is automatic.
    """
    lo, hi = I.lo, I.hi
    if I.lo_closed:
        if lo <= 1:
            raise ValueError("closed lower endpoint must exceed 1")
    elif lo < 1:
        raise ValueError("lower endpoint must be at least 1")
    if hi is not None and not lo < hi:
        raise ValueError("empty interval")

    if hi is None:
        scan = ceil(lo) + 1
    else:
        phi_i = ceil(Fraction(lo) / (Fraction(hi) - Fraction(lo)))
        scan = ceil(phi_i * hi) + 1

    gaps = []
    for x in range(1, scan + 1):
        if hi is None:
            # dilation index at least 1; upper endpoint poses no constraint
            i = integer_in(1, Fraction(x) / lo, hi_strict=not I.lo_closed)
        else:
            i = integer_in(
                Fraction(x) / hi,
                Fraction(x) / lo,
                lo_strict=not I.hi_closed,
                hi_strict=not I.lo_closed,
            )
        if i is None:
            gaps.append(x)
    return NumericalSemigroup(_minimal_system(gaps), gaps)
