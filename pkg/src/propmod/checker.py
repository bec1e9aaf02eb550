"""Deciding whether an N^n-semigroup is proportionally modular.

Two configurations are handled.  Case 1: every unit vector is a gap, so all
axis semigroups are proper.  Case 2: the first t axis semigroups are proper
and the remaining ones equal N.  Both reduce to exact linear feasibility in
the reciprocals u_i = 1/p_i, v_i = 1/q_i of the sought interval endpoints,
plus nonnegative tail slopes w_j, z_j in Case 2.  Every candidate answer is
re-verified point by point before being reported, so a YES is always backed
by a checked witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .affine import (
    AffineSemigroup,
    ModularInequality,
    axis_semigroup,
    prism_regions,
    split_du,
    vset,
)
from .bands import IntervalSystem, _sum_over, kappa, phi_system, theta
from .feasibility import ConstraintSystem, ge, gt, le, lt, solve_with_disjunctions
from .intervals import IntervalPair, minimal_intervals
from .numsem import integer_in


class UnsupportedCaseError(NotImplementedError):
    """The semigroup falls outside the two decided configurations."""


@dataclass(frozen=True)
class Case1Witness:
    """Interval endpoints p_i < q_i certifying S = S([p_1,q_1],...,[p_n,q_n])."""

    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(Fraction(x) for x in self.p))
        object.__setattr__(self, "q", tuple(Fraction(x) for x in self.q))
        if len(self.p) != len(self.q) or not self.p:
            raise ValueError("need matching nonempty p and q tuples")
        for pk, qk in zip(self.p, self.q):
            if not 0 < pk < qk:
                raise ValueError(f"need 0 < p < q, got [{pk}, {qk}]")


@dataclass(frozen=True)
class Case2Witness:
    """Head intervals plus tail directions.

    mu[j] and nu[j] are the direction pairs of the j-th tail axis; the
    derived slopes w and z are what the hyperplane forms actually use.
    """

    t: int
    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...]
    mu: tuple[tuple[Fraction, Fraction], ...]
    nu: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(Fraction(x) for x in self.p))
        object.__setattr__(self, "q", tuple(Fraction(x) for x in self.q))
        object.__setattr__(
            self, "mu", tuple((Fraction(a), Fraction(b)) for a, b in self.mu)
        )
        object.__setattr__(
            self, "nu", tuple((Fraction(a), Fraction(b)) for a, b in self.nu)
        )
        if self.t < 1 or len(self.p) != self.t or len(self.q) != self.t:
            raise ValueError("need t >= 1 head interval pairs")
        if len(self.mu) != len(self.nu) or not self.mu:
            raise ValueError("need matching nonempty direction tuples")
        for pk, qk in zip(self.p, self.q):
            if not 0 < pk < qk:
                raise ValueError(f"need 0 < p < q, got [{pk}, {qk}]")
        for first, second in (*self.mu, *self.nu):
            if first + second != 1:
                raise ValueError("direction coordinates must sum to 1")
            if not (0 <= first < 1 and 0 < second <= 1):
                raise ValueError("direction coordinates out of range")

    @property
    def w(self) -> tuple[Fraction, ...]:
        qt = self.q[-1]
        return tuple(m1 / (qt * m2) for m1, m2 in self.mu)

    @property
    def z(self) -> tuple[Fraction, ...]:
        pt = self.p[-1]
        return tuple(n1 / (pt * n2) for n1, n2 in self.nu)


Witness = Union[Case1Witness, Case2Witness]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of check().

    case 0 marks the gap-free semigroup N^n.  The witness, when present,
    refers to the permuted coordinates (gap axes first); permutation[k] is
    the original axis sitting at position k.  The inequality is always in
    the input coordinate order.
    """

    proportionally_modular: bool
    case: Optional[int]
    witness: Optional[Witness]
    inequality: Optional[ModularInequality]
    permutation: tuple[int, ...]


def _band_index(Lt: IntervalSystem, phi: int, head) -> Optional[int]:
    """The unique i with head strictly between hyperplanes i-1 and i, if any."""
    i = math.floor(_sum_over(head, Lt.p)) + 1
    if i <= phi and _sum_over(head, Lt.q) > i - 1:
        return i
    return None


def _reciprocal_bounds(combo: tuple[IntervalPair, ...]) -> list:
    """p-hat < p <= p-tilde and q-tilde <= q (< q-hat), in u = 1/p, v = 1/q."""
    out = []
    for k, pair in enumerate(combo, start=1):
        out.append(ge({f"u{k}": 1}, 1 / pair.minimal.lo))
        out.append(lt({f"u{k}": 1}, 1 / pair.maximal.lo))
        out.append(le({f"v{k}": 1}, 1 / pair.minimal.hi))
        if pair.halfline:
            out.append(gt({f"v{k}": 1}, 0))
        else:
            out.append(gt({f"v{k}": 1}, 1 / pair.maximal.hi))
    return out


def _gap_band_blocks(bands: dict[int, set], t: int) -> list:
    """Vertex constraints keeping each gap cluster strictly inside its slab."""
    out = []
    for i in sorted(bands):
        for x in sorted(vset(bands[i])):
            out.append(lt({f"u{j}": x[j - 1] for j in range(1, t + 1)}, i))
            if i >= 2:
                out.append(gt({f"v{j}": x[j - 1] for j in range(1, t + 1)}, i - 1))
    return out


def _theta_zero_generators(S_head: AffineSemigroup, Lt: IntervalSystem, phi: int):
    """Generating elements not yet covered by a band of the minimal system.

    Falls back to every such member below the phi simplex when no generating
    set is stored; band membership of all members is necessary, so the
    larger set changes nothing.
    """
    if S_head.generators is not None:
        return [s for s in sorted(S_head.generators) if theta(Lt, s) == 0]
    bounds = [math.ceil(phi * p) for p in Lt.p]
    out = []
    for x in itertools.product(*(range(b) for b in bounds)):
        if not any(x) or x in S_head.gaps:
            continue
        if theta(Lt, x) == 0:
            out.append(x)
    return out


def _omega_groups(S_head, combo, Lt, Lh, phi) -> Optional[list]:
    """One disjunction group per uncovered generator: pick its band index m.

    None when some generator has no admissible m at all, which kills the
    whole interval tuple.
    """
    t = S_head.dimension
    groups = []
    for s in _theta_zero_generators(S_head, Lt, phi):
        cap = kappa(Lh, s)
        if cap == 0:
            return None
        # m >= sum(s_j v_j) > sum over bounded axes of s_j / q-hat_j
        m_min = max(1, math.floor(_sum_over(s, Lh.q)) + 1)
        if m_min > cap:
            return None
        blocks = []
        for m in range(m_min, cap + 1):
            blocks.append(
                (
                    ge({f"u{j}": Fraction(s[j - 1], m) for j in range(1, t + 1)}, 1),
                    le({f"v{j}": Fraction(s[j - 1], m) for j in range(1, t + 1)}, 1),
                )
            )
        groups.append(tuple(blocks))
    return groups


def _case1_branch(S: AffineSemigroup, combo: tuple[IntervalPair, ...]):
    """Feasibility of one interval tuple; returns an unverified witness."""
    t = S.dimension
    Lt = IntervalSystem(tuple(pair.minimal for pair in combo))
    Lh = IntervalSystem(tuple(pair.maximal for pair in combo))
    phi = phi_system(Lt)
    bands: dict[int, set] = {}
    for g in sorted(S.gaps):
        i = _band_index(Lt, phi, g)
        if i is None:
            return None
        bands.setdefault(i, set()).add(g)
    groups = _omega_groups(S, combo, Lt, Lh, phi)
    if groups is None:
        return None
    hard = _reciprocal_bounds(combo) + _gap_band_blocks(bands, t)
    sol = solve_with_disjunctions(ConstraintSystem(tuple(hard), tuple(groups)))
    if sol is None:
        return None
    witness, _ = sol
    p = tuple(1 / witness[f"u{k}"] for k in range(1, t + 1))
    q = tuple(1 / witness[f"v{k}"] for k in range(1, t + 1))
    return Case1Witness(p, q)


def check_case1(S: AffineSemigroup) -> Optional[Case1Witness]:
    """Decide S when every axis semigroup is proper.

    Tries each tuple of defining intervals of the axis semigroups; an axis
    that is not proportionally modular leaves nothing to try.  Any witness
    that survives verification is returned as found.
    """
    n = S.dimension
    interval_lists = []
    for i in range(n):
        ax = axis_semigroup(S, i)
        if not ax.gaps:
            raise ValueError(f"axis {i + 1} semigroup is N; every unit vector must be a gap")
        pairs = minimal_intervals(ax)
        if not pairs:
            return None
        interval_lists.append(pairs)
    for combo in itertools.product(*interval_lists):
        w = _case1_branch(S, combo)
        if w is not None and verify_witness(S, w):
            return w
    return None


def _tau1_lt(x, k, t):
    coeffs = {f"v{j}": -x[j - 1] for j in range(1, t + 1)}
    coeffs.update({f"w{j}": x[j - 1] for j in range(t + 1, len(x) + 1)})
    return lt(coeffs, -k)


def _tau1_ge(x, k, t):
    coeffs = {f"v{j}": x[j - 1] for j in range(1, t + 1)}
    coeffs.update({f"w{j}": -x[j - 1] for j in range(t + 1, len(x) + 1)})
    return le(coeffs, k)


def _tau2_gt(x, k, t):
    coeffs = {f"u{j}": x[j - 1] for j in range(1, t + 1)}
    coeffs.update({f"z{j}": x[j - 1] for j in range(t + 1, len(x) + 1)})
    return lt(coeffs, k)


def _tau2_le(x, k, t):
    coeffs = {f"u{j}": x[j - 1] for j in range(1, t + 1)}
    coeffs.update({f"z{j}": x[j - 1] for j in range(t + 1, len(x) + 1)})
    return ge(coeffs, k)


def _case2_branch(S, S_d, t, combo):
    n = S.dimension
    Lt = IntervalSystem(tuple(pair.minimal for pair in combo))
    Lh = IntervalSystem(tuple(pair.maximal for pair in combo))
    phi = phi_system(Lt)
    head_bands: dict[int, set] = {}
    for g in sorted(S_d.gaps):
        i = _band_index(Lt, phi, g)
        if i is None:
            return None
        head_bands.setdefault(i, set()).add(g)
    groups = _omega_groups(S_d, combo, Lt, Lh, phi)
    if groups is None:
        return None
    regions = prism_regions(S, t, Lt)
    if set().union(*(band.gaps for band in regions.values())) != S.gaps:
        return None

    hard = _reciprocal_bounds(combo) + _gap_band_blocks(head_bands, t)
    for j in range(t + 1, n + 1):
        hard.append(ge({f"w{j}": 1}, 0))
        hard.append(ge({f"z{j}": 1}, 0))
    tail_groups = []
    for i in sorted(regions):
        band = regions[i]
        mixed = {g for g in band.gaps if any(g[t:])}
        for alpha in sorted(vset(mixed)):
            hard.append(_tau1_lt(alpha, i - 1, t))
            hard.append(_tau2_gt(alpha, i, t))
        for gamma in sorted(band.minus):
            hard.append(_tau1_ge(gamma, i - 1, t))
        for beta in sorted(band.plus):
            hard.append(_tau2_le(beta, i, t))
        for delta in sorted(band.star):
            tail_groups.append(((_tau1_ge(delta, i - 1, t),), (_tau2_le(delta, i, t),)))

    sol = solve_with_disjunctions(
        ConstraintSystem(tuple(hard), tuple(groups) + tuple(tail_groups))
    )
    if sol is None:
        return None
    witness, _ = sol
    p = tuple(1 / witness[f"u{k}"] for k in range(1, t + 1))
    q = tuple(1 / witness[f"v{k}"] for k in range(1, t + 1))
    mu = []
    nu = []
    for j in range(t + 1, n + 1):
        mu2 = 1 / (1 + q[t - 1] * witness[f"w{j}"])
        nu2 = 1 / (1 + p[t - 1] * witness[f"z{j}"])
        mu.append((1 - mu2, mu2))
        nu.append((1 - nu2, nu2))
    return Case2Witness(t, p, q, tuple(mu), tuple(nu))


def check_case2(S: AffineSemigroup, t: int) -> Optional[Case2Witness]:
    """Decide S when axes 1..t are proper and the remaining axes are N.

    Expects the coordinate order to match (the dispatcher permutes first).
    """
    n = S.dimension
    if not 1 <= t < n:
        raise ValueError("need 1 <= t < dimension")
    interval_lists = []
    for i in range(t):
        ax = axis_semigroup(S, i)
        if not ax.gaps:
            raise ValueError(f"axis {i + 1} semigroup is N; proper axes must come first")
        pairs = minimal_intervals(ax)
        if not pairs:
            return None
        interval_lists.append(pairs)
    for j in range(t, n):
        if axis_semigroup(S, j).gaps:
            raise ValueError(f"axis {j + 1} semigroup must be N")
    S_d, _ = split_du(S, t)
    for combo in itertools.product(*interval_lists):
        w = _case2_branch(S, S_d, t, combo)
        if w is not None and verify_witness(S, w):
            return w
    return None


def witness_to_inequality(w: Witness) -> ModularInequality:
    """Clear denominators of the witness hyperplanes into f(x) mod b <= g(x)."""
    us = [1 / p for p in w.p]
    vs = [1 / q for q in w.q]
    ws = list(w.w) if isinstance(w, Case2Witness) else []
    zs = list(w.z) if isinstance(w, Case2Witness) else []
    b = math.lcm(*(x.denominator for x in (*us, *vs, *ws, *zs)))
    f = tuple(int(b * u) for u in us) + tuple(int(b * z) for z in zs)
    g_head = []
    for u, v in zip(us, vs):
        d = b * (u - v)
        assert d > 0, "witness must have p < q on every head axis"
        g_head.append(int(d))
    g = tuple(g_head) + tuple(int(b * (z + wj)) for z, wj in zip(zs, ws))
    return ModularInequality(f, b, g)


def verify_witness(S: AffineSemigroup, w: Witness) -> bool:
    """Exhaustively compare S against the witness's membership predicate.

    A point is a member of the witness semigroup when some integer i >= 0
    lies in [max(0, sum v.head - sum w.tail), sum u.head + sum z.tail].
    Points with band width >= 1 are always members, so any disagreement
    shows up inside the width-below-1 simplex or just past the gap box.
    """
    n = S.dimension
    us = [1 / p for p in w.p]
    vs = [1 / q for q in w.q]
    if isinstance(w, Case2Witness):
        t = w.t
        ws = list(w.w)
        zs = list(w.z)
    else:
        t = len(w.p)
        ws = []
        zs = []
    if t + len(ws) != n:
        raise ValueError("witness does not match the semigroup dimension")

    widths = [us[k] - vs[k] for k in range(t)] + [ws[k] + zs[k] for k in range(n - t)]
    limits = []
    for k in range(n):
        simplex = math.ceil(1 / widths[k]) - 1 if widths[k] > 0 else 0
        deepest_gap = max((g[k] for g in S.gaps), default=-1)
        limits.append(max(simplex, deepest_gap + 1) + 1)
    zero = Fraction(0)
    for x in itertools.product(*(range(m) for m in limits)):
        upper = sum(us[k] * x[k] for k in range(t)) + sum(
            zs[k] * x[t + k] for k in range(n - t)
        )
        lower = sum(vs[k] * x[k] for k in range(t)) - sum(
            ws[k] * x[t + k] for k in range(n - t)
        )
        member = integer_in(max(zero, lower), upper) is not None
        if member == (x in S.gaps):
            return False
    return True


def _permuted(S: AffineSemigroup, perm: tuple[int, ...]) -> AffineSemigroup:
    gaps = frozenset(tuple(g[k] for k in perm) for g in S.gaps)
    gens = None
    if S.generators is not None:
        gens = frozenset(tuple(s[k] for k in perm) for s in S.generators)
    return AffineSemigroup(S.dimension, gaps, gens)


def check(S: AffineSemigroup) -> CheckResult:
    """Full decision procedure with coordinate dispatch.

    Routes to Case 1 when every unit vector is a gap, to Case 2 after
    moving gap axes to the front otherwise.  The configuration with no
    missing unit vector but a nonempty gap set is not covered.
    """
    n = S.dimension
    identity = tuple(range(n))
    if not S.gaps:
        return CheckResult(True, 0, None, ModularInequality((0,) * n, 1, (1,) * n), identity)
    missing = [
        i
        for i in range(n)
        if tuple(1 if k == i else 0 for k in range(n)) in S.gaps
    ]
    if not missing:
        raise UnsupportedCaseError(
            "every unit vector belongs to S; deciding this configuration is out of scope"
        )
    if len(missing) == n:
        w = check_case1(S)
        if w is None:
            return CheckResult(False, None, None, None, identity)
        return CheckResult(True, 1, w, witness_to_inequality(w), identity)
    perm = tuple(missing + [i for i in range(n) if i not in missing])
    w = check_case2(_permuted(S, perm), len(missing))
    if w is None:
        return CheckResult(False, None, None, None, perm)
    permuted_ineq = witness_to_inequality(w)
    f = [0] * n
    g = [0] * n
    for pos, orig in enumerate(perm):
        f[orig] = permuted_ineq.f[pos]
        g[orig] = permuted_ineq.g[pos]
    return CheckResult(True, 2, w, ModularInequality(tuple(f), permuted_ineq.b, tuple(g)), perm)
