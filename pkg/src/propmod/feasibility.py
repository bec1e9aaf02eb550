"""Exact rational linear feasibility with strict and weak inequalities.

Fourier-Motzkin elimination over ``Fraction``.  Strictness rides along with
each derived constraint (a combination is strict when either parent is), so
open conditions need no epsilon fudging.  The systems built by the checker
have at most a dozen variables, well inside FM territory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

Witness = dict[str, Fraction]

_RELATIONS = ("<", "<=", "=")

_DEFAULT_BRANCH_CAP = 1_000_000


class ResourceCapError(RuntimeError):
    """Disjunction exploration exceeded its branch budget."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"feasibility branch budget exceeded: {count} > {cap}")
        self.count = count
        self.cap = cap


class LinearConstraint:
    """``sum(coeffs[v] * v) rel const`` with ``rel`` one of ``<``, ``<=``, ``=``.

    Zero coefficients are dropped on construction; a constraint with no
    remaining variables is a constant sentence and is evaluated by the
    solver rather than eliminated.
    """

    __slots__ = ("coeffs", "const", "rel")

    def __init__(self, coeffs: Mapping[str, object], const, rel: str):
        if rel not in _RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        self.coeffs: dict[str, Fraction] = {
            v: Fraction(c) for v, c in coeffs.items() if Fraction(c) != 0
        }
        self.const = Fraction(const)
        self.rel = rel

    def is_constant(self) -> bool:
        return not self.coeffs

    def constant_truth(self) -> bool:
        # pre: is_constant()
        if self.rel == "<":
            return 0 < self.const
        if self.rel == "<=":
            return 0 <= self.const
        return self.const == 0

    def evaluate(self, witness: Mapping[str, Fraction]) -> Fraction:
        return sum(
            (c * witness.get(v, Fraction(0)) for v, c in self.coeffs.items()),
            Fraction(0),
        )

    def holds(self, witness: Mapping[str, Fraction]) -> bool:
        lhs = self.evaluate(witness)
        if self.rel == "<":
            return lhs < self.const
        if self.rel == "<=":
            return lhs <= self.const
        return lhs == self.const

    def __eq__(self, other):
        if not isinstance(other, LinearConstraint):
            return NotImplemented
        return (
            self.coeffs == other.coeffs
            and self.const == other.const
            and self.rel == other.rel
        )

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.const, self.rel))

    def __repr__(self):
        terms = " + ".join(f"{c}*{v}" for v, c in sorted(self.coeffs.items()))
        return f"{terms or '0'} {self.rel} {self.const}"


def lt(coeffs, const) -> LinearConstraint:
    return LinearConstraint(coeffs, const, "<")


def le(coeffs, const) -> LinearConstraint:
    return LinearConstraint(coeffs, const, "<=")


def eq(coeffs, const) -> LinearConstraint:
    return LinearConstraint(coeffs, const, "=")


def gt(coeffs, const) -> LinearConstraint:
    """coeffs . x > const, stored in the <-normal form."""
    return LinearConstraint({v: -Fraction(c) for v, c in coeffs.items()}, -Fraction(const), "<")


def ge(coeffs, const) -> LinearConstraint:
    return LinearConstraint({v: -Fraction(c) for v, c in coeffs.items()}, -Fraction(const), "<=")


@dataclass(frozen=True)
class ConstraintSystem:
    """Hard constraints plus disjunction groups.

    Each group lists alternative blocks; a full branch picks one block per
    group and conjoins everything.
    """

    hard: tuple[LinearConstraint, ...]
    disjunctions: tuple[tuple[tuple[LinearConstraint, ...], ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "hard", tuple(self.hard))
        object.__setattr__(
            self,
            "disjunctions",
            tuple(tuple(tuple(block) for block in group) for group in self.disjunctions),
        )
        for group in self.disjunctions:
            if not group:
                raise ValueError("empty disjunction group is unsatisfiable by fiat")


@dataclass(frozen=True)
class SolveResult:
    witness: Optional[Witness]
    certificate: Optional[LinearConstraint]

    def __bool__(self) -> bool:
        return self.witness is not None


def _substituted(c: LinearConstraint, var: str, expr: dict[str, Fraction], shift: Fraction):
    """Rewrite c under var = shift + expr; may produce a constant sentence."""
    if var not in c.coeffs:
        return c
    a = c.coeffs[var]
    coeffs = {v: cv for v, cv in c.coeffs.items() if v != var}
    for v, cv in expr.items():
        coeffs[v] = coeffs.get(v, Fraction(0)) + a * cv
    return LinearConstraint(coeffs, c.const - a * shift, c.rel)


def _prune(ineqs: list[LinearConstraint]) -> list[LinearConstraint]:
    """Drop constraints dominated by a parallel one (same direction, tighter)."""
    best: dict[tuple, tuple[tuple[Fraction, int], LinearConstraint]] = {}
    for c in ineqs:
        names = tuple(sorted(c.coeffs))
        scale = abs(c.coeffs[names[0]])
        key = (names, tuple(c.coeffs[v] / scale for v in names))
        rank = (c.const / scale, 0 if c.rel == "<" else 1)
        held = best.get(key)
        if held is None or rank < held[0]:
            best[key] = (rank, c)
    return [c for _, c in best.values()]


def _combine(p: LinearConstraint, n: LinearConstraint, var: str) -> LinearConstraint:
    # p has positive coefficient on var, n negative; the positive multipliers
    # -n.coeffs[var] and p.coeffs[var] cancel it
    m1 = -n.coeffs[var]
    m2 = p.coeffs[var]
    coeffs: dict[str, Fraction] = {}
    for v, cv in p.coeffs.items():
        coeffs[v] = m1 * cv
    for v, cv in n.coeffs.items():
        coeffs[v] = coeffs.get(v, Fraction(0)) + m2 * cv
    rel = "<" if "<" in (p.rel, n.rel) else "<="
    return LinearConstraint(coeffs, m1 * p.const + m2 * n.const, rel)


def solve(constraints: Sequence[LinearConstraint]) -> SolveResult:
    """Decide a conjunction of linear constraints over the rationals.

    Equalities are substituted away first, then variables are eliminated
    one at a time.  On success the witness is rebuilt by back-substitution:
    each variable gets the midpoint of its residual interval, lower+1 when
    unbounded above, upper-1 when unbounded below, 0 when free.  On failure
    the certificate is a derived constant sentence that is false.
    """
    all_vars = sorted({v for c in constraints for v in c.coeffs})
    ineqs: list[LinearConstraint] = []
    equalities: list[LinearConstraint] = []
    for c in constraints:
        if c.is_constant():
            if not c.constant_truth():
                return SolveResult(None, c)
        elif c.rel == "=":
            equalities.append(c)
        else:
            ineqs.append(c)

    # substitution pass: var = shift + expr, recorded for back-substitution
    subs: list[tuple[str, dict[str, Fraction], Fraction]] = []
    while equalities:
        c = equalities.pop(0)
        if c.is_constant():
            if not c.constant_truth():
                return SolveResult(None, c)
            continue
        var = min(c.coeffs)
        a = c.coeffs[var]
        expr = {v: -cv / a for v, cv in c.coeffs.items() if v != var}
        shift = c.const / a
        subs.append((var, expr, shift))
        equalities = [_substituted(e, var, expr, shift) for e in equalities]
        nxt = []
        for ineq in (_substituted(e, var, expr, shift) for e in ineqs):
            if ineq.is_constant():
                if not ineq.constant_truth():
                    return SolveResult(None, ineq)
            else:
                nxt.append(ineq)
        ineqs = nxt

    # elimination pass
    ineq_vars = {v for c in ineqs for v in c.coeffs}
    steps: list[tuple[str, list[LinearConstraint], list[LinearConstraint]]] = []
    current = _prune(ineqs)
    while current:
        occurring = sorted({v for c in current for v in c.coeffs})

        def cost(v: str) -> tuple[int, str]:
            up = sum(1 for c in current if c.coeffs.get(v, 0) > 0)
            dn = sum(1 for c in current if c.coeffs.get(v, 0) < 0)
            return (up * dn, v)

        var = min(occurring, key=cost)
        pos = [c for c in current if c.coeffs.get(var, 0) > 0]
        neg = [c for c in current if c.coeffs.get(var, 0) < 0]
        rest = [c for c in current if var not in c.coeffs]
        steps.append((var, pos, neg))
        derived = []
        for p in pos:
            for n in neg:
                combined = _combine(p, n, var)
                if combined.is_constant():
                    if not combined.constant_truth():
                        return SolveResult(None, combined)
                else:
                    derived.append(combined)
        current = _prune(rest + derived)

    # back-substitution; FM guarantees each residual interval is nonempty.
    # A variable whose constraints were all consumed by earlier eliminations
    # is unconstrained in the projection, so any value extends; pin it first
    # since surviving bound expressions may mention it.
    values: Witness = {}
    stepped = {var for var, _, _ in steps}
    for var in sorted(ineq_vars - stepped):
        values[var] = Fraction(0)
    for var, pos, neg in reversed(steps):
        lo: Optional[Fraction] = None
        lo_strict = False
        hi: Optional[Fraction] = None
        hi_strict = False
        for c in pos:
            bound = (c.const - sum(cv * values[v] for v, cv in c.coeffs.items() if v != var)) / c.coeffs[var]
            if hi is None or bound < hi:
                hi, hi_strict = bound, c.rel == "<"
            elif bound == hi and c.rel == "<":
                hi_strict = True
        for c in neg:
            bound = (c.const - sum(cv * values[v] for v, cv in c.coeffs.items() if v != var)) / c.coeffs[var]
            if lo is None or bound > lo:
                lo, lo_strict = bound, c.rel == "<"
            elif bound == lo and c.rel == "<":
                lo_strict = True
        if lo is None and hi is None:
            values[var] = Fraction(0)
        elif lo is None:
            values[var] = hi - 1
        elif hi is None:
            values[var] = lo + 1
        else:
            assert lo < hi or (lo == hi and not lo_strict and not hi_strict)
            values[var] = (lo + hi) / 2
    for var in all_vars:
        if var not in values and all(var != s[0] for s in subs):
            values[var] = Fraction(0)
    for var, expr, shift in reversed(subs):
        values[var] = shift + sum(
            (cv * values[v] for v, cv in expr.items()), Fraction(0)
        )
    return SolveResult(values, None)


def solve_with_disjunctions(
    system: ConstraintSystem, max_branches: Optional[int] = None
) -> Optional[tuple[Witness, tuple[int, ...]]]:
    """First feasible branch of the disjunctive system, lexicographically.

    Branches are explored depth first in block order, pruning any prefix
    whose partial system is already infeasible; the winner is therefore the
    lexicographically least feasible choice of one block per group.  Every
    feasibility probe, including partial ones, counts against the budget
    (``max_branches``, else $PROPMOD_MAX_BRANCHES, else 10**6).
    """
    if max_branches is None:
        max_branches = int(os.environ.get("PROPMOD_MAX_BRANCHES", _DEFAULT_BRANCH_CAP))
    cap = max_branches
    count = 0

    def probe(cs: list[LinearConstraint]) -> SolveResult:
        nonlocal count
        count += 1
        if count > cap:
            raise ResourceCapError(count, cap)
        return solve(cs)

    base = list(system.hard)
    base_res = probe(base)
    if not base_res:
        return None
    groups = system.disjunctions
    if not groups:
        return base_res.witness, ()

    def descend(idx: int, acc: list[LinearConstraint], chosen: tuple[int, ...]):
        for bi, block in enumerate(groups[idx]):
            cand = acc + list(block)
            res = probe(cand)
            if not res:
                continue
            if idx + 1 == len(groups):
                return res.witness, chosen + (bi,)
            deeper = descend(idx + 1, cand, chosen + (bi,))
            if deeper is not None:
                return deeper
        return None

    return descend(0, base, ())
