"""JSON documents for semigroups, inequalities, and witnesses.

One document shape per object, rationals as exact "num/den" strings in lowest
terms, every list in a canonical order, so identical inputs always serialize
to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .affine import AffineSemigroup, ModularInequality
from .checker import Case1Witness, Case2Witness, Witness


def _frac(s) -> Fraction:
    return Fraction(str(s))


def semigroup_to_doc(S: AffineSemigroup) -> dict:
    doc = {"dimension": S.dimension, "gaps": [list(g) for g in sorted(S.gaps)]}
    if S.generators is not None:
        doc["generators"] = [list(s) for s in sorted(S.generators)]
    return doc


def semigroup_from_doc(doc: dict) -> AffineSemigroup:
    gens = doc.get("generators")
    return AffineSemigroup(
        int(doc["dimension"]),
        frozenset(tuple(g) for g in doc["gaps"]),
        None if gens is None else frozenset(tuple(s) for s in gens),
    )


def inequality_to_doc(M: ModularInequality) -> dict:
    return {"f": list(M.f), "b": M.b, "g": list(M.g)}


def inequality_from_doc(doc: dict) -> ModularInequality:
    return ModularInequality(
        tuple(int(v) for v in doc["f"]), int(doc["b"]), tuple(int(v) for v in doc["g"])
    )


def witness_to_doc(w: Witness, permutation: tuple[int, ...]) -> dict:
    """Case 1 is rendered as the all-head shape: t = dimension, no directions."""
    if isinstance(w, Case1Witness):
        case, t, mu, nu = 1, len(w.p), (), ()
    else:
        case, t, mu, nu = 2, w.t, w.mu, w.nu
    return {
        "case": case,
        "t": t,
        "p": [str(x) for x in w.p],
        "q": [str(x) for x in w.q],
        "mu": [[str(a), str(b)] for a, b in mu],
        "nu": [[str(a), str(b)] for a, b in nu],
        "permutation": list(permutation),
    }


def witness_from_doc(doc: dict) -> tuple[Witness, tuple[int, ...]]:
    p = tuple(_frac(x) for x in doc["p"])
    q = tuple(_frac(x) for x in doc["q"])
    perm = tuple(int(k) for k in doc["permutation"])
    if int(doc["case"]) == 1:
        return Case1Witness(p, q), perm
    mu = tuple((_frac(a), _frac(b)) for a, b in doc["mu"])
    nu = tuple((_frac(a), _frac(b)) for a, b in doc["nu"])
    return Case2Witness(int(doc["t"]), p, q, mu, nu), perm


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
