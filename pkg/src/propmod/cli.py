"""Command-line front end.

Exit codes: 0 means yes (or plain success), 1 means a decided no or a failed
verification, 2 means bad input, an unsupported configuration, or a resource
cap.  The PROPMOD_MAX_BRANCHES environment variable bounds the feasibility
search; exceeding it exits 2 rather than returning a wrong answer.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .affine import AffineSemigroup, ModularInequality, gaps_from_inequality
from .census import census
from .checker import (
    UnsupportedCaseError,
    _permuted,
    check,
    verify_witness,
    witness_to_inequality,
)
from .feasibility import ResourceCapError
from .intervals import (
    RationalInterval,
    inequality_to_interval,
    interval_to_inequality,
    minimal_intervals,
)
from .numsem import from_generators
from .serial import (
    dumps,
    inequality_from_doc,
    inequality_to_doc,
    semigroup_from_doc,
    semigroup_to_doc,
    witness_from_doc,
    witness_to_doc,
)


def _ints(text: str) -> tuple[int, ...]:
    toks = [t for t in text.replace(" ", "").split(",") if t]
    if not toks:
        raise ValueError("empty integer list")
    return tuple(int(t) for t in toks)


def _fractions(text: str):
    from fractions import Fraction

    toks = [t for t in text.replace(" ", "").split(",") if t]
    return tuple(Fraction(t) for t in toks)


def _fmt_interval(I: RationalInterval) -> str:
    left = "[" if I.lo_closed else "]"
    right = "]" if I.hi_closed else "["
    hi = "oo" if I.hi is None else str(I.hi)
    return f"{left}{I.lo}, {hi}{right}"


def _interval_doc(I: RationalInterval) -> dict:
    return {"lo": str(I.lo), "hi": None if I.hi is None else str(I.hi)}


def _load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _restore_axes(M: ModularInequality, perm) -> ModularInequality:
    f = [0] * len(perm)
    g = [0] * len(perm)
    for pos, orig in enumerate(perm):
        f[orig] = M.f[pos]
        g[orig] = M.g[pos]
    return ModularInequality(tuple(f), M.b, tuple(g))


def cmd_check_numerical(args) -> int:
    S = from_generators(_ints(args.generators))
    pairs = minimal_intervals(S)
    if not pairs:
        print("not proportionally modular")
        return 1
    if args.format == "json":
        doc = {
            "proportionally_modular": True,
            "minimal": [_interval_doc(p.minimal) for p in pairs],
            "maximal": [_interval_doc(p.maximal) for p in pairs],
        }
        sys.stdout.write(dumps(doc))
    else:
        print("L~ = {" + ", ".join(_fmt_interval(p.minimal) for p in pairs) + "}")
        print("L^ = {" + ", ".join(_fmt_interval(p.maximal) for p in pairs) + "}")
    return 0


def cmd_intervals(args) -> int:
    if args.from_inequality:
        a, b, c = _ints(args.from_inequality)
        I = inequality_to_interval(a, b, c)
        if args.format == "json":
            sys.stdout.write(dumps(_interval_doc(I)))
        else:
            print(_fmt_interval(I))
    else:
        lo, hi = _fractions(args.to_inequality)
        a, b, c = interval_to_inequality(RationalInterval(lo, hi))
        if args.format == "json":
            sys.stdout.write(dumps({"a": a, "b": b, "c": c}))
        else:
            print(f"{a} x mod {b} <= {c} x")
    return 0


def _point_dump(S: AffineSemigroup) -> dict:
    box = tuple(max((g[k] for g in S.gaps), default=0) + 2 for k in range(S.dimension))
    members = [
        list(x)
        for x in itertools.product(*(range(c) for c in box))
        if x not in S.gaps
    ]
    return {"box": list(box), "gaps": [list(g) for g in sorted(S.gaps)], "members": members}


def cmd_check_affine(args) -> int:
    S = semigroup_from_doc(_load(args.semigroup))
    res = check(S)
    doc = {
        "proportionally_modular": res.proportionally_modular,
        "case": res.case,
        "permutation": list(res.permutation),
        "witness": None,
        "inequality": None,
    }
    if res.witness is not None:
        doc["witness"] = witness_to_doc(res.witness, res.permutation)
    if res.inequality is not None:
        doc["inequality"] = inequality_to_doc(res.inequality)
    if args.dump_points:
        doc["points"] = _point_dump(S)
    sys.stdout.write(dumps(doc))
    return 0 if res.proportionally_modular else 1


def cmd_from_inequality(args) -> int:
    M = ModularInequality(_ints(args.f), args.b, _ints(args.g))
    S = gaps_from_inequality(M)
    sys.stdout.write(dumps(semigroup_to_doc(S)))
    return 0


def cmd_to_inequality(args) -> int:
    w, perm = witness_from_doc(_load(args.witness))
    M = _restore_axes(witness_to_inequality(w), perm)
    sys.stdout.write(dumps(inequality_to_doc(M)))
    return 0


def cmd_verify(args) -> int:
    S = semigroup_from_doc(_load(args.semigroup))
    doc = _load(args.document)
    if "b" in doc:
        M = inequality_from_doc(doc)
        ok = gaps_from_inequality(M).gaps == S.gaps
    else:
        w, perm = witness_from_doc(doc)
        if sorted(perm) != list(range(S.dimension)):
            raise ValueError("permutation does not match the semigroup dimension")
        ok = verify_witness(_permuted(S, perm), w)
    print("YES" if ok else "NO")
    return 0 if ok else 1


def cmd_census(args) -> int:
    rows = census(args.max_genus)
    if args.format == "json":
        sys.stdout.write(
            dumps([{"genus": r.genus, "total": r.total, "propmod": r.propmod} for r in rows])
        )
    elif args.format == "csv":
        print("genus,total,propmod")
        for r in rows:
            print(f"{r.genus},{r.total},{r.propmod}")
    else:
        print(f"{'genus':>5} {'total':>8} {'propmod':>8}")
        for r in rows:
            print(f"{r.genus:>5} {r.total:>8} {r.propmod:>8}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="propmod",
        description="decide proportional modularity of numerical and N^n-semigroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-numerical", help="defining intervals of a numerical semigroup")
    p.add_argument("--generators", required=True, help="comma-separated generators")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check_numerical)

    p = sub.add_parser("intervals", help="convert between ax mod b <= cx and its interval")
    mx = p.add_mutually_exclusive_group(required=True)
    mx.add_argument("--from-inequality", metavar="A,B,C")
    mx.add_argument("--to-inequality", metavar="LO,HI")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("check-affine", help="decide an N^n-semigroup from its JSON document")
    p.add_argument("semigroup", help="semigroup JSON file")
    p.add_argument("--dump-points", action="store_true", help="include gap/member point lists")
    p.set_defaults(func=cmd_check_affine)

    p = sub.add_parser("from-inequality", help="gap document of f(x) mod b <= g(x)")
    p.add_argument("--f", required=True, help="comma-separated f coefficients")
    p.add_argument("--b", required=True, type=int, help="modulus")
    p.add_argument("--g", required=True, help="comma-separated g coefficients")
    p.set_defaults(func=cmd_from_inequality)

    p = sub.add_parser("to-inequality", help="explicit inequality of a witness document")
    p.add_argument("witness", help="witness JSON file")
    p.set_defaults(func=cmd_to_inequality)

    p = sub.add_parser("verify", help="check a witness or inequality against a semigroup")
    p.add_argument("semigroup", help="semigroup JSON file")
    p.add_argument("document", help="witness or inequality JSON file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="per-genus counts of proportionally modular semigroups")
    p.add_argument("--max-genus", type=int, default=15)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_census)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, IndexError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedCaseError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
