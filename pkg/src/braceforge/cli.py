"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure (axiom violation,
counterexample, vacuous claim), 2 I/O, format or parameter error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, constructions, enumeration, harness
from .brace import analyze, check_identities, direct_sum, two_sided_witness
from .errors import BraceForgeError, DocumentError, GroupAxiomError, BraceAxiomError
from .named import GROUP_NAMES, identify, named_group
from .ybe import build_r, verify_braid, verify_involutive, verify_nondegenerate

EXIT_OK, EXIT_MATH, EXIT_IO = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str):
    doc = catalog.read_document(path)
    return doc, catalog.document_brace(doc)


def _summary(B) -> str:
    meta = catalog.brace_document(B)["metadata"]
    return f"order={B.order} two_sided={str(meta['two_sided']).lower()} classical={str(meta['classical']).lower()}"


# --- subcommands -------------------------------------------------------------


def cmd_construct(args) -> int:
    name = args.name
    if name == "example1":
        B = constructions.example1(args.m)
        params = {"m": args.m}
    elif name in ("example2", "example3"):
        fn = constructions.example2 if name == "example2" else constructions.example3
        B = fn(args.n, args.mod)
        params = {"n": args.n, "m": args.mod}
    elif name == "trivial":
        B = constructions.trivial_brace(named_group(args.group))
        params = {"group": args.group}
    else:  # direct-sum
        if not args.part:
            raise DocumentError("direct-sum needs at least one --part document")
        B = direct_sum([_load(p)[1] for p in args.part])
        params = {"parts": list(args.part)}
    doc = catalog.brace_document(B, construction=name, parameters=params)
    text = catalog.canonical_dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(_summary(B))
    else:
        sys.stdout.write(text)
        print(_summary(B), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = catalog.read_document(args.path)
    try:
        B = catalog.document_brace(doc)
    except (GroupAxiomError, BraceAxiomError) as exc:
        print(f"FAIL {type(exc).__name__}: {exc}")
        print(f"witness: {exc.witness}")
        return EXIT_MATH
    ok = True
    print(f"order: {B.order}")
    for r in check_identities(B):
        if r.holds is None:
            print(f"{r.name}: n/a (not two-sided)")
        elif r.holds:
            print(f"{r.name}: OK")
        else:
            ok = False
            print(f"{r.name}: FAIL witness={r.witness}")
    w = two_sided_witness(B)
    print(f"two-sided: {'yes' if w is None else f'no (witness {w})'}")
    for key in catalog.metadata_mismatches(doc, B):
        ok = False
        print(f"metadata {key}: FAIL does not match recomputation")
    return EXIT_OK if ok else EXIT_MATH


def cmd_analyze(args) -> int:
    _, B = _load(args.path)
    report = analyze(B).as_dict()
    report["add_group"] = identify(B.add)
    report["mul_group"] = identify(B.mul)
    _emit(catalog.canonical_dumps(report), args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    corpora = enumeration.corpus(args.max)
    names = {}
    for n in corpora:
        for G in enumeration.all_groups(n):
            names[G.key] = identify(G)
    catalog.write_catalog(args.out, {n: c.braces for n, c in corpora.items()}, names)
    for n, c in corpora.items():
        print(f"order {n}: {len(c)} braces")
    print(f"total: {sum(len(c) for c in corpora.values())}")
    if args.oracle_check:
        agree = True
        for n in range(1, min(args.max, enumeration.MAX_ORACLE_ORDER) + 1):
            for G in enumeration.all_groups(n):
                lam = enumeration.table_pairs(enumeration.braces_on(G))
                raw = enumeration.table_pairs(enumeration.braces_raw_oracle(G))
                if lam != raw:
                    agree = False
                    print(f"oracle disagreement on {identify(G)}: lambda {len(lam)} vs raw {len(raw)}")
        print(f"oracle agreement: {'OK' if agree else 'FAILED'}")
        if not agree:
            return EXIT_MATH
    return EXIT_OK


def cmd_ybe(args) -> int:
    _, B = _load(args.path)
    r = build_r(B)
    braid, nondeg, invol = verify_braid(r), verify_nondegenerate(r), verify_involutive(r)
    print(
        f"braid: {'OK' if braid else 'FAIL'}, nondegenerate: {'OK' if nondeg else 'FAIL'}, "
        f"involutive: {'YES' if invol else 'NO'}"
    )
    if args.emit:
        Path(args.emit).write_text(catalog.canonical_dumps(r.as_dict()), encoding="utf-8")
    return EXIT_OK if braid and nondeg else EXIT_MATH


def cmd_theorems(args) -> int:
    loaded = catalog.load_catalog(args.catalog)
    braces = [B for _, B in loaded.braces]
    sources = [bid for bid, _ in loaded.braces]
    if args.with_examples:
        for name, B in harness.constructed_examples():
            braces.append(B)
            sources.append(name)
    results = harness.run_claims(braces)
    for r in results:
        if r.witness is not None:
            r.witness["source"] = sources[r.witness["brace"]]
    print(harness.format_table(results))
    for bid, reason in loaded.rejected:
        print(f"rejected {bid}: {reason}")
    report = {
        "braces_checked": len(braces),
        "claims": [r.as_dict() for r in results],
        "rejected": [{"id": bid, "reason": reason} for bid, reason in loaded.rejected],
    }
    if args.out:
        Path(args.out).write_text(catalog.canonical_dumps(harness._jsonable(report)), encoding="utf-8")
    return EXIT_OK if harness.all_in_scope_verified(results) else EXIT_MATH


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braceforge", description="Finite skew braces: construct, verify, enumerate.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an explicit brace and write its document")
    c.add_argument("name", choices=["example1", "example2", "example3", "trivial", "direct-sum"])
    c.add_argument("--m", type=int, default=1, help="example1: carrier Z_{2m}")
    c.add_argument("--n", type=int, default=2, help="matrix degree")
    c.add_argument("--mod", type=int, default=2, help="coefficient modulus")
    c.add_argument("--group", default="Z2", help=f"trivial: one of {', '.join(GROUP_NAMES)} (or Zk)")
    c.add_argument("--part", action="append", help="direct-sum: a brace document (repeatable)")
    c.add_argument("--out", help="write the document here instead of stdout")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="re-validate a document and check all identities")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="structural report for a document")
    a.add_argument("path")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="enumerate all braces up to an order into a catalog")
    e.add_argument("--max", type=int, required=True)
    e.add_argument("--out", required=True, help="catalog directory")
    e.add_argument("--oracle-check", action="store_true", help="cross-check against the raw oracle (orders <= 6)")
    e.set_defaults(func=cmd_enumerate)

    y = sub.add_parser("ybe", help="Yang-Baxter solution of a brace document")
    y.add_argument("path")
    y.add_argument("--emit", help="write the tabulated solution here")
    y.set_defaults(func=cmd_ybe)

    t = sub.add_parser("theorems", help="run the claim registry over a catalog")
    t.add_argument("catalog")
    t.add_argument("--with-examples", action="store_true", help="also check the explicit constructions")
    t.add_argument("--out", help="write the JSON report here")
    t.set_defaults(func=cmd_theorems)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GroupAxiomError, BraceAxiomError) as exc:
        print(f"FAIL {type(exc).__name__}: {exc}")
        print(f"witness: {exc.witness}")
        return EXIT_MATH
    except (BraceForgeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
