"""``softtop`` command line.

Exit codes: 0 ok, 1 validation failure or negative verdict, 2 usage error,
3 resource cap exceeded, 4 law counterexample found.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import constructions as cons
from . import harness
from .document import (
    DocumentError,
    StructureDocument,
    emit,
    parse,
    stringify,
)
from .errors import ResourceCapExceeded, SoftTopError, UnknownClaim
from .funcspace import FunctionSpace
from .mapping import is_continuous, is_continuous_at
from .softcore import SoftPoint
from .topology import SeparationVariant, closure, generate_from_subbase, validate_axioms

OK, FAILED, USAGE, CAP, LAW_COUNTEREXAMPLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> StructureDocument:
    return parse(_read(path))


def _names(arg: str) -> list[str]:
    return [s.strip() for s in arg.split(",") if s.strip()]


def _lookup(table: dict, name: str, what: str):
    if name not in table:
        raise UsageError(f"no {what} named {name!r}; have {sorted(table)}")
    return table[name]


def _write(doc: StructureDocument, out: str | None) -> None:
    text = emit(doc)
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_validate(args) -> int:
    try:
        doc = parse(_read(args.file))
    except DocumentError as exc:
        for d in exc.diagnostics:
            print(d)
        return FAILED
    for name, sp in doc.spaces.items():
        print(f"space {name}: {validate_axioms(sp.context, sp.opens)} ({len(sp.opens)} opens)")
    return OK


def cmd_generate(args) -> int:
    doc = _load(args.file)
    gens = [_lookup(doc.soft_sets, n, "soft set") for n in _names(args.subbase)]
    if not gens:
        raise UsageError("--subbase needs at least one soft set")
    spaces = {s for s, _ in gens}
    if len(spaces) != 1:
        raise UsageError("subbase members must live on one space")
    base_space = spaces.pop()
    ctx = doc.spaces[base_space].context
    sp = generate_from_subbase(ctx, [F for _, F in gens])
    name = args.name or f"{base_space}_generated"
    out = StructureDocument(doc.params, {name: sp})
    _write(out, args.out)
    if args.out not in (None, "-"):
        print(f"{name}: {len(sp.opens)} opens generated from {len(gens)} soft sets")
    return OK


def cmd_closure(args) -> int:
    doc = _load(args.file)
    sp = _lookup(doc.spaces, args.space, "space")
    s, F = _lookup(doc.soft_sets, args.set, "soft set")
    if s != args.space:
        raise UsageError(f"soft set {args.set!r} lives on {s!r}, not {args.space!r}")
    print(json.dumps(closure(sp, F).literal()))
    return OK


def cmd_continuity(args) -> int:
    doc = _load(args.file)
    src_name, tgt_name, f = _lookup(doc.mappings, args.map, "mapping")
    X, Y = doc.spaces[src_name], doc.spaces[tgt_name]
    if args.at:
        parts = _names(args.at)
        if len(parts) != 2:
            raise UsageError("--at expects ELEMENT,PARAM")
        x, e = parts
        if x not in X.context._elem_index or e not in X.context._param_index:
            raise UsageError(f"{x}_{e} is not a soft point of {src_name}")
        ok = is_continuous_at(f, X, Y, SoftPoint(x, e))
        print(f"{args.map} at {x}_{e}: {'continuous' if ok else 'not continuous'}")
        return OK if ok else FAILED
    v = is_continuous(f, X, Y)
    if v.holds:
        print(f"{args.map}: continuous")
        return OK
    print(f"{args.map}: not continuous; preimage of open {json.dumps(v.witness.literal())} "
          f"is not open")
    return FAILED


def _construct(args, build, sep) -> int:
    doc = _load(args.file)
    names = _names(args.spaces)
    if len(names) < 1:
        raise UsageError("--spaces needs at least one space")
    family = [_lookup(doc.spaces, n, "space") for n in names]
    sp = stringify(build(family))
    name = args.name or sep.join(names)
    _write(StructureDocument(doc.params, {name: sp}), args.out)
    return OK


def cmd_product(args) -> int:
    return _construct(args, cons.product_space, "*")


def cmd_sum(args) -> int:
    return _construct(args, cons.sum_space, "+")


def cmd_funcspace(args) -> int:
    doc = _load(args.file)
    X = _lookup(doc.spaces, args.domain, "space")
    Y = _lookup(doc.spaces, args.codomain, "space")
    fs = FunctionSpace(X, Y)
    sp = stringify(fs)
    name = args.name or f"{args.codomain}^{args.domain}"
    table = [{"index": row["index"], "name": row["name"],
              "map": {str(k): str(v) for k, v in row["map"].items()}}
             for row in fs.index_table()]
    _write(StructureDocument(doc.params, {name: sp}, tables={name: table}), args.out)
    return OK


def cmd_theorems(args) -> int:
    claims = list(harness.CLAIMS) if args.claim.lower() == "all" else [args.claim]
    for c in claims:
        harness.get_claim(c)
    bounds = harness.Bounds(max_x=args.max_x, max_y=args.max_y, max_e=args.max_e,
                            seeds=args.seeds)
    samples = None if args.exhaustive or args.samples is None else args.samples
    reports = []
    for c in claims:
        if harness.get_claim(c).id == "THM4":
            variants = [args.variant] if args.variant else list(SeparationVariant)
            for v in variants:
                reports.append(harness.run_claim(c, bounds, samples=samples, seed=args.seed,
                                                 variant=v))
        else:
            reports.append(harness.run_claim(c, bounds, samples=samples, seed=args.seed))
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary())
            for cex in r.counterexamples[:args.show]:
                d = cex.to_dict()
                print(f"  counterexample: {json.dumps(d.get('shrunk', d['instance']))}")
                print(f"    witness: {json.dumps(d.get('shrunk_witness', d['witness']))}")
    law_failed = any(r.kind == harness.LAW and r.counterexamples for r in reports)
    return LAW_COUNTEREXAMPLE if law_failed else OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="softtop", description="Finite soft topological spaces.")
    p.add_argument("--version", action="version", version=f"softtop {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="load a document and report the axioms per space")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("generate", help="topology generated by named soft sets")
    s.add_argument("file")
    s.add_argument("--subbase", required=True, help="comma-separated soft-set names")
    s.add_argument("--out")
    s.add_argument("--name")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("closure", help="closure of a soft set")
    s.add_argument("file")
    s.add_argument("--space", required=True)
    s.add_argument("--set", required=True)
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("continuity", help="global or pointwise continuity of a mapping")
    s.add_argument("file")
    s.add_argument("--map", required=True)
    s.add_argument("--at", help="ELEMENT,PARAM")
    s.set_defaults(func=cmd_continuity)

    for cmd, fn in (("product", cmd_product), ("sum", cmd_sum)):
        s = sub.add_parser(cmd, help=f"{cmd} of named spaces")
        s.add_argument("file")
        s.add_argument("--spaces", required=True)
        s.add_argument("--out")
        s.add_argument("--name")
        s.set_defaults(func=fn)

    s = sub.add_parser("funcspace", help="pointwise function space with its index table")
    s.add_argument("file")
    s.add_argument("--domain", required=True)
    s.add_argument("--codomain", required=True)
    s.add_argument("--out")
    s.add_argument("--name")
    s.set_defaults(func=cmd_funcspace)

    s = sub.add_parser("theorems", help="brute-force check of the registered claims")
    s.add_argument("--claim", required=True, help="claim id or 'all'")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="scan the bounded grid (default)")
    mode.add_argument("--samples", type=int, metavar="N", help="run N seeded random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--variant", choices=[v.value for v in SeparationVariant])
    s.add_argument("--json", action="store_true")
    s.add_argument("--max-x", type=int, default=2)
    s.add_argument("--max-y", type=int, default=2)
    s.add_argument("--max-e", type=int, default=2)
    s.add_argument("--seeds", type=int, default=3, help="seeds per random grid cell")
    s.add_argument("--show", type=int, default=3, help="counterexamples printed per claim")
    s.set_defaults(func=cmd_theorems)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except UnknownClaim as exc:
        print(f"error: {exc}; known: {', '.join(harness.CLAIMS)}", file=sys.stderr)
        return USAGE
    except DocumentError as exc:
        for d in exc.diagnostics:
            print(d, file=sys.stderr)
        return FAILED
    except ResourceCapExceeded as exc:
        print(f"error: resource cap exceeded: {exc}", file=sys.stderr)
        return CAP
    except SoftTopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
