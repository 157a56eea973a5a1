"""Command-line front end.

Every subcommand reads a category (from a document file or the gallery),
runs one decision procedure or theorem check, and prints either human
lines or a JSON report.  Exit codes: 0 the check passed, 1 it failed and a
counterexample was reported, 2 the input could not be used (parse error,
bad flags, unmet precondition), 3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from typing import Any, Sequence

from . import biproduct as bp
from . import report as rp
from .core import (
    FinCat,
    MalformedCategoryError,
    PreconditionError,
    classify_morphism,
    find_zero_structure,
    validate_category,
)
from .dsl import DslError, category_to_doc, doc_to_category, parse, render
from .gallery import (
    GalleryEntry,
    ResourceLimitError,
    SpecError,
    build_by_name,
    gallery_names,
    gallery_registry,
)
from .oracle import oracle_biproducts
from .universal import find_coproducts, find_products

PAIR_HELP = "ordered pair of object names, e.g. --pair A,B"


def _fail_usage(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def _load(path: str, free_compose: bool):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise _fail_usage(f"cannot read {path}: {e.strerror}")
    doc = parse(text)
    return doc_to_category(doc, free_compose=free_compose)


def _obj(cat: FinCat, name: str) -> int:
    try:
        return cat.obj_id(name)
    except PreconditionError:
        raise _fail_usage(
            f"unknown object {name!r} (objects: {', '.join(cat.objects)})"
        )


def _parse_pair(cat: FinCat, text: str) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise _fail_usage(f"--pair wants two comma-separated names, got {text!r}")
    return _obj(cat, parts[0]), _obj(cat, parts[1])


def _emit(args, builder: rp.ReportBuilder, text_lines: list[str]) -> None:
    if args.json:
        print(rp.dumps(builder.finish()))
    else:
        for line in text_lines:
            print(line)


def _verdict_line(entry: dict[str, Any]) -> str:
    status = "PASS" if entry["ok"] else "FAIL"
    parts = [f"{status} {entry['label']}: {entry['rule']}"]
    if entry["witness"]:
        kv = " ".join(f"{k}={v}" for k, v in entry["witness"].items())
        parts.append(f"  [{kv}]")
    return "".join(parts)


# ----------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    cat, _, _ = _load(args.file, args.free_compose)
    b = rp.ReportBuilder(_echo(args), cat)
    v = validate_category(cat)
    b.add("validate", v)
    _emit(args, b, [_verdict_line(b.verdicts[0])])
    return 0 if v.ok else 1


def cmd_classify(args) -> int:
    cat, _, _ = _load(args.file, args.free_compose)
    b = rp.ReportBuilder(_echo(args), cat)
    if args.morphism is not None:
        try:
            mids = [cat.mor_id(args.morphism)]
        except PreconditionError:
            raise _fail_usage(f"unknown morphism {args.morphism!r}")
    else:
        mids = list(range(cat.n_morphisms))
    rows = []
    for m in mids:
        c = classify_morphism(cat, m)
        rows.append(
            {
                "morphism": cat.morphisms[m],
                "dom": cat.objects[cat.dom[m]],
                "cod": cat.objects[cat.cod[m]],
                "constant": c.constant,
                "coconstant": c.coconstant,
                "zero": c.zero,
            }
        )
    b.extra["classification"] = rows
    lines = [
        f"{r['morphism']}: {r['dom']} -> {r['cod']}"
        f"  constant={r['constant']} coconstant={r['coconstant']} zero={r['zero']}"
        for r in rows
    ]
    _emit(args, b, lines)
    return 0


def cmd_zeros(args) -> int:
    cat, _, _ = _load(args.file, args.free_compose)
    b = rp.ReportBuilder(_echo(args), cat)
    zs, v = find_zero_structure(cat)
    b.add("zeros", v)
    lines = [_verdict_line(b.verdicts[0])]
    if zs is not None:
        matrix = {
            cat.objects[a]: {
                cat.objects[bb]: cat.mor_label(zs.zero_of(a, bb))
                for bb in range(cat.n_objects)
            }
            for a in range(cat.n_objects)
        }
        b.certify("zero_structure", matrix)
        for a, row in matrix.items():
            for bb, name in row.items():
                lines.append(f"  zero[{a},{bb}] = {name}")
    _emit(args, b, lines)
    return 0 if v.ok else 1


def _universal_cmd(args, kind: str) -> int:
    cat, _, _ = _load(args.file, args.free_compose)
    b = rp.ReportBuilder(_echo(args), cat)
    a, bb = _parse_pair(cat, args.pair)
    pa, pb = cat.objects[a], cat.objects[bb]
    if kind == "products":
        ws = find_products(cat, a, bb)
        payload = [rp.span_to_json(cat, w) for w in ws]
    else:
        ws = find_coproducts(cat, a, bb)
        payload = [rp.cospan_to_json(cat, w) for w in ws]
    lines = []
    if ws:
        b.add(kind, rp.Verdict.passed(f"{kind[:-1]}_found", count=len(ws)))
        for k, pw in enumerate(payload):
            b.certify(f"{kind[:-1]}[{pa},{pb}][{k}]", pw)
            lines.append(f"{kind[:-1]}[{pa},{pb}][{k}] = {pw}")
    else:
        b.add(
            kind,
            rp.Verdict.failed(
                f"no_{kind[:-1]}_in_fragment", a=a, b=bb, candidates=cat.n_objects
            ),
        )
    lines.insert(0, _verdict_line(b.verdicts[0]))
    _emit(args, b, lines)
    return 0 if ws else 1


def cmd_products(args) -> int:
    return _universal_cmd(args, "products")


def cmd_coproducts(args) -> int:
    return _universal_cmd(args, "coproducts")


def cmd_biproducts(args) -> int:
    cat, _, _ = _load(args.file, args.free_compose)
    b = rp.ReportBuilder(_echo(args), cat)
    if args.all_pairs:
        pairs = list(itertools.product(range(cat.n_objects), repeat=2))
    else:
        pairs = [_parse_pair(cat, args.pair)]
    lines = []
    any_found = False
    oracle_ok = True
    found_pairs = []
    for a, bb in pairs:
        ws = bp.find_biproducts(cat, a, bb)
        pa, pb = cat.objects[a], cat.objects[bb]
        if ws:
            any_found = True
            found_pairs.append({"a": pa, "b": pb, "count": len(ws)})
            for k, w in enumerate(ws):
                b.certify(f"biproduct[{pa},{pb}][{k}]", rp.witness_to_json(cat, w))
            lines.append(f"({pa}, {pb}): {len(ws)} biproduct witness(es)")
        if args.oracle:
            ows = oracle_biproducts(cat, a, bb)
            if ws != ows:
                oracle_ok = False
                b.add(
                    f"oracle[{pa},{pb}]",
                    rp.Verdict.failed(
                        "oracle_mismatch", a=a, b=bb, search=len(ws), oracle=len(ows)
                    ),
                )
    b.extra["pairs"] = found_pairs
    if args.oracle and oracle_ok:
        b.add("oracle", rp.Verdict.passed("oracle_agrees", pairs=len(pairs)))
    if args.all_pairs:
        b.add("biproducts", rp.Verdict.passed("all_pairs_swept", found=len(found_pairs)))
        lines.append(f"{len(found_pairs)} of {len(pairs)} pairs admit a biproduct")
    elif any_found:
        b.add("biproducts", rp.Verdict.passed("biproduct_found", count=found_pairs[0]["count"]))
    else:
        a, bb = pairs[0]
        b.add(
            "biproducts",
            rp.Verdict.failed("no_biproduct_in_fragment", a=a, b=bb),
        )
        lines.append(
            f"no biproduct for ({cat.objects[a]}, {cat.objects[bb]}) in this fragment"
        )
    lines.insert(0, _verdict_line(b.verdicts[-1]))
    _emit(args, b, lines)
    if args.oracle and not oracle_ok:
        return 1
    if args.all_pairs:
        return 0
    return 0 if any_found else 1


def cmd_check_witness(args) -> int:
    cat, cmon, witnesses = _load(args.file, args.free_compose)
    if args.witness not in witnesses:
        raise _fail_usage(
            f"unknown witness {args.witness!r} "
            f"(declared: {', '.join(sorted(witnesses)) or 'none'})"
        )
    w = witnesses[args.witness]
    a, bb = cat.cod[w.p_a], cat.cod[w.p_b]
    b = rp.ReportBuilder(_echo(args), cat)
    if args.definition == "new":
        v = bp.check_biproduct(cat, w, a, bb)
    elif args.definition == "zero":
        zs, zv = find_zero_structure(cat)
        if zs is None:
            raise PreconditionError(
                "the zero-morphism definition needs a zero structure, "
                f"but {zv.rule} at {rp.render_witness(cat, zv.witness)}"
            )
        v = bp.check_zero_def_biproduct(cat, zs, w, a, bb)
    else:
        if cmon is None:
            raise PreconditionError(
                "the enriched definition needs cmon blocks in the document"
            )
        v = bp.check_cmon_biproduct(cat, cmon, w, a, bb)
    b.add(f"check-witness[{args.witness}]", v)
    if v.ok:
        b.certify(args.witness, rp.witness_to_json(cat, w))
    _emit(args, b, [_verdict_line(b.verdicts[0])])
    return 0 if v.ok else 1


def _theorem_lemma(cat, b) -> bool:
    checked = 0
    ok = True
    for a, bb in itertools.product(range(cat.n_objects), repeat=2):
        for k, w in enumerate(bp.find_biproducts(cat, a, bb)):
            v = bp.verify_lemma_zero(cat, w)
            checked += 1
            if not v.ok:
                b.add(f"lemma[{cat.objects[a]},{cat.objects[bb]}][{k}]", v)
                ok = False
    b.add("lemma", rp.Verdict.passed("lemma_checked", witnesses=checked) if ok else rp.Verdict.failed("lemma_violated", witnesses=checked))
    return ok


def _theorem_uniqueness(cat, b) -> bool:
    checked = 0
    ok = True
    for a, bb in itertools.product(range(cat.n_objects), repeat=2):
        ws = bp.find_biproducts(cat, a, bb)
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                v = bp.verify_uniqueness(cat, ws[i], ws[j])
                checked += 1
                if not v.ok:
                    b.add(f"uniqueness[{cat.objects[a]},{cat.objects[bb]}][{i},{j}]", v)
                    ok = False
    b.add(
        "uniqueness",
        rp.Verdict.passed("uniqueness_checked", pairs=checked)
        if ok
        else rp.Verdict.failed("uniqueness_violated", pairs=checked),
    )
    return ok


def _theorem_nary(cat, b) -> bool:
    built = 0
    ok = True
    for a, bb, c in itertools.product(range(cat.n_objects), repeat=3):
        w_ab = bp.first_biproduct(cat, a, bb)
        if w_ab is None:
            continue
        w_pc = bp.first_biproduct(cat, w_ab.carrier, c)
        if w_pc is None:
            continue
        t = bp.ternary_from_nested(cat, w_ab, w_pc)
        v = bp.check_nary_biproduct(cat, t)
        built += 1
        if not v.ok:
            b.add(f"nary[{cat.objects[a]},{cat.objects[bb]},{cat.objects[c]}]", v)
            ok = False
    b.add(
        "nary",
        rp.Verdict.passed("ternary_checked", triples=built)
        if ok
        else rp.Verdict.failed("ternary_violated", triples=built),
    )
    return ok


def _theorem_sum_eq_prod(cat, b) -> bool:
    firsts = {}
    for a, bb in itertools.product(range(cat.n_objects), repeat=2):
        w = bp.first_biproduct(cat, a, bb)
        if w is not None:
            firsts[(a, bb)] = w
    checked = 0
    ok = True
    for (a, bb), w1 in firsts.items():
        for (c, d), w2 in firsts.items():
            for f in cat.hom(a, c):
                for g in cat.hom(bb, d):
                    v = bp.check_sum_equals_product_of_morphisms(cat, w1, w2, f, g)
                    checked += 1
                    if not v.ok:
                        b.add(
                            f"sum-eq-prod[{cat.morphisms[f]},{cat.morphisms[g]}]", v
                        )
                        ok = False
    b.add(
        "sum-eq-prod",
        rp.Verdict.passed("sum_equals_product_checked", squares=checked)
        if ok
        else rp.Verdict.failed("sum_equals_product_violated", squares=checked),
    )
    return ok


def cmd_verify(args) -> int:
    cat, cmon, _ = _load(args.file, args.free_compose)
    b = rp.ReportBuilder(_echo(args), cat)
    theorem = args.theorem
    if theorem == "lemma":
        ok = _theorem_lemma(cat, b)
    elif theorem == "corollary":
        v = bp.verify_corollary_zeros(cat)
        b.add("corollary", v)
        ok = v.ok
    elif theorem == "uniqueness":
        ok = _theorem_uniqueness(cat, b)
    elif theorem == "nary":
        ok = _theorem_nary(cat, b)
    elif theorem == "sum-eq-prod":
        ok = _theorem_sum_eq_prod(cat, b)
    else:
        assignment, av = bp.canonical_assignment(cat)
        if assignment is None:
            raise PreconditionError(
                "the theorem needs a biproduct for every pair; "
                f"none for {rp.render_witness(cat, av.witness)}"
            )
        v = bp.verify_ambiadjunction(cat, assignment)
        b.add("ambiadjunction", v)
        ok = v.ok
    _emit(args, b, [_verdict_line(e) for e in b.verdicts])
    return 0 if ok else 1


def cmd_gallery(args) -> int:
    params: dict[str, Any] = {}
    if args.max_size is not None:
        params["max_size"] = args.max_size
    if args.size is not None:
        params["size"] = args.size
    if args.groups is not None:
        params["groups"] = [g.strip() for g in args.groups.split(",")]
    if args.seed is not None:
        params["seed"] = args.seed
    if args.max_objects is not None:
        params["max_objects"] = args.max_objects
    if args.max_morphisms is not None:
        params["max_morphisms"] = args.max_morphisms
    entry = build_by_name(args.name, **params)
    cat = entry.cat
    b = rp.ReportBuilder(_echo(args), cat)
    b.extra["expect"] = _expect_json(entry)
    lines = [
        f"{args.name}: {cat.n_objects} objects, {cat.n_morphisms} morphisms",
        f"objects: {', '.join(cat.objects)}",
    ]
    if args.emit is not None:
        doc = category_to_doc(cat, cmon=entry.cmon)
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(render(doc))
        lines.append(f"wrote {args.emit}")
    b.add("gallery", rp.Verdict.passed("gallery_built", morphisms=cat.n_morphisms))
    _emit(args, b, lines)
    return 0


def _expect_json(entry: GalleryEntry) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for k, v in entry.expect.items():
        if isinstance(v, frozenset):
            out[k] = sorted(list(p) for p in v)
        elif isinstance(v, tuple):
            out[k] = [list(x) if isinstance(x, tuple) else x for x in v]
        else:
            out[k] = v
    return out


def cmd_report(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    names = (
        [n.strip() for n in args.names.split(",")]
        if args.names
        else [e.name for e in gallery_registry()]
    )
    stock = {e.name: e for e in gallery_registry()}
    b = rp.ReportBuilder(_echo(args))
    categories = []
    csv_rows = []
    summary_names = []
    summary_counts = []
    for name in names:
        entry = stock.get(name) or build_by_name(name)
        cat = entry.cat
        zs, _ = find_zero_structure(cat)
        pair_rows = []
        counts = [[0] * cat.n_objects for _ in range(cat.n_objects)]
        n_pairs_with = 0
        for a, bb in itertools.product(range(cat.n_objects), repeat=2):
            n_p = len(find_products(cat, a, bb))
            n_c = len(find_coproducts(cat, a, bb))
            n_b = len(bp.find_biproducts(cat, a, bb))
            counts[a][bb] = n_b
            if n_b:
                n_pairs_with += 1
            pair_rows.append(
                {
                    "a": cat.objects[a],
                    "b": cat.objects[bb],
                    "products": n_p,
                    "coproducts": n_c,
                    "biproducts": n_b,
                }
            )
            csv_rows.append(
                {
                    "category": name,
                    "object_a": cat.objects[a],
                    "object_b": cat.objects[bb],
                    "products": n_p,
                    "coproducts": n_c,
                    "biproducts": n_b,
                }
            )
        categories.append(
            {
                "name": name,
                "fingerprint": rp.category_fingerprint(cat),
                "objects": cat.n_objects,
                "morphisms": cat.n_morphisms,
                "zero_structure": zs is not None,
                "pairs": pair_rows,
            }
        )
        fig_path = os.path.join(args.out, f"{name}_biproducts.png")
        rp.write_existence_figure(cat, counts, fig_path, f"{name}: biproduct witnesses")
        summary_names.append(name)
        summary_counts.append(n_pairs_with)
    b.extra["categories"] = categories
    b.add("report", rp.Verdict.passed("report_written", categories=len(categories)))
    csv_path = os.path.join(args.out, "pairs.csv")
    rp.write_pairs_csv(csv_path, csv_rows)
    rp.write_summary_figure(
        summary_names, summary_counts, os.path.join(args.out, "summary.png")
    )
    json_path = os.path.join(args.out, "report.json")
    payload = rp.dumps(b.finish())
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(payload)
    if args.json:
        print(payload)
    else:
        print(f"wrote {json_path}")
        print(f"wrote {csv_path}")
        print(f"wrote {len(summary_names)} existence figures and summary.png in {args.out}")
    return 0


def _echo(args) -> list[str]:
    return list(args._raw_argv)


# ------------------------------------------------------------------- parser


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fincat",
        description="Decide products, coproducts and biproducts in tabulated "
        "finite categories, and verify the structural theorems about them.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", metavar="FILE", help="category document")
            p.add_argument(
                "--free-compose",
                action="store_true",
                help="derive missing composites by associativity",
            )
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("validate", help="check the category axioms")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="constant/coconstant/zero per morphism")
    common(p)
    p.add_argument("--morphism", help="classify a single morphism")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("zeros", help="find the zero structure")
    common(p)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("products", help="find all products of a pair")
    common(p)
    p.add_argument("--pair", required=True, help=PAIR_HELP)
    p.set_defaults(func=cmd_products)

    p = sub.add_parser("coproducts", help="find all coproducts of a pair")
    common(p)
    p.add_argument("--pair", required=True, help=PAIR_HELP)
    p.set_defaults(func=cmd_coproducts)

    p = sub.add_parser("biproducts", help="find all biproducts")
    common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", help=PAIR_HELP)
    g.add_argument("--all-pairs", action="store_true", help="sweep every pair")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check against the brute-force enumeration",
    )
    p.set_defaults(func=cmd_biproducts)

    p = sub.add_parser("check-witness", help="check a declared witness")
    common(p)
    p.add_argument("--witness", required=True, help="witness name from the document")
    p.add_argument(
        "--definition",
        choices=("new", "zero", "cmon"),
        default="new",
        help="which biproduct definition to check against",
    )
    p.set_defaults(func=cmd_check_witness)

    p = sub.add_parser("verify", help="verify a structural theorem")
    common(p)
    p.add_argument(
        "--theorem",
        required=True,
        choices=("lemma", "corollary", "uniqueness", "nary", "sum-eq-prod", "ambiadjunction"),
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gallery", help="build a stock category")
    p.add_argument("name", metavar="NAME", help=f"one of: {', '.join(gallery_names())}")
    p.add_argument("--max-size", type=int, help="finset/pointed: largest carrier")
    p.add_argument("--size", type=int, help="chain/indiscrete/discrete: element count")
    p.add_argument("--groups", help="ab: comma-separated group names, e.g. Z2,Z2xZ2")
    p.add_argument("--seed", type=int, help="random: RNG seed")
    p.add_argument("--max-objects", type=int, help="random: object bound")
    p.add_argument("--max-morphisms", type=int, help="random: morphism bound")
    p.add_argument("--emit", metavar="FILE", help="write the category as a document")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("report", help="sweep categories, write JSON/CSV/figures")
    p.add_argument("--out", required=True, metavar="DIR", help="output directory")
    p.add_argument("--names", help="comma-separated gallery names (default: all stock)")
    p.add_argument("--json", action="store_true", help="also print the JSON report")
    p.set_defaults(func=cmd_report)

    return ap


def main(argv: Sequence[str] | None = None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    ap = make_parser()
    try:
        args = ap.parse_args(raw)
        args._raw_argv = [ap.prog] + raw
        return args.func(args)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        return code
    except DslError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (PreconditionError, bp.CMonStructureError, SpecError, MalformedCategoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
