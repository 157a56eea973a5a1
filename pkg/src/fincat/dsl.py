"""Textual format for finite categories, witnesses, and homset addition.

A document declares one category, then any number of witness and cmon
blocks.  Composition is tabulated explicitly: every composable pair of
non-identity morphisms must appear exactly once (identity composites are
implied by the unit laws and may be omitted).  A free-compose mode instead
derives missing composites from the declared ones by associativity and
errors out when a composite is ambiguous or underivable.

Grammar and the canonical rendering are documented in docs/dsl.md; parse
then render then parse is the identity on documents up to normalization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .biproduct import BiproductWitness, CMonStructure
from .core import FinCat, validate_category


class DslError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


# ------------------------------------------------------------------- lexing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}():;,.+=])
    """,
    re.VERBOSE,
)

IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "punct" | "arrow" | "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ------------------------------------------------------------------ documents


@dataclass(frozen=True)
class WitnessDecl:
    name: str
    carrier: str
    p_a: str
    p_b: str
    i_a: str
    i_b: str


@dataclass(frozen=True)
class CMonBlock:
    source: str
    target: str
    zero: str
    sums: tuple[tuple[str, str, str], ...]  # (f, g, h) meaning f + g = h


@dataclass(frozen=True)
class CatDoc:
    """Normalized parse of a document.

    Objects and morphisms keep declaration order (it fixes their ids);
    identities, compositions, witnesses and cmon blocks are sorted, so two
    documents describing the same data compare equal."""

    name: str
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]  # (name, dom, cod)
    identities: tuple[tuple[str, str], ...]  # (object, morphism)
    compositions: tuple[tuple[str, str, str], ...]  # (g, f, h) for g . f = h
    witnesses: tuple[WitnessDecl, ...] = ()
    cmon: tuple[CMonBlock, ...] = ()


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, message: str, tok: _Token | None = None) -> DslError:
        tok = tok or self.peek()
        return DslError(message, tok.line, tok.col)

    def expect_punct(self, ch: str) -> _Token:
        t = self.peek()
        if t.kind != "punct" or t.text != ch:
            raise self.fail(f"expected {ch!r}, found {t.text!r}" if t.kind != "eof" else f"expected {ch!r}, found end of input")
        return self.next()

    def expect_name(self, what: str = "a name") -> _Token:
        t = self.peek()
        if t.kind != "name":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise self.fail(f"expected {what}, found {found}")
        return self.next()

    def expect_keyword(self, word: str) -> _Token:
        t = self.expect_name(f"keyword {word!r}")
        if t.text != word:
            raise self.fail(f"expected keyword {word!r}, found {t.text!r}", t)
        return t

    def at_punct(self, ch: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.text == ch


def parse(text: str) -> CatDoc:
    """Parse a document, running all name/typing checks.

    Raises DslError with a line:col prefix for every diagnostic."""
    p = _Parser(text)
    p.expect_keyword("category")
    cat_name = p.expect_name("a category name").text
    p.expect_punct("{")

    objects: list[str] = []
    obj_tokens: dict[str, _Token] = {}
    morphisms: list[tuple[str, str, str]] = []
    mor_tokens: dict[str, _Token] = {}
    identities: dict[str, tuple[str, _Token]] = {}
    compositions: dict[tuple[str, str], tuple[str, _Token]] = {}

    while not p.at_punct("}"):
        t = p.peek()
        if t.kind != "name":
            raise p.fail(f"expected a clause or '}}', found {t.text!r}")
        if t.text == "objects":
            p.next()
            p.expect_punct(":")
            while not p.at_punct(";"):
                tok = p.expect_name("an object name")
                if tok.text in obj_tokens:
                    raise p.fail(f"duplicate object {tok.text!r}", tok)
                obj_tokens[tok.text] = tok
                objects.append(tok.text)
                if p.at_punct(","):
                    p.next()
                else:
                    break
            p.expect_punct(";")
        elif t.text == "morphisms":
            p.next()
            p.expect_punct(":")
            while not p.at_punct(";"):
                tok = p.expect_name("a morphism name")
                p.expect_punct(":")
                dtok = p.expect_name("a domain object")
                arr = p.peek()
                if arr.kind != "arrow":
                    raise p.fail("expected '->'", arr)
                p.next()
                ctok = p.expect_name("a codomain object")
                if tok.text in mor_tokens:
                    raise p.fail(f"duplicate morphism {tok.text!r}", tok)
                for otok in (dtok, ctok):
                    if otok.text not in obj_tokens:
                        raise p.fail(f"unknown object {otok.text!r}", otok)
                mor_tokens[tok.text] = tok
                morphisms.append((tok.text, dtok.text, ctok.text))
                if p.at_punct(","):
                    p.next()
                else:
                    break
            p.expect_punct(";")
        elif t.text == "id":
            p.next()
            otok = p.expect_name("an object name")
            if otok.text not in obj_tokens:
                raise p.fail(f"unknown object {otok.text!r}", otok)
            p.expect_punct("=")
            mtok = p.expect_name("a morphism name")
            p.expect_punct(";")
            if mtok.text not in mor_tokens:
                raise p.fail(f"unknown morphism {mtok.text!r}", mtok)
            if otok.text in identities:
                raise p.fail(f"duplicate identity for {otok.text!r}", otok)
            identities[otok.text] = (mtok.text, mtok)
        else:
            # composition clause: g . f = h ;
            gtok = p.next()
            if gtok.text not in mor_tokens:
                raise p.fail(
                    f"unknown clause or morphism {gtok.text!r} "
                    "(expected objects/morphisms/id or a composition)",
                    gtok,
                )
            p.expect_punct(".")
            ftok = p.expect_name("a morphism name")
            if ftok.text not in mor_tokens:
                raise p.fail(f"unknown morphism {ftok.text!r}", ftok)
            p.expect_punct("=")
            htok = p.expect_name("a morphism name")
            if htok.text not in mor_tokens:
                raise p.fail(f"unknown morphism {htok.text!r}", htok)
            p.expect_punct(";")
            key = (gtok.text, ftok.text)
            if key in compositions:
                raise p.fail(
                    f"duplicate composition {gtok.text} . {ftok.text}", gtok
                )
            compositions[key] = (htok.text, gtok)
    p.expect_punct("}")

    mor_type = {m: (d, c) for m, d, c in morphisms}

    for obj, tok in obj_tokens.items():
        if obj not in identities:
            raise p.fail(f"missing identity declaration for object {obj!r}", tok)
        ident, itok = identities[obj]
        d, c = mor_type[ident]
        if d != obj or c != obj:
            raise p.fail(
                f"identity of {obj!r} must have type {obj} -> {obj}, "
                f"but {ident!r} has type {d} -> {c}",
                itok,
            )

    for (g, f), (h, gtok) in compositions.items():
        fd, fc = mor_type[f]
        gd, gc = mor_type[g]
        if fc != gd:
            raise p.fail(
                f"{g} . {f} is not composable: {f!r} ends at {fc!r} "
                f"but {g!r} starts at {gd!r}",
                gtok,
            )
        hd, hc = mor_type[h]
        if (hd, hc) != (fd, gc):
            raise p.fail(
                f"composite {g} . {f} must have type {fd} -> {gc}, "
                f"but {h!r} has type {hd} -> {hc}",
                gtok,
            )

    witnesses: dict[str, WitnessDecl] = {}
    cmon_blocks: dict[tuple[str, str], CMonBlock] = {}
    while p.peek().kind != "eof":
        t = p.expect_name("'witness' or 'cmon'")
        if t.text == "witness":
            wtok = p.expect_name("a witness name")
            if wtok.text in witnesses:
                raise p.fail(f"duplicate witness {wtok.text!r}", wtok)
            p.expect_punct("{")
            p.expect_keyword("carrier")
            p.expect_punct(":")
            ctok = p.expect_name("an object name")
            if ctok.text not in obj_tokens:
                raise p.fail(f"unknown object {ctok.text!r}", ctok)
            p.expect_punct(";")
            fields: dict[str, str] = {}
            while not p.at_punct("}"):
                ktok = p.expect_name("pA, pB, iA or iB")
                if ktok.text not in ("pA", "pB", "iA", "iB"):
                    raise p.fail(f"unknown witness field {ktok.text!r}", ktok)
                if ktok.text in fields:
                    raise p.fail(f"duplicate witness field {ktok.text!r}", ktok)
                p.expect_punct("=")
                vtok = p.expect_name("a morphism name")
                if vtok.text not in mor_tokens:
                    raise p.fail(f"unknown morphism {vtok.text!r}", vtok)
                p.expect_punct(";")
                fields[ktok.text] = vtok.text
            p.expect_punct("}")
            missing = [k for k in ("pA", "pB", "iA", "iB") if k not in fields]
            if missing:
                raise p.fail(f"witness {wtok.text!r} is missing {', '.join(missing)}", wtok)
            witnesses[wtok.text] = WitnessDecl(
                name=wtok.text,
                carrier=ctok.text,
                p_a=fields["pA"],
                p_b=fields["pB"],
                i_a=fields["iA"],
                i_b=fields["iB"],
            )
        elif t.text == "cmon":
            p.expect_keyword("hom")
            p.expect_punct("(")
            atok = p.expect_name("an object name")
            p.expect_punct(",")
            btok = p.expect_name("an object name")
            p.expect_punct(")")
            for otok in (atok, btok):
                if otok.text not in obj_tokens:
                    raise p.fail(f"unknown object {otok.text!r}", otok)
            key = (atok.text, btok.text)
            if key in cmon_blocks:
                raise p.fail(f"duplicate cmon block for hom({key[0]},{key[1]})", atok)
            p.expect_punct("{")
            zero: str | None = None
            sums: dict[tuple[str, str], str] = {}

            def check_hom(tok: _Token) -> str:
                if tok.text not in mor_tokens:
                    raise p.fail(f"unknown morphism {tok.text!r}", tok)
                if mor_type[tok.text] != key:
                    d, c = mor_type[tok.text]
                    raise p.fail(
                        f"{tok.text!r} has type {d} -> {c}, "
                        f"outside hom({key[0]},{key[1]})",
                        tok,
                    )
                return tok.text

            while not p.at_punct("}"):
                first = p.expect_name("'zero' or a morphism name")
                if first.text == "zero" and p.at_punct("="):
                    p.next()
                    ztok = p.expect_name("a morphism name")
                    p.expect_punct(";")
                    if zero is not None:
                        raise p.fail("duplicate zero declaration", first)
                    zero = check_hom(ztok)
                    continue
                f_name = check_hom(first)
                p.expect_punct("+")
                gtok = p.expect_name("a morphism name")
                g_name = check_hom(gtok)
                p.expect_punct("=")
                htok = p.expect_name("a morphism name")
                h_name = check_hom(htok)
                p.expect_punct(";")
                if (f_name, g_name) in sums:
                    raise p.fail(f"duplicate sum {f_name} + {g_name}", first)
                sums[(f_name, g_name)] = h_name
            p.expect_punct("}")
            if zero is None:
                raise p.fail(f"cmon block hom({key[0]},{key[1]}) has no zero", atok)
            mor_order = {m: i for i, (m, _, _) in enumerate(morphisms)}
            cmon_blocks[key] = CMonBlock(
                source=key[0],
                target=key[1],
                zero=zero,
                sums=tuple(
                    (f, g, sums[(f, g)])
                    for f, g in sorted(sums, key=lambda k: (mor_order[k[0]], mor_order[k[1]]))
                ),
            )
        else:
            raise p.fail(f"expected 'witness' or 'cmon', found {t.text!r}", t)

    obj_order = {o: i for i, o in enumerate(objects)}
    mor_order = {m: i for i, (m, _, _) in enumerate(morphisms)}
    return CatDoc(
        name=cat_name,
        objects=tuple(objects),
        morphisms=tuple(morphisms),
        identities=tuple(
            (o, identities[o][0]) for o in sorted(identities, key=obj_order.get)
        ),
        compositions=tuple(
            (g, f, compositions[(g, f)][0])
            for g, f in sorted(compositions, key=lambda k: (mor_order[k[0]], mor_order[k[1]]))
        ),
        witnesses=tuple(
            witnesses[n] for n in sorted(witnesses)
        ),
        cmon=tuple(
            cmon_blocks[k]
            for k in sorted(cmon_blocks, key=lambda k: (obj_order[k[0]], obj_order[k[1]]))
        ),
    )


# --------------------------------------------------- documents to categories


def _saturate_composites(
    doc: CatDoc,
    dom: list[int],
    cod: list[int],
    known: dict[tuple[int, int], int],
) -> None:
    """Fill missing composites by associativity, in place.

    Any completion of the table to an associative one must satisfy
    h.(g.f) = (h.g).f, so whenever two of the three parenthesizations are
    known the third is forced.  Conflicting derivations or pairs no chain
    reaches are errors."""
    n = len(dom)
    composable = [
        (g, f) for g in range(n) for f in range(n) if cod[f] == dom[g]
    ]

    def put(g: int, f: int, h: int, why: str) -> bool:
        old = known.get((g, f))
        if old is None:
            known[(g, f)] = h
            return True
        if old != h:
            raise DslError(
                f"ambiguous composite {doc.morphisms[g][0]} . {doc.morphisms[f][0]}: "
                f"{why} forces {doc.morphisms[h][0]} but it was already "
                f"{doc.morphisms[old][0]}"
            )
        return False

    changed = True
    while changed:
        changed = False
        for g, f in composable:
            z = known.get((g, f))
            if z is None:
                continue
            # h . (g . f) = (h . g) . f for every h after g
            for h in range(n):
                if dom[h] != cod[g]:
                    continue
                x = known.get((h, g))
                hz = known.get((h, z))
                if x is not None and hz is not None:
                    if put(x, f, hz, f"associativity around {doc.morphisms[h][0]}"):
                        changed = True
                    xf = known.get((x, f))
                    if xf is not None and xf != hz:
                        raise DslError(
                            f"ambiguous composite {doc.morphisms[x][0]} . "
                            f"{doc.morphisms[f][0]}: associativity around "
                            f"{doc.morphisms[h][0]} forces {doc.morphisms[hz][0]} "
                            f"but it was already {doc.morphisms[xf][0]}"
                        )
                elif x is not None:
                    xf = known.get((x, f))
                    if xf is not None:
                        if put(h, z, xf, f"associativity around {doc.morphisms[f][0]}"):
                            changed = True
    missing = [(g, f) for g, f in composable if (g, f) not in known]
    if missing:
        g, f = missing[0]
        raise DslError(
            f"cannot derive the composite {doc.morphisms[g][0]} . "
            f"{doc.morphisms[f][0]} from the declared equations "
            f"({len(missing)} underivable in total)"
        )


def doc_to_category(
    doc: CatDoc, free_compose: bool = False
) -> tuple[FinCat, CMonStructure | None, dict[str, BiproductWitness]]:
    """Tabulate a parsed document into a validated category.

    Identity composites are implied; in strict mode every other composable
    pair must be declared, in free-compose mode missing ones are derived by
    associativity.  The result always passes validate_category (no partial
    tables escape), so later failures can only come from the checkers."""
    obj_index = {o: i for i, o in enumerate(doc.objects)}
    mor_index = {m: i for i, (m, _, _) in enumerate(doc.morphisms)}
    dom = [obj_index[d] for _, d, _ in doc.morphisms]
    cod = [obj_index[c] for _, _, c in doc.morphisms]
    identity = [0] * len(doc.objects)
    for o, m in doc.identities:
        identity[obj_index[o]] = mor_index[m]

    known: dict[tuple[int, int], int] = {}
    for g in range(len(dom)):
        known[(identity[cod[g]], g)] = g
        known[(g, identity[dom[g]])] = g
    for gname, fname, hname in doc.compositions:
        g, f, h = mor_index[gname], mor_index[fname], mor_index[hname]
        old = known.get((g, f))
        if old is not None and old != h:
            # disagrees with a unit law; only identity pairs can be pre-known
            raise DslError(
                f"composition {gname} . {fname} = {hname} contradicts a unit "
                f"law (it must equal {doc.morphisms[old][0]})"
            )
        known[(g, f)] = h

    if free_compose:
        _saturate_composites(doc, dom, cod, known)
    else:
        for g in range(len(dom)):
            for f in range(len(dom)):
                if cod[f] == dom[g] and (g, f) not in known:
                    raise DslError(
                        f"missing composition {doc.morphisms[g][0]} . "
                        f"{doc.morphisms[f][0]} (declare it or use free-compose)"
                    )

    table = tuple(
        tuple(
            known[(g, f)] if cod[f] == dom[g] else -1 for f in range(len(dom))
        )
        for g in range(len(dom))
    )
    cat = FinCat(
        objects=doc.objects,
        morphisms=tuple(m for m, _, _ in doc.morphisms),
        dom=tuple(dom),
        cod=tuple(cod),
        identity=tuple(identity),
        table=table,
        name=doc.name,
    )
    v = validate_category(cat)
    if not v.ok:
        detail = dict(v.witness or {})
        named = {
            k: (cat.mor_label(x) if isinstance(x, int) and k in ("f", "g", "h", "lhs", "rhs", "m") else x)
            for k, x in detail.items()
        }
        raise DslError(f"declared composition violates {v.rule}: {named}")

    cmon = None
    if doc.cmon:
        add: dict[tuple[int, int], int] = {}
        zero: dict[tuple[int, int], int] = {}
        for block in doc.cmon:
            a, b = obj_index[block.source], obj_index[block.target]
            zero[(a, b)] = mor_index[block.zero]
            for f, g, h in block.sums:
                add[(mor_index[f], mor_index[g])] = mor_index[h]
        cmon = CMonStructure(add=add, zero=zero)

    witnesses = {
        w.name: BiproductWitness(
            carrier=obj_index[w.carrier],
            p_a=mor_index[w.p_a],
            p_b=mor_index[w.p_b],
            i_a=mor_index[w.i_a],
            i_b=mor_index[w.i_b],
        )
        for w in doc.witnesses
    }
    return cat, cmon, witnesses


# --------------------------------------------------- categories to documents


def category_to_doc(
    cat: FinCat,
    cmon: CMonStructure | None = None,
    witnesses: dict[str, BiproductWitness] | None = None,
) -> CatDoc:
    """Inverse of doc_to_category for categories with DSL-safe names."""
    for name in (*cat.objects, *cat.morphisms):
        if not IDENT_RE.match(name):
            raise DslError(f"name {name!r} cannot be written in the DSL")
    if len(set(cat.objects)) != cat.n_objects or len(set(cat.morphisms)) != cat.n_morphisms:
        raise DslError("duplicate names cannot be written in the DSL")
    ids = set(cat.identity)
    compositions = []
    for g in range(cat.n_morphisms):
        for f in range(cat.n_morphisms):
            if cat.cod[f] == cat.dom[g] and g not in ids and f not in ids:
                compositions.append(
                    (cat.morphisms[g], cat.morphisms[f], cat.morphisms[cat.table[g][f]])
                )
    blocks = []
    if cmon is not None:
        by_pair: dict[tuple[int, int], list[tuple[str, str, str]]] = {}
        for (f, g), h in cmon.add.items():
            pair = (cat.dom[f], cat.cod[f])
            by_pair.setdefault(pair, []).append(
                (cat.morphisms[f], cat.morphisms[g], cat.morphisms[h])
            )
        for (a, b), z in sorted(cmon.zero.items()):
            mor_order = {m: i for i, m in enumerate(cat.morphisms)}
            blocks.append(
                CMonBlock(
                    source=cat.objects[a],
                    target=cat.objects[b],
                    zero=cat.morphisms[z],
                    sums=tuple(
                        sorted(
                            by_pair.get((a, b), []),
                            key=lambda s: (mor_order[s[0]], mor_order[s[1]]),
                        )
                    ),
                )
            )
    wdecls = tuple(
        WitnessDecl(
            name=n,
            carrier=cat.objects[w.carrier],
            p_a=cat.morphisms[w.p_a],
            p_b=cat.morphisms[w.p_b],
            i_a=cat.morphisms[w.i_a],
            i_b=cat.morphisms[w.i_b],
        )
        for n in sorted(witnesses or {})
        for w in [witnesses[n]]
    )
    return CatDoc(
        name=cat.name if IDENT_RE.match(cat.name or "") else "C",
        objects=cat.objects,
        morphisms=tuple(
            (cat.morphisms[m], cat.objects[cat.dom[m]], cat.objects[cat.cod[m]])
            for m in range(cat.n_morphisms)
        ),
        identities=tuple(
            (cat.objects[o], cat.morphisms[cat.identity[o]])
            for o in range(cat.n_objects)
        ),
        compositions=tuple(compositions),
        witnesses=wdecls,
        cmon=tuple(blocks),
    )


def render(doc: CatDoc) -> str:
    """Canonical text for a document; parse(render(d)) == d."""
    out = [f"category {doc.name} {{"]
    if doc.objects:
        out.append(f"  objects: {', '.join(doc.objects)};")
    if doc.morphisms:
        out.append("  morphisms:")
        for k, (m, d, c) in enumerate(doc.morphisms):
            sep = "," if k + 1 < len(doc.morphisms) else ";"
            out.append(f"    {m}: {d} -> {c}{sep}")
    for o, m in doc.identities:
        out.append(f"  id {o} = {m};")
    for g, f, h in doc.compositions:
        out.append(f"  {g} . {f} = {h};")
    out.append("}")
    for w in doc.witnesses:
        out.append("")
        out.append(f"witness {w.name} {{")
        out.append(f"  carrier: {w.carrier};")
        out.append(f"  pA = {w.p_a};")
        out.append(f"  pB = {w.p_b};")
        out.append(f"  iA = {w.i_a};")
        out.append(f"  iB = {w.i_b};")
        out.append("}")
    for block in doc.cmon:
        out.append("")
        out.append(f"cmon hom({block.source},{block.target}) {{")
        out.append(f"  zero = {block.zero};")
        for f, g, h in block.sums:
            out.append(f"  {f} + {g} = {h};")
        out.append("}")
    return "\n".join(out) + "\n"
