"""Finite categories as explicit composition tables.

Objects and morphisms are dense integer indices.  Composition is a dense
2-D table with a sentinel for non-composable pairs, so every check in the
rest of the package reduces to table lookups.  Values are immutable after
construction; all operations here are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

ObjId = int
MorId = int

NO_COMPOSITE: MorId = -1


class MalformedCategoryError(Exception):
    """Tables are structurally broken (bad shapes or out-of-range indices).

    Distinct from a category-axiom failure, which is reported as a Verdict.
    """


class PreconditionError(ValueError):
    """An operation was invoked outside its stated contract."""


class InternalConsistencyError(RuntimeError):
    """A state that should be mathematically impossible; indicates a bug."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: pass, or fail with a rule name and a witness.

    Witness values are object/morphism ids (or lists of them) keyed by a
    small fixed vocabulary so reports can translate them back to names.
    """

    ok: bool
    rule: str = ""
    witness: Mapping[str, Any] | None = None

    @staticmethod
    def passed(rule: str = "", **witness: Any) -> "Verdict":
        return Verdict(True, rule, witness or None)

    @staticmethod
    def failed(rule: str, **witness: Any) -> "Verdict":
        return Verdict(False, rule, witness or None)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FinCat:
    """A finite category given by explicit tables.

    table[g][f] is the composite g after f, or NO_COMPOSITE when
    cod(f) != dom(g).  Morphism equality is id equality; there is no
    quotienting.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    dom: tuple[ObjId, ...]
    cod: tuple[ObjId, ...]
    identity: tuple[MorId, ...]
    table: tuple[tuple[MorId, ...], ...]
    name: str = field(default="", compare=False)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    @property
    def hom_map(self) -> dict[tuple[ObjId, ObjId], tuple[MorId, ...]]:
        cached = self.__dict__.get("_hom")
        if cached is None:
            buckets: dict[tuple[int, int], list[int]] = {
                (a, b): [] for a in range(self.n_objects) for b in range(self.n_objects)
            }
            for m in range(self.n_morphisms):
                buckets[self.dom[m], self.cod[m]].append(m)
            cached = {k: tuple(v) for k, v in buckets.items()}
            object.__setattr__(self, "_hom", cached)
        return cached

    @property
    def np_table(self) -> np.ndarray:
        cached = self.__dict__.get("_npt")
        if cached is None:
            m = self.n_morphisms
            cached = np.asarray(self.table, dtype=np.int64).reshape(m, m)
            object.__setattr__(self, "_npt", cached)
        return cached

    def hom(self, a: ObjId, b: ObjId) -> tuple[MorId, ...]:
        try:
            return self.hom_map[a, b]
        except KeyError:
            raise PreconditionError(f"object id out of range: ({a}, {b})") from None

    def compose(self, g: MorId, f: MorId) -> MorId:
        c = self.table[g][f]
        if c == NO_COMPOSITE:
            raise PreconditionError(
                f"not composable: {self.morphisms[g]} after {self.morphisms[f]}"
            )
        return c

    def obj_id(self, name: str) -> ObjId:
        idx = self.__dict__.get("_obj_index")
        if idx is None:
            idx = {n: i for i, n in enumerate(self.objects)}
            object.__setattr__(self, "_obj_index", idx)
        try:
            return idx[name]
        except KeyError:
            raise PreconditionError(f"unknown object: {name!r}") from None

    def mor_id(self, name: str) -> MorId:
        idx = self.__dict__.get("_mor_index")
        if idx is None:
            idx = {n: i for i, n in enumerate(self.morphisms)}
            object.__setattr__(self, "_mor_index", idx)
        try:
            return idx[name]
        except KeyError:
            raise PreconditionError(f"unknown morphism: {name!r}") from None

    def mor_label(self, m: MorId) -> str:
        return (
            f"{self.morphisms[m]}: "
            f"{self.objects[self.dom[m]]} -> {self.objects[self.cod[m]]}"
        )


def compose_chain(cat: FinCat, mids: list[MorId] | tuple[MorId, ...]) -> MorId:
    """Compose a chain written in application order: [g, f] means g after f."""
    if not mids:
        raise PreconditionError("empty composition chain")
    acc = mids[-1]
    for m in reversed(mids[:-1]):
        acc = cat.compose(m, acc)
    return acc


def validate_structure(cat: FinCat) -> None:
    """Raise MalformedCategoryError unless all tables are well-shaped."""
    n, m = cat.n_objects, cat.n_morphisms
    if len(cat.dom) != m or len(cat.cod) != m:
        raise MalformedCategoryError("dom/cod length differs from morphism count")
    if len(cat.identity) != n:
        raise MalformedCategoryError("identity length differs from object count")
    if len(cat.table) != m:
        raise MalformedCategoryError("composition table has wrong row count")
    for a in list(cat.dom) + list(cat.cod):
        if not 0 <= a < n:
            raise MalformedCategoryError(f"object index out of range: {a}")
    for e in cat.identity:
        if not 0 <= e < m:
            raise MalformedCategoryError(f"identity morphism index out of range: {e}")
    for row in cat.table:
        if len(row) != m:
            raise MalformedCategoryError("composition table row has wrong length")
        for v in row:
            if v != NO_COMPOSITE and not 0 <= v < m:
                raise MalformedCategoryError(f"composite index out of range: {v}")


def validate_category(cat: FinCat) -> Verdict:
    """Check the category axioms, returning the first violated law.

    Law order: identity endpoints, composability coverage, composite
    endpoints, unit laws, associativity.  Structural problems raise
    MalformedCategoryError instead of returning a Verdict.
    """
    validate_structure(cat)
    for a in range(cat.n_objects):
        e = cat.identity[a]
        if cat.dom[e] != a or cat.cod[e] != a:
            return Verdict.failed("identity_endpoints", obj=a, m=e)
    m = cat.n_morphisms
    if m == 0:
        return Verdict.passed("category_axioms")

    T = cat.np_table
    domv = np.asarray(cat.dom, dtype=np.int64)
    codv = np.asarray(cat.cod, dtype=np.int64)
    defined = T != NO_COMPOSITE
    composable = domv[:, None] == codv[None, :]  # row g, column f

    bad = defined & ~composable
    if bad.any():
        g, f = map(int, np.argwhere(bad)[0])
        return Verdict.failed("spurious_composite", g=g, f=f)
    missing = composable & ~defined
    if missing.any():
        g, f = map(int, np.argwhere(missing)[0])
        return Verdict.failed("missing_composite", g=g, f=f)

    gs, fs = np.nonzero(composable)
    comp = T[gs, fs]
    bad_ends = (domv[comp] != domv[fs]) | (codv[comp] != codv[gs])
    if bad_ends.any():
        k = int(np.argmax(bad_ends))
        return Verdict.failed(
            "composite_endpoints", g=int(gs[k]), f=int(fs[k]), m=int(comp[k])
        )

    ident = np.asarray(cat.identity, dtype=np.int64)
    f_idx = np.arange(m)
    left = T[ident[codv], f_idx]
    if (left != f_idx).any():
        f = int(np.argmax(left != f_idx))
        return Verdict.failed("left_unit", f=f, m=int(left[f]))
    right = T[f_idx, ident[domv]]
    if (right != f_idx).any():
        f = int(np.argmax(right != f_idx))
        return Verdict.failed("right_unit", f=f, m=int(right[f]))

    for g in range(m):
        hs = np.nonzero(domv == codv[g])[0]
        fs2 = np.nonzero(codv == domv[g])[0]
        if len(hs) == 0 or len(fs2) == 0:
            continue
        hg = T[hs, g]
        gf = T[g, fs2]
        lhs = T[hg[:, None], fs2[None, :]]  # (h.g).f
        rhs = T[hs[:, None], gf[None, :]]  # h.(g.f)
        neq = lhs != rhs
        if neq.any():
            i, j = map(int, np.argwhere(neq)[0])
            return Verdict.failed(
                "associativity",
                h=int(hs[i]),
                g=g,
                f=int(fs2[j]),
                lhs=int(lhs[i, j]),
                rhs=int(rhs[i, j]),
            )
    return Verdict.passed("category_axioms")


def opposite(cat: FinCat) -> FinCat:
    """The opposite category.  Ids are shared; applying it twice gives back
    the same object, so witnesses transport without translation."""
    cached = cat.__dict__.get("_op")
    if cached is not None:
        return cached
    m = cat.n_morphisms
    table = tuple(tuple(cat.table[f][g] for f in range(m)) for g in range(m))
    op = FinCat(
        objects=cat.objects,
        morphisms=cat.morphisms,
        dom=cat.cod,
        cod=cat.dom,
        identity=cat.identity,
        table=table,
        name=cat.name,
    )
    object.__setattr__(op, "_op", cat)
    object.__setattr__(cat, "_op", op)
    return op


def _dedupe(name: str, taken: set[str]) -> str:
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def coproduct_category(c: FinCat, d: FinCat, name: str = "") -> FinCat:
    """Disjoint union of two categories; no morphisms between the blocks.

    Ids of the first block are preserved, the second block is shifted.
    Colliding display names from the second block get a numeric suffix.
    """
    objects = list(c.objects)
    taken_o = set(objects)
    for o in d.objects:
        o2 = _dedupe(o, taken_o)
        taken_o.add(o2)
        objects.append(o2)
    morphisms = list(c.morphisms)
    taken_m = set(morphisms)
    for mn in d.morphisms:
        m2 = _dedupe(mn, taken_m)
        taken_m.add(m2)
        morphisms.append(m2)

    no, nm = c.n_objects, c.n_morphisms
    dom = tuple(c.dom) + tuple(a + no for a in d.dom)
    cod = tuple(c.cod) + tuple(a + no for a in d.cod)
    identity = tuple(c.identity) + tuple(e + nm for e in d.identity)
    total = nm + d.n_morphisms
    table = []
    for g in range(total):
        row = []
        for f in range(total):
            if g < nm and f < nm:
                row.append(c.table[g][f])
            elif g >= nm and f >= nm:
                v = d.table[g - nm][f - nm]
                row.append(v if v == NO_COMPOSITE else v + nm)
            else:
                row.append(NO_COMPOSITE)
        table.append(tuple(row))
    return FinCat(
        objects=tuple(objects),
        morphisms=tuple(morphisms),
        dom=dom,
        cod=cod,
        identity=identity,
        table=tuple(table),
        name=name or (f"{c.name}+{d.name}" if c.name or d.name else ""),
    )


@dataclass(frozen=True)
class MorphismClass:
    """Classification of one morphism: constant, coconstant, zero (= both)."""

    constant: bool
    coconstant: bool
    zero: bool


def classify_morphism(cat: FinCat, m: MorId) -> MorphismClass:
    """Decide constancy and coconstancy by exhaustive pre/post-composition."""
    T = cat.table
    homs = cat.hom_map
    src, tgt = cat.dom[m], cat.cod[m]
    constant = True
    for c in range(cat.n_objects):
        into = homs[c, src]
        if len(into) > 1:
            first = T[m][into[0]]
            if any(T[m][f] != first for f in into[1:]):
                constant = False
                break
    coconstant = True
    for c in range(cat.n_objects):
        out = homs[tgt, c]
        if len(out) > 1:
            first = T[out[0]][m]
            if any(T[g][m] != first for g in out[1:]):
                coconstant = False
                break
    return MorphismClass(constant, coconstant, constant and coconstant)


@dataclass(frozen=True)
class ZeroStructure:
    """A choice of zero morphism for every ordered pair of objects."""

    zeros: tuple[tuple[MorId, ...], ...]

    def zero_of(self, a: ObjId, b: ObjId) -> MorId:
        return self.zeros[a][b]


def find_zero_structure(cat: FinCat) -> tuple[ZeroStructure | None, Verdict]:
    """Find the zero morphism of each homset, or report the first pair
    that has none.

    When every pair has one, the zero of each pair is provably unique;
    a second zero in some homset would mean a bug in classification and
    raises InternalConsistencyError.
    """
    n = cat.n_objects
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            zs = [m for m in cat.hom(a, b) if classify_morphism(cat, m).zero]
            if not zs:
                return None, Verdict.failed("no_zero_morphism", a=a, b=b)
            if len(zs) > 1:
                raise InternalConsistencyError(
                    f"multiple zero morphisms in hom({cat.objects[a]}, {cat.objects[b]})"
                )
            row.append(zs[0])
        rows.append(tuple(row))
    return ZeroStructure(tuple(rows)), Verdict.passed("zero_structure")


def validate_zero_structure(cat: FinCat, zs: ZeroStructure) -> Verdict:
    """Exhaustively check the absorbing law g.zero(A,B).f = zero(A',B')."""
    T = cat.table
    n, m = cat.n_objects, cat.n_morphisms
    for a in range(n):
        for b in range(n):
            z = zs.zero_of(a, b)
            for f in range(m):
                if cat.cod[f] != a:
                    continue
                zf = T[z][f]
                for g in range(m):
                    if cat.dom[g] != b:
                        continue
                    if T[g][zf] != zs.zero_of(cat.dom[f], cat.cod[g]):
                        return Verdict.failed(
                            "absorbing_law", a=a, b=b, f=f, g=g, m=T[g][zf]
                        )
    return Verdict.passed("zero_structure_absorbing")
