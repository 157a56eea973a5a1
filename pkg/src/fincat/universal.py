"""Universal property checking by exhaustive mediating-morphism search."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinCat,
    MorId,
    ObjId,
    PreconditionError,
    Verdict,
    opposite,
)


class MediationError(RuntimeError):
    """mediate/comediate was called on a witness that does not certify."""


@dataclass(frozen=True)
class SpanWitness:
    """A candidate product: apex with legs left: apex -> A, right: apex -> B."""

    apex: ObjId
    left: MorId
    right: MorId


@dataclass(frozen=True)
class CospanWitness:
    """A candidate coproduct: nadir with left: A -> nadir, right: B -> nadir."""

    nadir: ObjId
    left: MorId
    right: MorId


def _require_span_typing(cat: FinCat, w: SpanWitness, a: ObjId, b: ObjId) -> None:
    if not (
        cat.dom[w.left] == w.apex
        and cat.cod[w.left] == a
        and cat.dom[w.right] == w.apex
        and cat.cod[w.right] == b
    ):
        raise PreconditionError("span witness is not typed apex -> (A, B)")


def check_product(cat: FinCat, w: SpanWitness, a: ObjId, b: ObjId) -> Verdict:
    """Decide whether w is a product of (a, b).

    For every object X the map h |-> (left.h, right.h) must hit each cone
    (f: X -> a, g: X -> b) exactly once.  Existence and uniqueness failures
    are reported under distinct rules, with the offending cone.
    """
    _require_span_typing(cat, w, a, b)
    T = cat.table
    homs = cat.hom_map
    left, right = w.left, w.right
    for x in range(cat.n_objects):
        fibers: dict[tuple[int, int], int] = {}
        for h in homs[x, w.apex]:
            key = (T[left][h], T[right][h])
            if key in fibers:
                return Verdict.failed(
                    "product:not_unique",
                    x=x,
                    f=key[0],
                    g=key[1],
                    h1=fibers[key],
                    h2=h,
                    apex=w.apex,
                    left=left,
                    right=right,
                )
            fibers[key] = h
        for f in homs[x, a]:
            for g in homs[x, b]:
                if (f, g) not in fibers:
                    return Verdict.failed(
                        "product:no_mediator",
                        x=x,
                        f=f,
                        g=g,
                        apex=w.apex,
                        left=left,
                        right=right,
                    )
    return Verdict.passed("product")


def check_coproduct(cat: FinCat, w: CospanWitness, a: ObjId, b: ObjId) -> Verdict:
    """Decide whether w is a coproduct of (a, b), as a product in the
    opposite category.  Ids are shared with cat, so the witness carries over
    verbatim."""
    v = check_product(opposite(cat), SpanWitness(w.nadir, w.left, w.right), a, b)
    if v.ok:
        return Verdict.passed("coproduct")
    assert v.witness is not None
    renamed = dict(v.witness)
    renamed["nadir"] = renamed.pop("apex")
    return Verdict.failed(v.rule.replace("product:", "coproduct:", 1), **renamed)


def find_products(cat: FinCat, a: ObjId, b: ObjId) -> list[SpanWitness]:
    """All product witnesses for (a, b), in deterministic search order
    (apexes ascending, then leg pairs in id order).

    A counting prune rejects apexes early: a product apex P must satisfy
    |hom(X,P)| = |hom(X,a)| * |hom(X,b)| for every X, since mediation is a
    bijection onto cones.
    """
    homs = cat.hom_map
    out: list[SpanWitness] = []
    for apex in range(cat.n_objects):
        if any(
            len(homs[x, apex]) != len(homs[x, a]) * len(homs[x, b])
            for x in range(cat.n_objects)
        ):
            continue
        for left in homs[apex, a]:
            for right in homs[apex, b]:
                w = SpanWitness(apex, left, right)
                if check_product(cat, w, a, b).ok:
                    out.append(w)
    return out


def find_coproducts(cat: FinCat, a: ObjId, b: ObjId) -> list[CospanWitness]:
    """All coproduct witnesses for (a, b), via the opposite category."""
    return [
        CospanWitness(w.apex, w.left, w.right)
        for w in find_products(opposite(cat), a, b)
    ]


def mediate(cat: FinCat, w: SpanWitness, f: MorId, g: MorId) -> MorId:
    """The unique h with left.h = f and right.h = g.

    Raises MediationError when no or several such h exist, which signals
    that w was never certified as a product."""
    if cat.dom[f] != cat.dom[g]:
        raise PreconditionError("cone legs must share a source")
    if cat.cod[f] != cat.cod[w.left] or cat.cod[g] != cat.cod[w.right]:
        raise PreconditionError("cone legs do not match the span targets")
    T = cat.table
    found = [
        h
        for h in cat.hom(cat.dom[f], w.apex)
        if T[w.left][h] == f and T[w.right][h] == g
    ]
    if len(found) != 1:
        raise MediationError(
            f"expected exactly one mediator, found {len(found)}; "
            "witness is not a certified product"
        )
    return found[0]


def comediate(cat: FinCat, w: CospanWitness, f: MorId, g: MorId) -> MorId:
    """The unique h with h.left = f and h.right = g (the cotuple)."""
    return mediate(opposite(cat), SpanWitness(w.nadir, w.left, w.right), f, g)
