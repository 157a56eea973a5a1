"""Brute-force reference decision for biproducts.

Enumerates every well-typed 5-tuple and tests the defining clauses
directly: no counting prune, no opposite-category trick, no sharing with
the search module beyond the raw tables.  Used to cross-check
find_biproducts and exposed on the command line as --oracle.
"""

from __future__ import annotations

from .biproduct import BiproductWitness
from .core import FinCat, ObjId


def _is_product(cat: FinCat, p: int, pa: int, pb: int, a: int, b: int) -> bool:
    T = cat.table
    homs = cat.hom_map
    for x in range(cat.n_objects):
        hx = homs[x, p]
        for f in homs[x, a]:
            for g in homs[x, b]:
                count = 0
                for h in hx:
                    if T[pa][h] == f and T[pb][h] == g:
                        count += 1
                        if count > 1:
                            return False
                if count != 1:
                    return False
    return True


def _is_coproduct(cat: FinCat, p: int, ia: int, ib: int, a: int, b: int) -> bool:
    T = cat.table
    homs = cat.hom_map
    for x in range(cat.n_objects):
        hx = homs[p, x]
        for f in homs[a, x]:
            for g in homs[b, x]:
                count = 0
                for h in hx:
                    if T[h][ia] == f and T[h][ib] == g:
                        count += 1
                        if count > 1:
                            return False
                if count != 1:
                    return False
    return True


def oracle_biproducts(cat: FinCat, a: ObjId, b: ObjId) -> list[BiproductWitness]:
    """All biproduct witnesses for (a, b), by direct definition chasing.

    The equations are tested before the universality clauses purely for
    speed; the accepted set is the same conjunction either way.
    """
    T = cat.table
    homs = cat.hom_map
    ida, idb = cat.identity[a], cat.identity[b]
    out = []
    for p in range(cat.n_objects):
        for pa in homs[p, a]:
            for pb in homs[p, b]:
                for ia in homs[a, p]:
                    if T[pa][ia] != ida:
                        continue
                    for ib in homs[b, p]:
                        if T[pb][ib] != idb:
                            continue
                        ea = T[ia][pa]
                        eb = T[ib][pb]
                        if T[ea][eb] != T[eb][ea]:
                            continue
                        if not _is_product(cat, p, pa, pb, a, b):
                            continue
                        if not _is_coproduct(cat, p, ia, ib, a, b):
                            continue
                        out.append(BiproductWitness(p, pa, pb, ia, ib))
    return out
