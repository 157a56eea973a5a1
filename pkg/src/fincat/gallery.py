"""Builders for the example categories the test suite runs against.

Each builder tabulates a concrete category (maps between finite carriers,
thin categories from preorders, and so on), validates it, and packages it
with expected-result metadata derived independently of the decision
procedures, so the acceptance suite has something to compare against.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .biproduct import CMonStructure
from .core import (
    FinCat,
    InternalConsistencyError,
    Verdict,
    coproduct_category,
    opposite,
    validate_category,
)

DEFAULT_MORPHISM_LIMIT = 6000


class ResourceLimitError(Exception):
    """A builder would exceed its morphism budget."""


class SpecError(ValueError):
    """An input specification violates its own axioms."""


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    cat: FinCat
    cmon: CMonStructure | None = None
    expect: dict[str, Any] = field(default_factory=dict)


def _check_limit(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise ResourceLimitError(
            f"{what} needs {count} morphisms, over the limit of {limit}"
        )


def _map_name(prefix: str, dsrc: str, dtgt: str, images: tuple[int, ...]) -> str:
    if any(v > 9 for v in images):
        raise ResourceLimitError("carrier too large for digit-based naming")
    suffix = "_" + "".join(str(v) for v in images) if images else ""
    return f"{prefix}{dsrc}to{dtgt}{suffix}"


def _assemble_concrete(
    name: str,
    objects: Sequence[str],
    entries: Sequence[tuple[str, int, int, tuple[int, ...]]],
    identity_keys: Sequence[tuple[int, ...]],
) -> tuple[FinCat, dict[tuple[int, int, tuple[int, ...]], int]]:
    """Build a category of index maps closed under composition.

    entries: (display name, dom, cod, index map) in final id order.  The
    composite of index maps g.f is tuple(g[v] for v in f); the set must be
    closed or assembly fails.
    """
    index: dict[tuple[int, int, tuple[int, ...]], int] = {}
    for mid, (_, d, c, key) in enumerate(entries):
        if (d, c, key) in index:
            raise InternalConsistencyError("duplicate concrete morphism")
        index[(d, c, key)] = mid
    dom = tuple(e[1] for e in entries)
    cod = tuple(e[2] for e in entries)
    identity = tuple(index[(a, a, identity_keys[a])] for a in range(len(objects)))
    table = []
    for g, (_, gd, gc, gk) in enumerate(entries):
        row = []
        for f, (_, fd, fc, fk) in enumerate(entries):
            if fc != gd:
                row.append(-1)
                continue
            comp = tuple(gk[v] for v in fk)
            try:
                row.append(index[(fd, gc, comp)])
            except KeyError:
                raise InternalConsistencyError(
                    f"concrete morphisms not closed under composition in {name}"
                ) from None
        table.append(tuple(row))
    cat = FinCat(
        objects=tuple(objects),
        morphisms=tuple(e[0] for e in entries),
        dom=dom,
        cod=cod,
        identity=identity,
        table=tuple(table),
        name=name,
    )
    return cat, index


def _must_validate(cat: FinCat) -> FinCat:
    v = validate_category(cat)
    if not v.ok:
        raise InternalConsistencyError(
            f"builder produced an invalid category ({cat.name}): {v.rule}"
        )
    return cat


# ---------------------------------------------------------------- preorders


@dataclass(frozen=True)
class PreorderSpec:
    elements: tuple[str, ...]
    le: frozenset[tuple[int, int]]


def validate_preorder_spec(spec: PreorderSpec) -> None:
    n = len(spec.elements)
    for i, j in spec.le:
        if not (0 <= i < n and 0 <= j < n):
            raise SpecError(f"relation index out of range: ({i}, {j})")
    for i in range(n):
        if (i, i) not in spec.le:
            raise SpecError(f"relation is not reflexive at {spec.elements[i]}")
    for i, j in spec.le:
        for j2, k in spec.le:
            if j2 == j and (i, k) not in spec.le:
                raise SpecError(
                    f"relation is not transitive: {spec.elements[i]} <= "
                    f"{spec.elements[j]} <= {spec.elements[k]}"
                )


def preorder_iso_pairs(spec: PreorderSpec) -> frozenset[tuple[str, str]]:
    """Ordered pairs of isomorphic elements, read off the relation alone."""
    out = set()
    for i, j in spec.le:
        if (j, i) in spec.le:
            out.add((spec.elements[i], spec.elements[j]))
    return frozenset(out)


def build_preorder(spec: PreorderSpec, name: str = "preorder") -> FinCat:
    """The thin category of a preorder: one morphism per related pair."""
    validate_preorder_spec(spec)
    pairs = sorted(spec.le)
    index = {p: k for k, p in enumerate(pairs)}
    morphisms = tuple(
        f"le_{spec.elements[i]}_{spec.elements[j]}" for i, j in pairs
    )
    dom = tuple(i for i, _ in pairs)
    cod = tuple(j for _, j in pairs)
    identity = tuple(index[(i, i)] for i in range(len(spec.elements)))
    table = []
    for gi, gj in pairs:
        row = []
        for fi, fj in pairs:
            row.append(index[(fi, gj)] if fj == gi else -1)
        table.append(tuple(row))
    cat = FinCat(
        objects=spec.elements,
        morphisms=morphisms,
        dom=dom,
        cod=cod,
        identity=identity,
        table=tuple(table),
        name=name,
    )
    return _must_validate(cat)


def preorder_chain(n: int) -> PreorderSpec:
    le = {(i, j) for i in range(n) for j in range(i, n)}
    return PreorderSpec(tuple(f"c{i}" for i in range(n)), frozenset(le))


def preorder_indiscrete(n: int) -> PreorderSpec:
    le = {(i, j) for i in range(n) for j in range(n)}
    return PreorderSpec(tuple(f"x{i}" for i in range(n)), frozenset(le))


def preorder_discrete(n: int) -> PreorderSpec:
    return PreorderSpec(
        tuple(f"d{i}" for i in range(n)), frozenset((i, i) for i in range(n))
    )


def preorder_diamond() -> PreorderSpec:
    # bot <= a, b <= top with a, b incomparable
    elements = ("bot", "a", "b", "top")
    le = {(i, i) for i in range(4)}
    le |= {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    return PreorderSpec(elements, frozenset(le))


def preorder_mixed() -> PreorderSpec:
    # p and q isomorphic, r strictly below both
    elements = ("p", "q", "r")
    le = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (2, 0), (2, 1)}
    return PreorderSpec(elements, frozenset(le))


# ------------------------------------------------------- sets and pointed sets


def build_finset_fragment(
    sizes: Sequence[int], limit: int = DEFAULT_MORPHISM_LIMIT
) -> FinCat:
    """Skeletal finite sets: one object per cardinality, all functions."""
    if len(set(sizes)) != len(sizes):
        raise SpecError("cardinalities must be distinct")
    total = sum(nb**na if na else 1 for na in sizes for nb in sizes)
    _check_limit(total, limit, "finite set fragment")
    objects = [f"S{n}" for n in sizes]
    entries = []
    for i, na in enumerate(sizes):
        for j, nb in enumerate(sizes):
            for images in itertools.product(range(nb), repeat=na):
                entries.append((_map_name("m", str(na), str(nb), images), i, j, images))
    identity_keys = [tuple(range(n)) for n in sizes]
    cat, _ = _assemble_concrete(f"finset_{max(sizes)}", objects, entries, identity_keys)
    return _must_validate(cat)


def build_finset_skeleton(max_size: int, limit: int = DEFAULT_MORPHISM_LIMIT) -> FinCat:
    return build_finset_fragment(range(max_size + 1), limit)


def build_pointed_sets(max_size: int, limit: int = DEFAULT_MORPHISM_LIMIT) -> FinCat:
    """Pointed sets of sizes 1..max_size with basepoint-preserving maps.

    Element 0 is the basepoint of every carrier."""
    sizes = list(range(1, max_size + 1))
    total = sum(nb ** (na - 1) for na in sizes for nb in sizes)
    _check_limit(total, limit, "pointed set fragment")
    objects = [f"P{n}" for n in sizes]
    entries = []
    for i, na in enumerate(sizes):
        for j, nb in enumerate(sizes):
            for rest in itertools.product(range(nb), repeat=na - 1):
                images = (0,) + rest
                entries.append((_map_name("p", str(na), str(nb), images), i, j, images))
    identity_keys = [tuple(range(n)) for n in sizes]
    cat, _ = _assemble_concrete(f"pointed_{max_size}", objects, entries, identity_keys)
    return _must_validate(cat)


# ------------------------------------------------------------ abelian groups

_GROUP_RE = re.compile(r"^Z(\d+)(xZ(\d+))*$")


def _parse_group(name: str) -> tuple[int, ...]:
    if not _GROUP_RE.match(name):
        raise SpecError(f"unrecognized group name: {name!r} (expected like Z2xZ2)")
    factors = tuple(int(p[1:]) for p in name.split("x"))
    if any(f < 1 for f in factors):
        raise SpecError(f"cyclic factors must be positive: {name!r}")
    return factors


def build_ab_fragment(
    group_names: Sequence[str],
    with_cmon: bool = True,
    limit: int = DEFAULT_MORPHISM_LIMIT,
) -> tuple[FinCat, CMonStructure | None]:
    """Finite abelian groups with all homomorphisms.

    Groups are named as products of cyclic groups, e.g. "Z2xZ2".  Homs are
    enumerated from generator images only (a tuple of admissible images per
    cyclic factor), never from raw functions.  With with_cmon, pointwise
    addition and the zero homs are emitted alongside.
    """
    if len(set(group_names)) != len(group_names):
        raise SpecError("group names must be distinct")
    factors = [_parse_group(g) for g in group_names]
    elements = [
        tuple(itertools.product(*(range(f) for f in fs))) for fs in factors
    ]
    elem_index = [{e: k for k, e in enumerate(els)} for els in elements]

    def hom_count(si: int, ti: int) -> int:
        total = 1
        for nk in factors[si]:
            total *= sum(
                1
                for t in elements[ti]
                if all((nk * t[j]) % factors[ti][j] == 0 for j in range(len(t)))
            )
        return total

    total = sum(hom_count(i, j) for i in range(len(factors)) for j in range(len(factors)))
    _check_limit(total, limit, "abelian group fragment")

    entries = []
    homset_ids: dict[tuple[int, int], list[int]] = {}
    for i in range(len(factors)):
        for j in range(len(factors)):
            candidates = []
            for nk in factors[i]:
                candidates.append(
                    [
                        t
                        for t in elements[j]
                        if all((nk * t[c]) % factors[j][c] == 0 for c in range(len(t)))
                    ]
                )
            ids = []
            for gen_images in itertools.product(*candidates):
                images = []
                for x in elements[i]:
                    acc = [0] * len(factors[j])
                    for k, img in enumerate(gen_images):
                        for c in range(len(acc)):
                            acc[c] = (acc[c] + x[k] * img[c]) % factors[j][c]
                    images.append(elem_index[j][tuple(acc)])
                key = tuple(images)
                ids.append(len(entries))
                entries.append(
                    (_map_name("h", group_names[i], group_names[j], key), i, j, key)
                )
            homset_ids[(i, j)] = ids

    identity_keys = [tuple(range(len(els))) for els in elements]
    cat, index = _assemble_concrete(
        "ab_" + "_".join(group_names), list(group_names), entries, identity_keys
    )
    _must_validate(cat)
    if not with_cmon:
        return cat, None

    add_elem = [
        {
            (x, y): elem_index[i][
                tuple((a + b) % f for a, b, f in zip(ex, ey, factors[i]))
            ]
            for x, ex in enumerate(els)
            for y, ey in enumerate(els)
        }
        for i, els in enumerate(elements)
    ]
    add: dict[tuple[int, int], int] = {}
    zero: dict[tuple[int, int], int] = {}
    for (i, j), ids in homset_ids.items():
        zero_key = tuple(0 for _ in elements[i])
        zero[(i, j)] = index[(i, j, zero_key)]
        for m1 in ids:
            k1 = entries[m1][3]
            for m2 in ids:
                k2 = entries[m2][3]
                skey = tuple(add_elem[j][(v1, v2)] for v1, v2 in zip(k1, k2))
                add[(m1, m2)] = index[(i, j, skey)]
    return cat, CMonStructure(add=add, zero=zero)


# -------------------------------------------- commutative inverse semigroups


@dataclass(frozen=True)
class InverseSemigroupSpec:
    name: str
    table: tuple[tuple[int, ...], ...]


def validate_invsemi_spec(spec: InverseSemigroupSpec) -> None:
    n = len(spec.table)
    t = spec.table
    for row in t:
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise SpecError(f"{spec.name}: multiplication table malformed")
    for x in range(n):
        for y in range(n):
            if t[x][y] != t[y][x]:
                raise SpecError(f"{spec.name}: not commutative at ({x}, {y})")
            for z in range(n):
                if t[t[x][y]][z] != t[x][t[y][z]]:
                    raise SpecError(f"{spec.name}: not associative at ({x}, {y}, {z})")
    for x in range(n):
        inverses = [y for y in range(n) if t[t[x][y]][x] == x and t[t[y][x]][y] == y]
        if len(inverses) != 1:
            raise SpecError(
                f"{spec.name}: element {x} has {len(inverses)} inverses, wanted 1"
            )


def semigroup_neutral(spec: InverseSemigroupSpec) -> int | None:
    n = len(spec.table)
    for e in range(n):
        if all(spec.table[e][x] == x for x in range(n)):
            return e
    return None


def invsemi_z2() -> InverseSemigroupSpec:
    return InverseSemigroupSpec("Z2", ((0, 1), (1, 0)))


def invsemi_semilattice3() -> InverseSemigroupSpec:
    # three idempotents; distinct elements multiply to the bottom
    return InverseSemigroupSpec("L3", ((0, 0, 0), (0, 1, 0), (0, 0, 2)))


def invsemi_klein() -> InverseSemigroupSpec:
    t = tuple(tuple(x ^ y for y in range(4)) for x in range(4))
    return InverseSemigroupSpec("Z2xZ2", t)


def build_inverse_semigroup_category(
    specs: Sequence[InverseSemigroupSpec] | None = None,
    limit: int = DEFAULT_MORPHISM_LIMIT,
) -> FinCat:
    """Commutative inverse semigroups with unital homomorphisms.

    A homomorphism must send every neutral element of its source to a
    neutral element of its target; maps from a non-unital source are
    unconstrained beyond multiplicativity."""
    if specs is None:
        specs = [invsemi_z2(), invsemi_semilattice3(), invsemi_klein()]
    for spec in specs:
        validate_invsemi_spec(spec)
    if len({s.name for s in specs}) != len(specs):
        raise SpecError("semigroup names must be distinct")
    neutrals = [semigroup_neutral(s) for s in specs]
    sizes = [len(s.table) for s in specs]
    entries = []
    count = 0
    for i, si in enumerate(specs):
        for j, sj in enumerate(specs):
            for images in itertools.product(range(sizes[j]), repeat=sizes[i]):
                ok = all(
                    images[si.table[x][y]] == sj.table[images[x]][images[y]]
                    for x in range(sizes[i])
                    for y in range(sizes[i])
                )
                if ok and neutrals[i] is not None:
                    ok = images[neutrals[i]] == neutrals[j]
                if ok:
                    count += 1
                    _check_limit(count, limit, "inverse semigroup fragment")
                    entries.append(
                        (_map_name("h", si.name, sj.name, images), i, j, images)
                    )
    identity_keys = [tuple(range(n)) for n in sizes]
    cat, _ = _assemble_concrete(
        "invsemi", [s.name for s in specs], entries, identity_keys
    )
    return _must_validate(cat)


# ------------------------------------------------------- contractive systems


@dataclass(frozen=True)
class ContractiveSystemSpec:
    name: str
    dist: tuple[tuple[Fraction, ...], ...]
    endo: tuple[int, ...]


def validate_con_spec(spec: ContractiveSystemSpec) -> None:
    n = len(spec.dist)
    d = spec.dist
    if len(spec.endo) != n:
        raise SpecError(f"{spec.name}: endo map has wrong length")
    for row in d:
        if len(row) != n:
            raise SpecError(f"{spec.name}: distance table malformed")
    for i in range(n):
        if d[i][i] != 0:
            raise SpecError(f"{spec.name}: nonzero self-distance at {i}")
        for j in range(n):
            if d[i][j] != d[j][i]:
                raise SpecError(f"{spec.name}: asymmetric distance at ({i}, {j})")
            if i != j and d[i][j] <= 0:
                raise SpecError(f"{spec.name}: non-positive distance at ({i}, {j})")
            for k in range(n):
                if d[i][k] > d[i][j] + d[j][k]:
                    raise SpecError(
                        f"{spec.name}: triangle inequality fails at ({i}, {j}, {k})"
                    )
    for v in spec.endo:
        if not 0 <= v < n:
            raise SpecError(f"{spec.name}: endo image out of range")
    for i in range(n):
        for j in range(n):
            if i != j and not d[spec.endo[i]][spec.endo[j]] < d[i][j]:
                raise SpecError(
                    f"{spec.name}: endo is not strictly contractive at ({i}, {j})"
                )


def con_fixed_points(spec: ContractiveSystemSpec) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(spec.endo) if v == i)


def con_empty() -> ContractiveSystemSpec:
    return ContractiveSystemSpec("empty", (), ())


def con_terminal() -> ContractiveSystemSpec:
    return ContractiveSystemSpec("term", ((Fraction(0),),), (0,))


def con_two_point() -> ContractiveSystemSpec:
    z, one = Fraction(0), Fraction(1)
    return ContractiveSystemSpec("s2", ((z, one), (one, z)), (0, 0))


def con_three_point() -> ContractiveSystemSpec:
    z, one, two = Fraction(0), Fraction(1), Fraction(2)
    dist = ((z, one, two), (one, z, one), (two, one, z))
    return ContractiveSystemSpec("s3", dist, (0, 0, 0))


def build_con_fragment(
    specs: Sequence[ContractiveSystemSpec] | None = None,
    limit: int = DEFAULT_MORPHISM_LIMIT,
) -> FinCat:
    """Finite metric spaces with a contractive endomap; morphisms are
    nonexpansive maps commuting with the endomaps.  Distances are exact
    rationals.  The one-point system (the terminal object) is always
    included.  Fixed points, when present, are checked to be unique."""
    if specs is None:
        specs = [con_empty(), con_two_point(), con_three_point()]
    specs = list(specs)
    if not any(len(s.endo) == 1 for s in specs):
        specs.insert(0, con_terminal())
    for spec in specs:
        validate_con_spec(spec)
        if len(con_fixed_points(spec)) > 1:
            raise InternalConsistencyError(
                f"{spec.name}: contractive endo with several fixed points"
            )
    if len({s.name for s in specs}) != len(specs):
        raise SpecError("system names must be distinct")
    sizes = [len(s.endo) for s in specs]
    entries = []
    count = 0
    for i, si in enumerate(specs):
        for j, sj in enumerate(specs):
            for images in itertools.product(range(sizes[j]), repeat=sizes[i]):
                ok = all(images[si.endo[x]] == sj.endo[images[x]] for x in range(sizes[i]))
                if ok:
                    ok = all(
                        sj.dist[images[x]][images[y]] <= si.dist[x][y]
                        for x in range(sizes[i])
                        for y in range(x + 1, sizes[i])
                    )
                if ok:
                    count += 1
                    _check_limit(count, limit, "contractive system fragment")
                    entries.append(
                        (_map_name("h", si.name, sj.name, images), i, j, images)
                    )
    identity_keys = [tuple(range(n)) for n in sizes]
    cat, _ = _assemble_concrete("con", [s.name for s in specs], entries, identity_keys)
    return _must_validate(cat)


# ----------------------------------------------------------- random categories


def _random_preorder(rng: random.Random, max_objects: int, cap: int) -> FinCat | None:
    n = rng.randint(1, min(3, max_objects))
    le = {(i, i) for i in range(n)}
    for _ in range(rng.randint(0, n * n)):
        le.add((rng.randrange(n), rng.randrange(n)))
    changed = True
    while changed:
        changed = False
        for i, j in list(le):
            for j2, k in list(le):
                if j2 == j and (i, k) not in le:
                    le.add((i, k))
                    changed = True
    if len(le) > cap:
        return None
    spec = PreorderSpec(tuple(f"x{i}" for i in range(n)), frozenset(le))
    return build_preorder(spec, name="random_preorder")


def _close_concrete(
    sizes: list[int],
    gens: dict[tuple[int, int], list[tuple[int, ...]]],
    cap: int,
) -> list[tuple[int, int, tuple[int, ...]]] | None:
    """Worklist closure of generating maps under composition; None on
    overflow."""
    entries: list[tuple[int, int, tuple[int, ...]]] = []
    seen: set[tuple[int, int, tuple[int, ...]]] = set()

    def push(item: tuple[int, int, tuple[int, ...]]) -> bool:
        if item in seen:
            return True
        if len(entries) >= cap:
            return False
        seen.add(item)
        entries.append(item)
        return True

    for i, sz in enumerate(sizes):
        if not push((i, i, tuple(range(sz)))):
            return None
    for (i, j), maps in sorted(gens.items()):
        for mp in maps:
            if not push((i, j, mp)):
                return None
    k = 0
    while k < len(entries):
        fi, fj, fk_ = entries[k]
        for gi, gj, gk_ in list(entries):
            if gi == fj:
                if not push((fi, gj, tuple(gk_[v] for v in fk_))):
                    return None
            if fi == gj:
                if not push((gi, fj, tuple(fk_[v] for v in gk_))):
                    return None
        k += 1
    return entries


def _random_concrete(
    rng: random.Random, max_objects: int, cap: int, monoid: bool
) -> FinCat | None:
    if monoid or max_objects < 2:
        sizes = [rng.randint(1, 3)]
    else:
        sizes = [rng.randint(0, 3) for _ in range(rng.randint(2, min(3, max_objects)))]
    gens: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    n_gens = rng.randint(1, 2)
    for _ in range(n_gens):
        i = rng.randrange(len(sizes))
        j = rng.randrange(len(sizes))
        if sizes[i] > 0 and sizes[j] == 0:
            continue
        mp = tuple(rng.randrange(sizes[j]) for _ in range(sizes[i]))
        gens.setdefault((i, j), []).append(mp)
    closed = _close_concrete(sizes, gens, cap)
    if closed is None:
        return None
    objects = [f"X{i}" for i in range(len(sizes))]
    entries = [
        (_map_name("f", str(i), str(j), mp) + f"_o{i}{j}", i, j, mp)
        for i, j, mp in closed
    ]
    # object indices are baked into the names, so equal maps between equal
    # carriers on different objects stay distinct
    identity_keys = [tuple(range(s)) for s in sizes]
    cat, _ = _assemble_concrete(
        "random_monoid" if monoid else "random_concrete", objects, entries, identity_keys
    )
    return cat


def _random_cat(
    rng: random.Random, max_objects: int, max_morphisms: int, depth: int
) -> FinCat | None:
    if max_objects < 1 or max_morphisms < 1:
        return None
    kind = rng.randrange(8) if depth == 0 else rng.randrange(5)
    if kind in (0, 1, 5):
        return _random_preorder(rng, max_objects, max_morphisms)
    if kind in (2, 3):
        return _random_concrete(rng, max_objects, max_morphisms, monoid=(kind == 2))
    if kind == 4:
        return _random_concrete(rng, max_objects, max_morphisms, monoid=True)
    if kind == 6:
        sub = _random_cat(rng, max_objects, max_morphisms, depth + 1)
        return None if sub is None else opposite(sub)
    left = _random_cat(rng, max_objects - 1, max_morphisms // 2, depth + 1)
    right = _random_cat(rng, max_objects - 1, max_morphisms // 2, depth + 1)
    if left is None or right is None:
        return None
    return coproduct_category(left, right, name="random_coproduct")


def build_random_category(
    seed: int, max_objects: int = 4, max_morphisms: int = 12
) -> FinCat:
    """A pseudorandom valid finite category, reproducible from the seed.

    Draws from several always-valid constructions: thin categories of
    random preorders, transformation monoids, composition-closed fragments
    of finite sets, opposites and disjoint unions of the above.  Retries on
    overflow; raises ResourceLimitError when the bounds leave no room.
    """
    if max_objects < 1 or max_morphisms < 1:
        raise ResourceLimitError("bounds leave no room for any category")
    rng = random.Random(seed)
    for _ in range(64):
        cat = _random_cat(rng, max_objects, max_morphisms, 0)
        if cat is not None and 0 < cat.n_morphisms <= max_morphisms:
            v = validate_category(cat)
            if not v.ok:
                raise InternalConsistencyError(
                    f"random category failed validation: {v.rule}"
                )
            return cat
    raise ResourceLimitError("random category generation retries exhausted")


# ------------------------------------------------------------------ registry


def _pairs(*pairs: tuple[str, str]) -> frozenset[tuple[str, str]]:
    return frozenset(pairs)


def _preorder_entry(name: str, spec: PreorderSpec, zero: bool) -> GalleryEntry:
    cat = build_preorder(spec, name=name)
    iso = preorder_iso_pairs(spec)
    return GalleryEntry(
        name=name,
        cat=cat,
        expect={
            "kind": "preorder",
            "has_zero_structure": zero,
            "biproduct_pairs": iso,
            "iso_pairs": iso,
        },
    )


def gallery_registry() -> list[GalleryEntry]:
    """All stock example categories with their expected metadata.

    Expected values here are derived from the defining data (relations,
    carrier sizes, unitality, fixed points), not from the decision
    procedures under test.
    """
    entries: list[GalleryEntry] = []

    entries.append(_preorder_entry("terminal", PreorderSpec(("star",), frozenset({(0, 0)})), True))
    entries.append(_preorder_entry("walking_arrow", preorder_chain(2), False))
    entries.append(_preorder_entry("chain3", preorder_chain(3), False))
    entries.append(_preorder_entry("diamond", preorder_diamond(), False))
    entries.append(_preorder_entry("discrete2", preorder_discrete(2), False))
    entries.append(_preorder_entry("indiscrete2", preorder_indiscrete(2), True))
    entries.append(_preorder_entry("indiscrete3", preorder_indiscrete(3), True))
    entries.append(_preorder_entry("mixed_preorder", preorder_mixed(), False))

    finset2 = build_finset_skeleton(2)
    entries.append(
        GalleryEntry(
            name="finset2",
            cat=finset2,
            expect={
                "kind": "finset",
                "has_zero_structure": False,
                "biproduct_pairs": _pairs(("S0", "S0")),
            },
        )
    )

    pointed3 = build_pointed_sets(3)
    entries.append(
        GalleryEntry(
            name="pointed3",
            cat=pointed3,
            expect={
                "kind": "pointed",
                "has_zero_structure": True,
                "biproduct_pairs": _pairs(
                    ("P1", "P1"),
                    ("P1", "P2"),
                    ("P2", "P1"),
                    ("P1", "P3"),
                    ("P3", "P1"),
                ),
            },
        )
    )

    ab_trivial_cat, ab_trivial_cm = build_ab_fragment(["Z1"])
    entries.append(
        GalleryEntry(
            name="ab_trivial",
            cat=ab_trivial_cat,
            cmon=ab_trivial_cm,
            expect={
                "kind": "ab",
                "has_zero_structure": True,
                "biproduct_pairs": _pairs(("Z1", "Z1")),
            },
        )
    )

    ab_small_cat, ab_small_cm = build_ab_fragment(["Z1", "Z2", "Z2xZ2"])
    ab_small_pairs = _pairs(
        ("Z1", "Z1"),
        ("Z1", "Z2"),
        ("Z2", "Z1"),
        ("Z1", "Z2xZ2"),
        ("Z2xZ2", "Z1"),
        ("Z2", "Z2"),
    )
    entries.append(
        GalleryEntry(
            name="ab_small",
            cat=ab_small_cat,
            cmon=ab_small_cm,
            expect={
                "kind": "ab",
                "has_zero_structure": True,
                "biproduct_pairs": ab_small_pairs,
            },
        )
    )

    ab_z2z3_cat, ab_z2z3_cm = build_ab_fragment(["Z2", "Z3"])
    entries.append(
        GalleryEntry(
            name="ab_z2z3",
            cat=ab_z2z3_cat,
            cmon=ab_z2z3_cm,
            expect={
                "kind": "ab",
                "has_zero_structure": True,
                "biproduct_pairs": frozenset(),
            },
        )
    )

    invsemi = build_inverse_semigroup_category()
    entries.append(
        GalleryEntry(
            name="invsemi",
            cat=invsemi,
            expect={
                "kind": "invsemi",
                "has_zero_structure": False,
                "biproduct_pairs": _pairs(("Z2", "Z2")),
                "unital": {"Z2": True, "L3": False, "Z2xZ2": True},
            },
        )
    )

    con = build_con_fragment()
    entries.append(
        GalleryEntry(
            name="con",
            cat=con,
            expect={
                "kind": "con",
                "has_zero_structure": False,
                "biproduct_pairs": _pairs(
                    ("empty", "empty"),
                    ("term", "term"),
                    ("term", "s2"),
                    ("s2", "term"),
                    ("term", "s3"),
                    ("s3", "term"),
                ),
                "fixed_points": {
                    "term": 1,
                    "empty": 0,
                    "s2": 1,
                    "s3": 1,
                },
            },
        )
    )

    finset1 = build_finset_fragment([0, 1])
    glued = coproduct_category(ab_small_cat, finset1, name="ab_disjoint_set")
    # (S1, S1) is real here: with S2 missing, every homset out of S1 is at
    # most a singleton, so S1 is its own self-coproduct in this fragment
    entries.append(
        GalleryEntry(
            name="ab_disjoint_set",
            cat=glued,
            expect={
                "kind": "coproduct",
                "has_zero_structure": False,
                "biproduct_pairs": ab_small_pairs | _pairs(("S0", "S0"), ("S1", "S1")),
                "blocks": (ab_small_cat.objects, finset1.objects),
            },
        )
    )

    return entries


def build_ab_tower3(limit: int = DEFAULT_MORPHISM_LIMIT) -> FinCat:
    """The fragment {Z2, Z2xZ2, Z2xZ2xZ2}: big enough to iterate binary
    combination twice, which is what the ternary coherence check needs.
    Kept out of the default registry because exhaustive witness sweeps on
    its 682 morphisms would dominate every suite run."""
    cat, _ = build_ab_fragment(["Z2", "Z2xZ2", "Z2xZ2xZ2"], with_cmon=False, limit=limit)
    return cat


def build_by_name(name: str, **params: Any) -> GalleryEntry:
    """CLI entry point: build a stock category or a parametric family."""
    stock = {e.name: e for e in gallery_registry()}
    if name in stock:
        return stock[name]
    if name == "finset":
        return GalleryEntry(name, build_finset_skeleton(int(params.get("max_size", 2))))
    if name == "pointed":
        return GalleryEntry(name, build_pointed_sets(int(params.get("max_size", 3))))
    if name == "chain":
        return GalleryEntry(name, build_preorder(preorder_chain(int(params.get("size", 3))), name))
    if name == "indiscrete":
        return GalleryEntry(
            name, build_preorder(preorder_indiscrete(int(params.get("size", 2))), name)
        )
    if name == "discrete":
        return GalleryEntry(
            name, build_preorder(preorder_discrete(int(params.get("size", 2))), name)
        )
    if name == "ab":
        groups = params.get("groups") or ["Z1", "Z2", "Z2xZ2"]
        cat, cm = build_ab_fragment(groups)
        return GalleryEntry(name, cat, cmon=cm)
    if name == "ab_tower3":
        return GalleryEntry(name, build_ab_tower3())
    if name == "random":
        cat = build_random_category(
            int(params.get("seed", 0)),
            max_objects=int(params.get("max_objects", 4)),
            max_morphisms=int(params.get("max_morphisms", 12)),
        )
        return GalleryEntry(name, cat)
    raise SpecError(f"unknown gallery name: {name!r}")


def gallery_names() -> list[str]:
    names = [e.name for e in gallery_registry()]
    names += ["finset", "pointed", "chain", "indiscrete", "discrete", "ab", "ab_tower3", "random"]
    return names
