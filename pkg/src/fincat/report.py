"""Machine-readable output: reports, fingerprints, replay, CSV, figures.

Reports are plain dicts with a fixed field order so that serializing the
same input twice yields byte-identical JSON (timing aside).  Object and
morphism ids are translated to their names on the way out; the witness key
decides how a value is rendered.
"""

from __future__ import annotations

import csv
import hashlib
import json
import time
from typing import Any, Iterable, Mapping, Sequence

from .biproduct import BiproductWitness
from .core import FinCat, Verdict, classify_morphism
from .universal import CospanWitness, SpanWitness

SCHEMA = "fincat-report/1"

# Witness keys that carry object ids / morphism ids (or chains of them).
# Anything else (counts, indices, flags, rule names) passes through as-is.
OBJECT_KEYS = frozenset({"a", "b", "x", "obj", "apex", "nadir", "carrier"})
MORPHISM_KEYS = frozenset(
    {
        "m",
        "f",
        "g",
        "h",
        "h1",
        "h2",
        "left",
        "right",
        "u",
        "p_a",
        "p_b",
        "i_a",
        "i_b",
        "lhs",
        "rhs",
        "legs",
        "zero",
        "ident",
    }
)


def category_fingerprint(cat: FinCat) -> str:
    """Content hash of the structural data, stable across runs."""
    payload = json.dumps(
        {
            "objects": list(cat.objects),
            "morphisms": list(cat.morphisms),
            "dom": list(cat.dom),
            "cod": list(cat.cod),
            "identity": list(cat.identity),
            "table": [list(r) for r in cat.table],
        },
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _render_value(cat: FinCat, key: str, value: Any) -> Any:
    # bare names, not decorated labels: replay resolves them with mor_id
    if key in OBJECT_KEYS and isinstance(value, int):
        return cat.objects[value]
    if key in MORPHISM_KEYS:
        if isinstance(value, int):
            return cat.morphisms[value]
        if isinstance(value, (list, tuple)):
            return [cat.morphisms[v] for v in value]
    return value


def render_witness(cat: FinCat, witness: Mapping[str, Any] | None) -> dict[str, Any] | None:
    if witness is None:
        return None
    return {k: _render_value(cat, k, v) for k, v in witness.items()}


def verdict_to_json(cat: FinCat, label: str, v: Verdict) -> dict[str, Any]:
    return {
        "label": label,
        "ok": v.ok,
        "rule": v.rule,
        "witness": render_witness(cat, v.witness),
    }


def witness_to_json(cat: FinCat, w: BiproductWitness) -> dict[str, str]:
    return {
        "carrier": cat.objects[w.carrier],
        "pA": cat.morphisms[w.p_a],
        "pB": cat.morphisms[w.p_b],
        "iA": cat.morphisms[w.i_a],
        "iB": cat.morphisms[w.i_b],
    }


def span_to_json(cat: FinCat, w: SpanWitness) -> dict[str, str]:
    return {
        "apex": cat.objects[w.apex],
        "left": cat.morphisms[w.left],
        "right": cat.morphisms[w.right],
    }


def cospan_to_json(cat: FinCat, w: CospanWitness) -> dict[str, str]:
    return {
        "nadir": cat.objects[w.nadir],
        "left": cat.morphisms[w.left],
        "right": cat.morphisms[w.right],
    }


class ReportBuilder:
    """Accumulates verdicts and certificates for one CLI invocation."""

    def __init__(self, command: Sequence[str], cat: FinCat | None = None):
        self._t0 = time.perf_counter()
        self.command = list(command)
        self.cat = cat
        self.verdicts: list[dict[str, Any]] = []
        self.certificates: dict[str, Any] = {}
        self.counterexamples: list[dict[str, Any]] = []
        self.extra: dict[str, Any] = {}

    def add(self, label: str, v: Verdict) -> None:
        if self.cat is not None:
            entry = verdict_to_json(self.cat, label, v)
        else:
            entry = {
                "label": label,
                "ok": v.ok,
                "rule": v.rule,
                "witness": dict(v.witness) if v.witness is not None else None,
            }
        self.verdicts.append(entry)
        if not v.ok:
            self.counterexamples.append(
                {"label": label, "rule": v.rule, "witness": entry["witness"]}
            )

    def certify(self, name: str, payload: Any) -> None:
        self.certificates[name] = payload

    def finish(self) -> dict[str, Any]:
        out: dict[str, Any] = {"schema": SCHEMA, "command": self.command}
        if self.cat is not None:
            out["category"] = {
                "name": self.cat.name or "",
                "fingerprint": category_fingerprint(self.cat),
                "objects": self.cat.n_objects,
                "morphisms": self.cat.n_morphisms,
            }
        out.update(self.extra)
        out["verdicts"] = self.verdicts
        out["certificates"] = self.certificates
        out["counterexamples"] = self.counterexamples
        out["timing_ms"] = int((time.perf_counter() - self._t0) * 1000)
        return out


def dumps(report: Mapping[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


# ------------------------------------------------------------------- replay


def _ids(cat: FinCat, value: Any) -> Any:
    if isinstance(value, str):
        return cat.mor_id(value)
    return [cat.mor_id(v) for v in value]


def replay_counterexample(cat: FinCat, entry: Mapping[str, Any]) -> bool:
    """Re-derive a counterexample from the category it came from.

    Returns True when recomputing the cited composites reproduces the
    violation the rule describes.  Unknown rules fall back to checking that
    every cited name still resolves."""
    rule = entry["rule"]
    w = entry.get("witness") or {}
    T = cat.table

    def mor(key: str) -> int:
        return cat.mor_id(w[key])

    def obj(key: str) -> int:
        return cat.obj_id(w[key])

    def chain(key: str) -> int:
        mids = [cat.mor_id(nm) for nm in w[key]]
        out = mids[-1]
        for g in reversed(mids[:-1]):
            out = T[g][out]
            if out < 0:
                raise ValueError("chain does not compose")
        return out

    if rule in ("left_unit", "right_unit"):
        f = mor("f")
        e = cat.identity[cat.cod[f]] if rule == "left_unit" else cat.identity[cat.dom[f]]
        got = T[e][f] if rule == "left_unit" else T[f][e]
        return got == mor("m") and got != f
    if rule == "associativity":
        h, g, f = mor("h"), mor("g"), mor("f")
        lhs = T[T[h][g]][f]
        rhs = T[h][T[g][f]]
        return lhs == mor("lhs") and rhs == mor("rhs") and lhs != rhs
    if rule in ("section_a", "section_b"):
        f, g = mor("f"), mor("g")
        got = T[g][f]
        return got == mor("m") and got != cat.identity[cat.cod[g]]
    if rule in ("zero_ab", "zero_ba"):
        f, g = mor("f"), mor("g")
        got = T[g][f]
        return got == mor("m") and not classify_morphism(cat, got).zero
    if rule == "idempotents_commute" and "lhs" in w:
        return chain("lhs") != chain("rhs")
    if rule == "cross_not_zero":
        return chain("lhs") == mor("m") and not classify_morphism(cat, mor("m")).zero
    if rule == "no_zero_morphism":
        a, b = obj("a"), obj("b")
        return not any(classify_morphism(cat, m).zero for m in cat.hom(a, b))
    if rule in ("product:no_mediator", "product:not_unique") and "apex" in w:
        x, f, g = obj("x"), mor("f"), mor("g")
        apex, left, right = obj("apex"), mor("left"), mor("right")
        mediators = [
            h for h in cat.hom(x, apex) if T[left][h] == f and T[right][h] == g
        ]
        return len(mediators) == 0 if rule.endswith("no_mediator") else len(mediators) > 1
    if rule in ("coproduct:no_mediator", "coproduct:not_unique") and "nadir" in w:
        x, f, g = obj("x"), mor("f"), mor("g")
        nadir, left, right = obj("nadir"), mor("left"), mor("right")
        mediators = [
            h for h in cat.hom(nadir, x) if T[h][left] == f and T[h][right] == g
        ]
        return len(mediators) == 0 if rule.endswith("no_mediator") else len(mediators) > 1
    if rule == "sum_product_mismatch":
        return mor("f") != mor("g")
    if rule in ("spurious_composite", "missing_composite"):
        g, f = mor("g"), mor("f")
        composable = cat.cod[f] == cat.dom[g]
        filled = T[g][f] >= 0
        return (filled and not composable) if rule == "spurious_composite" else (composable and not filled)
    if rule == "composite_endpoints":
        g, f, m = mor("g"), mor("f"), mor("m")
        return T[g][f] == m and (cat.dom[m] != cat.dom[f] or cat.cod[m] != cat.cod[g])

    # fallback: every cited name must still resolve
    try:
        for k, v in w.items():
            if k in OBJECT_KEYS and isinstance(v, str):
                cat.obj_id(v)
            elif k in MORPHISM_KEYS and isinstance(v, (str, list, tuple)):
                _ids(cat, v)
    except ValueError:
        return False
    return True


# --------------------------------------------------------------- CSV, figures


def write_pairs_csv(path: str, rows: Iterable[Mapping[str, Any]]) -> None:
    fieldnames = [
        "category",
        "object_a",
        "object_b",
        "products",
        "coproducts",
        "biproducts",
    ]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_existence_figure(
    cat: FinCat, counts: Sequence[Sequence[int]], path: str, title: str
) -> None:
    """Grid of biproduct counts per ordered pair; nonzero cells shaded."""
    plt = _pyplot()
    n = cat.n_objects
    fig, ax = plt.subplots(figsize=(1.2 + 0.6 * n, 1.2 + 0.6 * n))
    shaded = [[1 if counts[a][b] else 0 for b in range(n)] for a in range(n)]
    ax.imshow(shaded, cmap="Greens", vmin=0, vmax=1.6)
    for a in range(n):
        for b in range(n):
            ax.text(b, a, str(counts[a][b]), ha="center", va="center", fontsize=9)
    ax.set_xticks(range(n), cat.objects, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(n), cat.objects, fontsize=8)
    ax.set_xlabel("B")
    ax.set_ylabel("A")
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_summary_figure(names: Sequence[str], counts: Sequence[int], path: str) -> None:
    """Bar chart: pairs admitting a biproduct, per category."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(1.5 + 0.45 * len(names), 3.2))
    ax.bar(range(len(names)), counts, color="#4a8")
    ax.set_xticks(range(len(names)), names, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("pairs with a biproduct")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
