"""Exhaustive generation of small finite categories, up to isomorphism."""
from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .completion import Bounds
from .fincat import FiniteCategory, discrete, find_isomorphism, idem, span, terminal_category
from .presheaf import PresheafDiagram, identity_nat, presheaf_colimit, terminal_presheaf, yoneda
from .recipe import ShapeClass, Status


def _hom_matrices(n: int, max_morphisms: int, max_endo: int | None):
    cells = [(x, y) for x in range(n) for y in range(n)]
    seen = set()
    budget = max_morphisms - n

    def rec(k, left, acc):
        if k == len(cells):
            h = tuple(tuple(acc[x * n + y] for y in range(n)) for x in range(n))
            canon = min(tuple(tuple(h[p[x]][p[y]] for y in range(n)) for x in range(n))
                        for p in itertools.permutations(range(n)))
            if canon not in seen:
                seen.add(canon)
                yield canon
            return
        x, y = cells[k]
        base = 1 if x == y else 0
        top = left if max_endo is None or x != y else min(left, max_endo - 1)
        for extra in range(top + 1):
            acc.append(base + extra)
            yield from rec(k + 1, left - extra, acc)
            acc.pop()

    if budget >= 0:
        yield from rec(0, budget, [])


def _tables(n: int, h):
    src, tgt = list(range(n)), list(range(n))
    for x in range(n):
        for y in range(n):
            extra = h[x][y] - (1 if x == y else 0)
            src += [x] * extra
            tgt += [y] * extra
    m = len(src)
    homs = {(x, y): [k for k in range(m) if src[k] == x and tgt[k] == y] for x in range(n) for y in range(n)}
    table = [[-1] * m for _ in range(m)]
    for f in range(m):
        table[tgt[f]][f] = f
        table[f][src[f]] = f
    pairs = [(g, f) for g in range(n, m) for f in range(n, m) if src[g] == tgt[f]]
    rank = {p: i for i, p in enumerate(pairs)}
    # associativity triples (h, g, f), checked once all four products involved are known
    checks: list[list[tuple[int, int, int]]] = [[] for _ in pairs]
    for hh in range(n, m):
        for g in range(n, m):
            if src[hh] != tgt[g]:
                continue
            for f in range(n, m):
                if src[g] != tgt[f]:
                    continue
                checks[max(rank[(hh, g)], rank[(g, f)])].append((hh, g, f))

    def ok(i):
        for hh, g, f in checks[i]:
            gf, hg = table[g][f], table[hh][g]
            a, b = table[hh][gf], table[hg][f]
            if a >= 0 and b >= 0 and a != b:
                return False
        return True

    def rec(i):
        if i == len(pairs):
            for hh in range(n, m):
                for g in range(n, m):
                    for f in range(n, m):
                        if src[hh] == tgt[g] and src[g] == tgt[f]:
                            if table[hh][table[g][f]] != table[table[hh][g]][f]:
                                return
            yield tuple(tuple(r) for r in table)
            return
        g, f = pairs[i]
        for c in homs[(src[f], tgt[g])]:
            table[g][f] = c
            if ok(i):
                yield from rec(i + 1)
        table[g][f] = -1

    for t in rec(0):
        yield src, tgt, t


def enumerate_categories(max_objects: int = 3, max_morphisms: int = 8,
                         max_endo: int | None = None) -> Iterator[FiniteCategory]:
    """Every category with at most the given numbers of objects and morphisms, once per isomorphism class.

    ``max_endo`` optionally caps the size of every endomorphism monoid.
    """
    for n in range(max_objects + 1):
        buckets: dict[tuple, list[FiniteCategory]] = {}
        for h in _hom_matrices(n, max_morphisms, max_endo):
            for src, tgt, table in _tables(n, h):
                C = _build(n, src, tgt, table)
                key = (h, _profile(C))
                seen = buckets.setdefault(key, [])
                if any(find_isomorphism(C, D) is not None for D in seen):
                    continue
                seen.append(C)
                yield C


def _profile(C: FiniteCategory) -> tuple:
    idem = sum(1 for f in range(C.n_morphisms) if C.table[f][f] == f)
    return (idem, tuple(sorted(sum(1 for g in range(C.n_morphisms) if C.table[g][f] == f) for f in range(C.n_morphisms))))


def _build(n, src, tgt, table) -> FiniteCategory:
    counter: dict[tuple[int, int], int] = {}
    names = []
    for k in range(len(src)):
        if k < n:
            names.append(f"id{k}")
            continue
        key = (src[k], tgt[k])
        counter[key] = counter.get(key, 0) + 1
        names.append(f"m{src[k]}{tgt[k]}_{counter[key]}")
    return FiniteCategory(tuple(f"o{x}" for x in range(n)), tuple(src), tuple(tgt), tuple(range(n)),
                          table, tuple(names))


# ---------------------------------------------------------------------------
# coherence sweep between the two membership routes

FAMILY = {"max_objects": 3, "max_morphisms": 8, "max_endo": 4}


@dataclass
class CoherenceReport:
    categories: int = 0
    comparisons: int = 0
    contradictions: list = field(default_factory=list)
    tally: Counter = field(default_factory=Counter)
    seconds: float = 0.0


def _test_presheaves(C: FiniteCategory):
    out = [terminal_presheaf(C)]
    if C.n_objects:
        reps = (yoneda(C, 0), yoneda(C, C.n_objects - 1))
        D = discrete(2)
        P, _ = presheaf_colimit(PresheafDiagram(D, reps, tuple(identity_nat(X) for X in reps)), base=C)
        out.append(P)
    return out


def coherence_classes() -> dict[str, tuple[ShapeClass, Bounds | None]]:
    """Shape classes compared in the sweep; the searched class runs under tight bounds."""
    tight = Bounds(max_stage=2, max_objects_per_stage=8, max_diagrams=40)
    return {
        "point": (ShapeClass((terminal_category(),), "point"), None),
        "binary": (ShapeClass((discrete(2),), "binary"), None),
        "coproducts": (ShapeClass((discrete(0), discrete(2)), "coproducts"), None),
        "idempotents": (ShapeClass((idem(),), "idempotents"), None),
        "span+pair": (ShapeClass((span(), discrete(2)), "span+pair"), tight),
    }


def coherence_sweep(categories=None, progress=None) -> CoherenceReport:
    """Compare ``closure_search`` with ``membership_via_elements`` over a family of categories.

    The default family is every category with at most 3 objects and 8
    morphisms whose endomorphism monoids have at most 4 elements. Each
    category is tested on its terminal presheaf and on a coproduct of two
    representables.
    """
    from .completion import closure_search, membership_via_elements

    if categories is None:
        categories = enumerate_categories(**FAMILY)
    classes = coherence_classes()
    rep = CoherenceReport()
    start = time.perf_counter()
    for C in categories:
        rep.categories += 1
        for X in _test_presheaves(C):
            for name, (F, bounds) in classes.items():
                a = closure_search(C, F, X, bounds).status
                b = membership_via_elements(C, F, X, bounds).status
                rep.comparisons += 1
                rep.tally[name, a.value, b.value] += 1
                if {a, b} == {Status.MEMBER, Status.NON_MEMBER}:
                    rep.contradictions.append((C, X, name, a.value, b.value))
        if progress is not None:
            progress(rep)
    rep.seconds = time.perf_counter() - start
    return rep
