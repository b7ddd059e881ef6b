"""Free colimit completion: staged closure search and membership verdicts.

All verdicts concern set-valued presheaves. ``NonMember`` is only issued
with a proof behind it: a catalog theorem for the shape class, or a
closure that saturated with every diagram enumerated.
"""
from __future__ import annotations

import itertools
import logging
import os
from dataclasses import asdict, dataclass

from . import catalog
from .fincat import FiniteCategory, _constraint_plan, iter_functors
from .presheaf import (NatTrans, Presheaf, PresheafDiagram, SetDiagram, are_isomorphic,
                       category_of_elements, compose_nat, external_product,
                       external_product_nat, fingerprint, identity_nat, nat_transformations,
                       presheaf_colimit, push_forward, push_forward_nat, set_colimit,
                       terminal_presheaf, yoneda, yoneda_map)
from .recipe import (Colim, Leaf, Recipe, RecipeBuilder, ShapeClass, Status, Verdict,
                     eval_recipe, eval_steps, transport)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bounds:
    max_stage: int = 3
    max_objects_per_stage: int = 64
    max_diagrams: int = 10000

    @classmethod
    def default(cls) -> "Bounds":
        env = os.environ.get("REGULUS_MAX_DIAGRAMS")
        return cls(max_diagrams=int(env)) if env else cls()


class _Item:
    __slots__ = ("presheaf", "deriv", "stage", "fp")

    def __init__(self, presheaf, deriv, stage, fp):
        self.presheaf = presheaf
        self.deriv = deriv
        self.stage = stage
        self.fp = fp


class Closure:
    """Staged closure of a set of presheaves under colimits of shapes in ``F``.

    Items are deduplicated up to isomorphism. Stage ``s`` only enumerates
    diagrams touching an item first found at stage ``s-1``; earlier diagrams
    were seen before.
    """

    def __init__(self, C: FiniteCategory, F: ShapeClass, bounds: Bounds):
        self.C, self.F, self.bounds = C, F, bounds
        self.items: list[_Item] = []
        self.buckets: dict[tuple, list[int]] = {}
        self._nat: dict[tuple[int, int], list[NatTrans]] = {}
        self.diagrams_used = 0
        self.truncated = False
        self.stage = 0
        self.hit: int | None = None
        self.plans = [_constraint_plan(J) for J in F.shapes]

    def find(self, P: Presheaf, fp=None) -> int | None:
        fp = fingerprint(P) if fp is None else fp
        for i in self.buckets.get(fp, ()):
            if are_isomorphic(self.items[i].presheaf, P) is not None:
                return i
        return None

    def add(self, P: Presheaf, deriv, stage: int, dedup: bool = True) -> tuple[int, bool]:
        fp = fingerprint(P)
        if dedup:
            i = self.find(P, fp)
            if i is not None:
                return i, False
        self.items.append(_Item(P, deriv, stage, fp))
        self.buckets.setdefault(fp, []).append(len(self.items) - 1)
        return len(self.items) - 1, True

    def nat(self, i: int, j: int) -> list[NatTrans]:
        key = (i, j)
        if key not in self._nat:
            self._nat[key] = nat_transformations(self.items[i].presheaf, self.items[j].presheaf)
        return self._nat[key]

    def _take_budget(self) -> bool:
        if self.diagrams_used >= self.bounds.max_diagrams:
            self.truncated = True
            return False
        self.diagrams_used += 1
        return True

    def diagrams(self, k: int, stage: int):
        """Yield ``(nodes, edges)`` for shape ``k`` with at least one node new at ``stage-1``."""
        J = self.F.shapes[k]
        order, checks = self.plans[k]
        pool = [i for i in range(len(self.items)) if self.items[i].stage < stage]
        fresh = {i for i in pool if self.items[i].stage == stage - 1}
        if J.n_objects == 0:
            if stage == 1 and self._take_budget():
                yield (), ()
            return
        nodes = [-1] * J.n_objects
        arrows_at = [[u for u in order if max(J.src[u], J.tgt[u]) == j] for j in J.objects]
        edge: list = [None] * J.n_morphisms
        done = [False]

        def assign_edges(t):
            if t == len(order):
                if not self._take_budget():
                    done[0] = True
                    return
                yield tuple(nodes), tuple(e.components for e in edge)
                return
            u = order[t]
            for cand in self.nat(nodes[J.src[u]], nodes[J.tgt[u]]):
                edge[u] = cand
                if all(compose_nat(edge[g], edge[f]).components == edge[h].components
                       for g, f, h in checks[t]):
                    yield from assign_edges(t + 1)
                    if done[0]:
                        return
            edge[u] = None

        def assign_nodes(j):
            if j == J.n_objects:
                if any(x in fresh for x in nodes):
                    for x in J.objects:
                        edge[J.identity[x]] = identity_nat(self.items[nodes[x]].presheaf)
                    yield from assign_edges(0)
                return
            for cand in pool:
                nodes[j] = cand
                if all(self.nat(nodes[J.src[u]], nodes[J.tgt[u]]) for u in arrows_at[j]):
                    yield from assign_nodes(j + 1)
                    if done[0]:
                        return
            nodes[j] = -1

        yield from assign_nodes(0)

    def seed_diagrams(self, k: int):
        """Diagrams ``ρ∘φ`` for functors ``φ: J -> C``; these realize cofinal maps immediately."""
        J = self.F.shapes[k]
        for phi in iter_functors(J, self.C):
            if not self._take_budget():
                return
            nodes = tuple(phi(j) for j in J.objects)
            edges = tuple(yoneda_map(self.C, phi.on_mor(u)).components for u in range(J.n_morphisms))
            yield nodes, edges

    def colimit_of(self, k: int, nodes, edges) -> Presheaf:
        J = self.F.shapes[k]
        vals = tuple(self.items[i].presheaf for i in nodes)
        nts = tuple(NatTrans(vals[J.src[u]], vals[J.tgt[u]], edges[u]) for u in range(J.n_morphisms))
        P, _ = presheaf_colimit(PresheafDiagram(J, vals, nts), base=self.C, validate=False)
        return P

    def recipe_for(self, i: int) -> Recipe:
        needed = set()
        stack = [i]
        while stack:
            k = stack.pop()
            if k in needed:
                continue
            needed.add(k)
            d = self.items[k].deriv
            if d[0] == "colim":
                stack.extend(d[2])
        order = sorted(needed)
        pos = {k: t for t, k in enumerate(order)}
        steps = []
        for k in order:
            d = self.items[k].deriv
            if d[0] == "leaf":
                steps.append(Leaf(d[1]))
            else:
                steps.append(Colim(d[1], tuple(pos[n] for n in d[2]), d[3]))
        return Recipe(tuple(steps), pos[i])

    def used(self) -> dict:
        return {**asdict(self.bounds), "stages_run": self.stage, "diagrams_used": self.diagrams_used,
                "objects": len(self.items), "truncated": self.truncated}

    def representables(self):
        for c in self.C.objects:
            self.add(yoneda(self.C, c), ("leaf", c), 0, dedup=False)

    def expand(self, stage: int, seeds: bool = False, stop=None) -> list[int]:
        """Run one stage; returns new item ids.

        Shapes are interleaved round-robin. ``stop(P, fp)`` is consulted for every
        colimit not seen before, even past the per-stage object cap; a true
        result records the item and ends the stage.
        """
        self.stage = stage
        new: list[int] = []
        overflow = False
        sources = []
        for k in range(len(self.F.shapes)):
            if seeds:
                sources.append((k, self.seed_diagrams(k)))
        for k in range(len(self.F.shapes)):
            sources.append((k, self.diagrams(k, stage)))
        live = [(k, iter(g)) for k, g in sources]
        while live:
            still = []
            for k, it in live:
                try:
                    nodes, edges = next(it)
                except StopIteration:
                    continue
                still.append((k, it))
                P = self.colimit_of(k, nodes, edges)
                fp = fingerprint(P)
                if self.find(P, fp) is not None:
                    continue
                if stop is not None and stop(P, fp):
                    i, _ = self.add(P, ("colim", k, nodes, edges), stage, dedup=False)
                    new.append(i)
                    self.hit = i
                    return new
                if len(new) >= self.bounds.max_objects_per_stage:
                    overflow = True
                    continue
                i, _ = self.add(P, ("colim", k, nodes, edges), stage, dedup=False)
                new.append(i)
            live = still
        if overflow:
            self.truncated = True
        return new


def _verify(C: FiniteCategory, F: ShapeClass, r: Recipe, target: Presheaf) -> bool:
    return are_isomorphic(eval_recipe(C, F, r), target) is not None


def _member(C, F, r: Recipe, target, bounds_used, **witness) -> Verdict:
    if not _verify(C, F, r, target):
        raise AssertionError("emitted certificate does not evaluate to the target")
    return Verdict(Status.MEMBER, certificate=r, witness=witness or None, bounds_used=bounds_used)


def closure_search(C: FiniteCategory, F: ShapeClass, target: Presheaf,
                   bounds: Bounds | None = None) -> Verdict:
    """Semi-decide ``target ∈ PSh^F(C)``, returning a recipe certificate on success."""
    bounds = bounds or Bounds.default()
    base_used = {**asdict(bounds), "stages_run": 0, "diagrams_used": 0, "objects": C.n_objects,
                 "truncated": False}
    for c in C.objects:
        if are_isomorphic(yoneda(C, c), target) is not None:
            return _member(C, F, Recipe((Leaf(c),), 0), target, base_used, strategy="representable", stage=0)

    tag = catalog.match_class(F)
    if tag is not None:
        status, payload = catalog.presheaf_decider(C, F, tag, target)
        if status is Status.NON_MEMBER:
            return Verdict(Status.NON_MEMBER, witness={"class_tag": tag, **payload}, bounds_used=base_used)
        return _member(C, F, payload, target, base_used, strategy="catalog", class_tag=tag)

    if C.factors is not None and all(n == 1 for n in target.sizes):
        r = _product_certificate(C, F, bounds)
        if r is not None:
            return _member(C, F, r, target, base_used, strategy="product")

    cl = Closure(C, F, bounds)
    cl.representables()
    tfp = fingerprint(target)

    def stop(P, fp):
        return fp == tfp and are_isomorphic(P, target) is not None

    for stage in range(1, bounds.max_stage + 1):
        new = cl.expand(stage, seeds=(stage == 1), stop=stop)
        if cl.hit is not None:
            r = cl.recipe_for(cl.hit)
            return _member(C, F, r, target, cl.used(), strategy="search", stage=stage)
        if not new and not cl.truncated:
            return Verdict(Status.NON_MEMBER, bounds_used=cl.used(),
                           witness={"saturated": True, "stage": stage, "objects": len(cl.items)})
    return Verdict(Status.UNKNOWN, bounds_used=cl.used())


def regular_closure_member(J: FiniteCategory, F: ShapeClass, bounds: Bounds | None = None) -> Verdict:
    """Decide or semi-decide whether ``J`` lies in the regular closure of ``F``."""
    tag = catalog.match_class(F)
    if tag is not None:
        v = catalog.catalog_decider(J, tag)
        if v.status is Status.NON_MEMBER:
            return v
    return closure_search(J, F, terminal_presheaf(J), bounds)


def _product_certificate(P: FiniteCategory, F: ShapeClass, bounds: Bounds) -> Recipe | None:
    A, B = P.factors
    va = regular_closure_member(A, F, bounds)
    if va.status is not Status.MEMBER:
        return None
    vb = regular_closure_member(B, F, bounds)
    if vb.status is not Status.MEMBER:
        return None
    return product_certificate(P, F, va.certificate, vb.certificate)


def product_certificate(P: FiniteCategory, F: ShapeClass, ra: Recipe, rb: Recipe) -> Recipe:
    """Certificate for the terminal presheaf on ``A × B`` from certificates on ``A`` and ``B``.

    ``J × K``-colimits are iterated ``J``- then ``K``-colimits. The recipe for
    ``1_A`` is pushed along ``X ↦ X ⊠ ρ(b)`` for each ``b``, and the recipe for
    ``1_B`` along ``Y ↦ 1_A ⊠ Y`` with those results as leaves.
    """
    A, B = P.factors
    nb = B.n_objects
    va, vb = eval_steps(A, F, ra), eval_steps(B, F, rb)
    builder = RecipeBuilder(P, F)
    one_a = terminal_presheaf(A)
    cache: dict[int, int] = {}

    def inner(b: int) -> int:
        if b not in cache:
            yb = yoneda(B, b)
            root, _ = transport(
                builder, F, ra, va,
                leaf_step=lambda a: builder.leaf(a * nb + b),
                phi_obj=lambda X: external_product(X, yb, P),
                phi_nat=lambda t: external_product_nat(t, identity_nat(yb), P),
            )
            cache[b] = root
        return cache[b]

    ida = identity_nat(one_a)
    root, _ = transport(
        builder, F, rb, vb,
        leaf_step=inner,
        phi_obj=lambda Y: external_product(one_a, Y, P),
        phi_nat=lambda t: external_product_nat(ida, t, P),
    )
    return builder.recipe(root)


def membership_via_elements(C: FiniteCategory, F: ShapeClass, X: Presheaf,
                            bounds: Bounds | None = None) -> Verdict:
    """Membership of ``X`` through the regular closure of its category of elements.

    A certificate found on ``C/X`` is pushed forward along ``π_X`` to a
    certificate over ``C``.
    """
    E, _ = category_of_elements(C, X)
    v = regular_closure_member(E, F, bounds)
    if v.status is not Status.MEMBER:
        return Verdict(v.status, witness={"via": "elements", **(v.witness or {})}, bounds_used=v.bounds_used)
    values = eval_steps(E, F, v.certificate)
    builder = RecipeBuilder(C, F)
    offsets = [(c, x) for c in C.objects for x in range(X.sizes[c])]
    root, _ = transport(
        builder, F, v.certificate, values,
        leaf_step=lambda e: builder.leaf(offsets[e][0]),
        phi_obj=lambda Z: push_forward(X, Z),
        phi_nat=lambda t: push_forward_nat(X, t),
    )
    r = builder.recipe(root)
    return _member(C, F, r, X, v.bounds_used, via="elements", elements_certificate_steps=len(v.certificate))


# ---------------------------------------------------------------------------
# compactness and the recognition conditions


def _universe(C: FiniteCategory, F: ShapeClass, bounds: Bounds) -> Closure:
    cl = Closure(C, F, bounds)
    cl.representables()
    for stage in range(1, bounds.max_stage + 1):
        if not cl.expand(stage):
            break
    return cl


def _preserves(X: Presheaf, J: FiniteCategory, nodes: list[Presheaf], edges) -> bool:
    nts = tuple(NatTrans(nodes[J.src[u]], nodes[J.tgt[u]], edges[u]) for u in range(J.n_morphisms))
    P, cocone = presheaf_colimit(PresheafDiagram(J, tuple(nodes), nts), base=X.base, validate=False)
    homs = [nat_transformations(X, N) for N in nodes]
    pos = [{t.components: k for k, t in enumerate(h)} for h in homs]
    maps = tuple(tuple(pos[J.tgt[u]][compose_nat(nts[u], t).components] for t in homs[J.src[u]])
                 for u in range(J.n_morphisms))
    col = set_colimit(SetDiagram(J, tuple(len(h) for h in homs), maps))
    target = {t.components: k for k, t in enumerate(nat_transformations(X, P))}
    image = [-1] * col.size
    for j, h in enumerate(homs):
        for k, t in enumerate(h):
            image[col.cocone[j][k]] = target[compose_nat(cocone[j], t).components]
    return len(set(image)) == col.size == len(target)


def is_compact(C: FiniteCategory, F: ShapeClass, X: Presheaf, bounds: Bounds | None = None) -> Verdict:
    """Does ``Nat(X, -)`` preserve ``F``-colimits of diagrams in the bounded universe?"""
    bounds = bounds or Bounds.default()
    cl = _universe(C, F, bounds)
    budget = bounds.max_diagrams
    checked = 0
    complete = not cl.truncated
    for k, J in enumerate(F.shapes):
        for nodes in itertools.product(range(len(cl.items)), repeat=J.n_objects):
            for edges in _edge_choices(cl, J, k, nodes):
                if checked >= budget:
                    return Verdict(Status.UNKNOWN, bounds_used={**cl.used(), "compactness_diagrams": checked})
                checked += 1
                vals = [cl.items[i].presheaf for i in nodes]
                if not _preserves(X, J, vals, edges):
                    return Verdict(Status.NON_MEMBER, bounds_used={**cl.used(), "compactness_diagrams": checked},
                                   witness={"shape": k, "nodes": [list(v.sizes) for v in vals],
                                            "edges": [list(map(list, e)) for e in edges]})
    status = Status.MEMBER if complete else Status.UNKNOWN
    return Verdict(status, bounds_used={**cl.used(), "compactness_diagrams": checked})


def _edge_choices(cl: Closure, J: FiniteCategory, k: int, nodes):
    order, checks = cl.plans[k]
    edge: list = [None] * J.n_morphisms
    for x in J.objects:
        edge[J.identity[x]] = identity_nat(cl.items[nodes[x]].presheaf)

    def rec(t):
        if t == len(order):
            yield tuple(e.components for e in edge)
            return
        u = order[t]
        for cand in cl.nat(nodes[J.src[u]], nodes[J.tgt[u]]):
            edge[u] = cand
            if all(compose_nat(edge[g], edge[f]).components == edge[h].components for g, f, h in checks[t]):
                yield from rec(t + 1)
        edge[u] = None

    yield from rec(0)


def nat_category(presheaves: list[Presheaf]) -> FiniteCategory:
    """The full subcategory of presheaves spanned by ``presheaves``."""
    from .fincat import _from_closure

    morphisms, data = [], []
    for i, X in enumerate(presheaves):
        for j, Y in enumerate(presheaves):
            for t in nat_transformations(X, Y):
                morphisms.append((f"t{len(data)}", i, j))
                data.append(t.components)
    key = {(morphisms[k][1], morphisms[k][2], data[k]): k for k in range(len(data))}
    identity = [key[(i, i, tuple(tuple(range(n)) for n in X.sizes))] for i, X in enumerate(presheaves)]

    def comp(g, f):
        c = tuple(tuple(gc[x] for x in fc) for fc, gc in zip(data[f], data[g]))
        return key[(morphisms[f][1], morphisms[g][2], c)]

    return _from_closure([f"G{i}" for i in range(len(presheaves))], morphisms, identity, comp)


def recognition_check(C: FiniteCategory, F: ShapeClass, candidates: list[Presheaf],
                      bounds: Bounds | None = None) -> dict[str, Verdict]:
    """Verdicts for (i) full faithfulness, (ii) compactness, (iii) generation."""
    from .fincat import find_isomorphism

    bounds = bounds or Bounds.default()
    iso = find_isomorphism(C, nat_category(candidates))
    cond1 = Verdict(Status.MEMBER if iso is not None else Status.NON_MEMBER,
                    witness=None if iso is not None else {"reason": "candidate category is not isomorphic to C"})

    compact = [is_compact(C, F, G, bounds) for G in candidates]
    if any(v.status is Status.NON_MEMBER for v in compact):
        bad = next(i for i, v in enumerate(compact) if v.status is Status.NON_MEMBER)
        cond2 = Verdict(Status.NON_MEMBER, witness={"candidate": bad, **(compact[bad].witness or {})})
    elif all(v.status is Status.MEMBER for v in compact):
        cond2 = Verdict(Status.MEMBER)
    else:
        cond2 = Verdict(Status.UNKNOWN)

    cl = Closure(C, F, bounds)
    for G in candidates:
        cl.add(G, ("given",), 0)
    missing = [c for c in C.objects if cl.find(yoneda(C, c)) is None]
    saturated = False
    for stage in range(1, bounds.max_stage + 1):
        if not missing:
            break
        new = cl.expand(stage)
        missing = [c for c in missing if cl.find(yoneda(C, c)) is None]
        if not new and not cl.truncated:
            saturated = True
            break
    if not missing:
        cond3 = Verdict(Status.MEMBER, bounds_used=cl.used())
    elif saturated:
        cond3 = Verdict(Status.NON_MEMBER, bounds_used=cl.used(),
                        witness={"unreached": [C.obj_names[c] for c in missing], "saturated": True})
    else:
        cond3 = Verdict(Status.UNKNOWN, bounds_used=cl.used())
    return {"i": cond1, "ii": cond2, "iii": cond3}

