"""Deciders for shape classes whose regular closures are known exactly.

Tags:

``Empty``
    no shapes (or only the point); the closure is categories with a terminal object.
``AllCoproducts``
    discrete shapes including the empty and two-point ones; finite coproducts of
    categories with terminal objects.
``BinaryCoproducts``
    discrete shapes with the two-point one but not the empty one; non-empty finite
    such coproducts.
``Idempotents``
    the walking idempotent (possibly with the point); categories whose
    idempotent completion has a terminal object.
"""
from __future__ import annotations

from .errors import UnknownClassTag
from .fincat import (FiniteCategory, connected_components, discrete, find_isomorphism,
                     find_terminal, idem, karoubi, terminal_category)
from .presheaf import Presheaf, are_isomorphic, compose_nat, nat_transformations, yoneda
from .recipe import RecipeBuilder, ShapeClass, Status, Verdict

TAGS = ("Empty", "AllCoproducts", "BinaryCoproducts", "Idempotents")


def _is_discrete(J: FiniteCategory) -> bool:
    return J.n_morphisms == J.n_objects


def match_class(F: ShapeClass) -> str | None:
    """Recognize ``F`` as one of the catalogued classes, up to isomorphism of shapes."""
    shapes = list(F.shapes)
    if all(_is_discrete(J) and J.n_objects == 1 for J in shapes):
        return "Empty"
    if all(_is_discrete(J) for J in shapes):
        sizes = {J.n_objects for J in shapes}
        if 2 in sizes:
            return "AllCoproducts" if 0 in sizes else "BinaryCoproducts"
        return None
    point, walking = terminal_category(), idem()
    if all(find_isomorphism(J, point) or find_isomorphism(J, walking) for J in shapes):
        return "Idempotents"
    return None


def catalog_decider(J: FiniteCategory, class_tag: str) -> Verdict:
    """Decide membership of ``J`` in the regular closure of a catalogued class."""
    if class_tag == "Empty":
        t = find_terminal(J)
        if t is None:
            return Verdict(Status.NON_MEMBER, witness={"reason": "no terminal object"})
        return Verdict(Status.MEMBER, witness={"terminal": J.obj_names[t]})
    if class_tag in ("AllCoproducts", "BinaryCoproducts"):
        parts, comps = connected_components(J)
        if class_tag == "BinaryCoproducts" and not parts:
            return Verdict(Status.NON_MEMBER, witness={"reason": "empty category"})
        terminals = []
        for part, D in zip(parts, comps):
            t = find_terminal(D)
            if t is None:
                return Verdict(Status.NON_MEMBER, witness={
                    "reason": "component without terminal object",
                    "component": [J.obj_names[x] for x in part]})
            terminals.append(J.obj_names[part[t]])
        return Verdict(Status.MEMBER, witness={"components": len(parts), "terminals": terminals})
    if class_tag == "Idempotents":
        K, _ = karoubi(J)
        t = find_terminal(K)
        if t is None:
            return Verdict(Status.NON_MEMBER, witness={"reason": "idempotent completion has no terminal object"})
        return Verdict(Status.MEMBER, witness={"karoubi_terminal": K.obj_names[t]})
    raise UnknownClassTag(class_tag)


# ---------------------------------------------------------------------------
# presheaf-level deciders with constructive certificates


def _shape_index(F: ShapeClass, model: FiniteCategory):
    for k, J in enumerate(F.shapes):
        iso = find_isomorphism(model, J)
        if iso is not None:
            return k, iso
    return None


def _coproduct_counts(C: FiniteCategory, X: Presheaf):
    """Yield vectors ``n`` with ``sum_c n_c |Hom(d, c)| = |X(d)|`` for all ``d``."""
    objs = list(C.objects)
    hom_sizes = [[len(C.hom(d, c)) for d in objs] for c in objs]

    def rec(i, acc, counts):
        if i == len(objs):
            if list(acc) == list(X.sizes):
                yield tuple(counts)
            return
        c = objs[i]
        n = 0
        while True:
            new = [a + n * h for a, h in zip(acc, hom_sizes[c])]
            if any(v > s for v, s in zip(new, X.sizes)):
                break
            yield from rec(i + 1, new, counts + [n])
            n += 1
            if n > X.sizes[c]:
                break

    yield from rec(0, [0] * len(objs), [])


def _coproduct_recipe(C: FiniteCategory, F: ShapeClass, summands: list[int]):
    """Nested binary coproducts of representables (the empty shape for no summands)."""
    b = RecipeBuilder(C, F)
    if not summands:
        k, _ = _shape_index(F, discrete(0))
        return b, b.colim(k, (), ())
    k2, iso = _shape_index(F, discrete(2))
    J = F.shapes[k2]
    acc = b.leaf(summands[0])
    for c in summands[1:]:
        leaf = b.leaf(c)
        nodes = [0, 0]
        nodes[iso(0)], nodes[iso(1)] = acc, leaf
        edges = [tuple(tuple(range(n)) for n in b.value(nodes[J.src[u]]).sizes) for u in range(J.n_morphisms)]
        acc = b.colim(k2, tuple(nodes), tuple(edges))
    return b, acc


def presheaf_decider(C: FiniteCategory, F: ShapeClass, tag: str, X: Presheaf):
    """``(Member, recipe)`` or ``(NonMember, witness)`` for ``X ∈ PSh^F(C)``."""
    if tag == "Empty":
        for c in C.objects:
            if are_isomorphic(yoneda(C, c), X) is not None:
                b = RecipeBuilder(C, F)
                return Status.MEMBER, b.recipe(b.leaf(c))
        return Status.NON_MEMBER, {"reason": "not representable"}
    if tag in ("AllCoproducts", "BinaryCoproducts"):
        for counts in _coproduct_counts(C, X):
            summands = [c for c in C.objects for _ in range(counts[c])]
            if tag == "BinaryCoproducts" and not summands:
                continue
            b, root = _coproduct_recipe(C, F, summands)
            if are_isomorphic(b.value(root), X) is not None:
                return Status.MEMBER, b.recipe(root)
        return Status.NON_MEMBER, {"reason": "not a coproduct of representables"
                                   + (" with at least one summand" if tag == "BinaryCoproducts" else "")}
    if tag == "Idempotents":
        found = _find_retract(C, X)
        if found is None:
            return Status.NON_MEMBER, {"reason": "not a retract of a representable"}
        c, e = found
        k, iso = _shape_index(F, idem())
        J = F.shapes[k]
        b = RecipeBuilder(C, F)
        leaf = b.leaf(c)
        rep = b.value(leaf)
        ident = tuple(tuple(range(n)) for n in rep.sizes)
        e_mor = iso.on_mor(1)
        edges = tuple(e.components if u == e_mor else ident for u in range(J.n_morphisms))
        root = b.colim(k, (leaf,), edges)
        return Status.MEMBER, b.recipe(root)
    raise UnknownClassTag(tag)


def _find_retract(C: FiniteCategory, X: Presheaf):
    """An object ``c`` and idempotent ``s∘r`` on ``ρ(c)`` with ``r∘s = id_X``."""
    ident = tuple(tuple(range(n)) for n in X.sizes)
    for c in C.objects:
        R = yoneda(C, c)
        sections = nat_transformations(X, R)
        if not sections:
            continue
        for r in nat_transformations(R, X):
            for s in sections:
                if compose_nat(r, s).components == ident:
                    return c, compose_nat(s, r)
    return None
