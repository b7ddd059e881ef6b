"""Recipes: explicit DAGs of colimit steps over representable leaves."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import IllFormedDiagram, ShapeNotInClass
from .fincat import FiniteCategory
from .presheaf import (NatTrans, Presheaf, PresheafDiagram, compose_nat, invert_nat,
                       presheaf_colimit, yoneda)


@dataclass(frozen=True)
class ShapeClass:
    shapes: tuple[FiniteCategory, ...]
    name: str = "F"

    def __len__(self) -> int:
        return len(self.shapes)


@dataclass(frozen=True)
class Leaf:
    obj: int


@dataclass(frozen=True)
class Colim:
    """Colimit over ``shapes[shape]``.

    ``nodes[j]`` is the step feeding shape object ``j``; ``edges[u]`` gives the
    components of the natural transformation assigned to shape morphism ``u``
    (identities included).
    """

    shape: int
    nodes: tuple[int, ...]
    edges: tuple[tuple[tuple[int, ...], ...], ...]


Step = Union[Leaf, Colim]


@dataclass(frozen=True)
class Recipe:
    steps: tuple[Step, ...]
    root: int

    def depth(self) -> int:
        d: list[int] = []
        for s in self.steps:
            if isinstance(s, Leaf):
                d.append(0)
            else:
                d.append(1 + max((d[n] for n in s.nodes), default=0))
        return d[self.root]

    def __len__(self) -> int:
        return len(self.steps)


class Status(str, Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    status: Status
    certificate: Recipe | None = None
    witness: dict | None = None
    bounds_used: dict | None = None
    level: str = "Set-presheaf"

    @property
    def decisive(self) -> bool:
        return self.status is not Status.UNKNOWN


def eval_steps(C: FiniteCategory, F: ShapeClass, r: Recipe) -> list[Presheaf]:
    """Evaluate every step in order; step ``k`` may only reference earlier steps."""
    values: list[Presheaf] = []
    reps: dict[int, Presheaf] = {}
    for k, step in enumerate(r.steps):
        if isinstance(step, Leaf):
            if not 0 <= step.obj < C.n_objects:
                raise IllFormedDiagram(f"step {k}: leaf object {step.obj} is not in the category")
            if step.obj not in reps:
                reps[step.obj] = yoneda(C, step.obj)
            values.append(reps[step.obj])
            continue
        if not 0 <= step.shape < len(F.shapes):
            raise ShapeNotInClass(f"step {k}: shape index {step.shape} is not in class {F.name}")
        J = F.shapes[step.shape]
        if len(step.nodes) != J.n_objects or len(step.edges) != J.n_morphisms:
            raise IllFormedDiagram(f"step {k}: assignment does not cover the shape")
        if any(not 0 <= n < k for n in step.nodes):
            raise IllFormedDiagram(f"step {k}: node references must point to earlier steps")
        nodes = tuple(values[n] for n in step.nodes)
        edges = tuple(NatTrans(nodes[J.src[u]], nodes[J.tgt[u]], tuple(tuple(c) for c in step.edges[u]))
                      for u in range(J.n_morphisms))
        try:
            P, _ = presheaf_colimit(PresheafDiagram(J, nodes, edges), base=C)
        except IllFormedDiagram as e:
            raise IllFormedDiagram(f"step {k}: {e}") from None
        values.append(P)
    return values


def eval_recipe(C: FiniteCategory, F: ShapeClass, r: Recipe) -> Presheaf:
    if not 0 <= r.root < len(r.steps):
        raise IllFormedDiagram("recipe root is out of range")
    return eval_steps(C, F, r)[r.root]


class RecipeBuilder:
    """Accumulates steps over a fixed base, evaluating as it goes."""

    def __init__(self, C: FiniteCategory, F: ShapeClass):
        self.C, self.F = C, F
        self.steps: list[Step] = []
        self.values: list[Presheaf] = []
        self._leaves: dict[int, int] = {}

    def leaf(self, c: int) -> int:
        if c not in self._leaves:
            self._leaves[c] = len(self.steps)
            self.steps.append(Leaf(c))
            self.values.append(yoneda(self.C, c))
        return self._leaves[c]

    def colim(self, shape: int, nodes, edges) -> int:
        J = self.F.shapes[shape]
        vals = tuple(self.values[n] for n in nodes)
        nts = tuple(NatTrans(vals[J.src[u]], vals[J.tgt[u]], edges[u]) for u in range(J.n_morphisms))
        P, _ = presheaf_colimit(PresheafDiagram(J, vals, nts), base=self.C)
        self.steps.append(Colim(shape, tuple(nodes), tuple(tuple(e) for e in edges)))
        self.values.append(P)
        return len(self.steps) - 1

    def value(self, k: int) -> Presheaf:
        return self.values[k]

    def recipe(self, root: int) -> Recipe:
        return prune(Recipe(tuple(self.steps), root))


def prune(r: Recipe) -> Recipe:
    """Drop steps the root does not depend on, renumbering the rest."""
    needed = set()
    stack = [r.root]
    while stack:
        k = stack.pop()
        if k in needed:
            continue
        needed.add(k)
        s = r.steps[k]
        if isinstance(s, Colim):
            stack.extend(s.nodes)
    order = sorted(needed)
    pos = {k: i for i, k in enumerate(order)}
    steps = []
    for k in order:
        s = r.steps[k]
        if isinstance(s, Colim):
            s = Colim(s.shape, tuple(pos[n] for n in s.nodes), s.edges)
        steps.append(s)
    return Recipe(tuple(steps), pos[r.root])


def transport(builder: RecipeBuilder, F: ShapeClass, r: Recipe, old_values: list[Presheaf],
              leaf_step, phi_obj, phi_nat) -> tuple[int, NatTrans]:
    """Rebuild ``r`` in ``builder`` along a colimit-preserving functor ``phi``.

    ``leaf_step(c)`` must return a builder step whose value is isomorphic to
    ``phi_obj(ρ(c))``. Returns the new root step and an isomorphism from its
    value to ``phi_obj`` of the old root value.
    """
    from .presheaf import are_isomorphic

    new_ids: list[int] = []
    isos: list[NatTrans] = []
    for k, step in enumerate(r.steps):
        if isinstance(step, Leaf):
            s = leaf_step(step.obj)
        else:
            J = F.shapes[step.shape]
            nodes = [new_ids[n] for n in step.nodes]
            edges = []
            for u in range(J.n_morphisms):
                n1, n2 = step.nodes[J.src[u]], step.nodes[J.tgt[u]]
                alpha = NatTrans(old_values[n1], old_values[n2], step.edges[u])
                moved = compose_nat(invert_nat(isos[n2]), compose_nat(phi_nat(alpha), isos[n1]))
                edges.append(moved.components)
            s = builder.colim(step.shape, nodes, edges)
        iso = are_isomorphic(builder.value(s), phi_obj(old_values[k]))
        if iso is None:
            raise IllFormedDiagram(f"transport failed at step {k}: functor does not preserve this colimit")
        new_ids.append(s)
        isos.append(iso)
    return new_ids[r.root], isos[r.root]
