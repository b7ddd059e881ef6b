"""Cofinality, siftedness, filteredness and colimit preservation for finite categories.

"Cofinal" here is the colimit-side notion: ``f: C -> D`` is cofinal when
every comma category ``d ↓ f`` is connected and nonempty (level
``Connected``) or weakly contractible (level ``WeaklyContractible``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .errors import MissingColimits
from .fincat import (FiniteCategory, FunctorData, comma, compose_functors, connected_components,
                     enumerate_functors, full_subcategory, identity_functor, is_equivalence,
                     object_functor, product)
from .homotopy import ContractibilityStatus, weak_contractibility
from .presheaf import NatTrans, PresheafDiagram, is_terminal, presheaf_colimit, yoneda, yoneda_map
from .recipe import Status, Verdict


class Level(str, Enum):
    CONNECTED = "Connected"
    WEAKLY_CONTRACTIBLE = "WeaklyContractible"


class CofinalStatus(str, Enum):
    COFINAL = "Cofinal"
    NOT_COFINAL = "NotCofinal"
    PROBABLY_COFINAL = "ProbablyCofinal"
    UNKNOWN = "Unknown"


@dataclass
class CofinalityVerdict:
    level: Level
    status: CofinalStatus
    witnesses: dict = field(default_factory=dict)
    failing: str | None = None

    @property
    def decisive(self) -> bool:
        return self.status in (CofinalStatus.COFINAL, CofinalStatus.NOT_COFINAL)


def _level(level) -> Level:
    if isinstance(level, Level):
        return level
    aliases = {"connected": Level.CONNECTED, "weak": Level.WEAKLY_CONTRACTIBLE,
               "weaklycontractible": Level.WEAKLY_CONTRACTIBLE}
    return aliases[str(level).lower().replace("_", "").replace("-", "")]


def under_category(f: FunctorData, d: int) -> FiniteCategory:
    """``d ↓ f``: objects ``(c, γ: d -> f(c))``."""
    return comma(object_functor(f.target, d), f)[0]


def is_cofinal(f: FunctorData, level=Level.CONNECTED) -> CofinalityVerdict:
    level = _level(level)
    D = f.target
    witnesses: dict = {}
    statuses = []
    for d in D.objects:
        K = under_category(f, d)
        name = D.obj_names[d]
        if level is Level.CONNECTED:
            n = len(connected_components(K)[0])
            witnesses[name] = {"objects": K.n_objects, "components": n}
            if n != 1:
                return CofinalityVerdict(level, CofinalStatus.NOT_COFINAL, witnesses, name)
            continue
        v = weak_contractibility(K)
        witnesses[name] = {"status": v.status.value, **v.evidence}
        if v.status is ContractibilityStatus.NOT_CONTRACTIBLE:
            return CofinalityVerdict(level, CofinalStatus.NOT_COFINAL, witnesses, name)
        statuses.append(v.status)
    if level is Level.CONNECTED or all(s is ContractibilityStatus.CONTRACTIBLE for s in statuses):
        return CofinalityVerdict(level, CofinalStatus.COFINAL, witnesses)
    if ContractibilityStatus.UNKNOWN in statuses:
        return CofinalityVerdict(level, CofinalStatus.UNKNOWN, witnesses)
    return CofinalityVerdict(level, CofinalStatus.PROBABLY_COFINAL, witnesses)


def cofinal_via_colimit(f: FunctorData) -> bool:
    """Is the colimit of ``ρ_D ∘ f`` the terminal presheaf?"""
    C, D = f.source, f.target
    reps = {d: yoneda(D, d) for d in set(f.object_map)}
    nodes = tuple(reps[f(c)] for c in C.objects)
    edges = tuple(yoneda_map(D, f.on_mor(m)) for m in range(C.n_morphisms))
    edges = tuple(NatTrans(nodes[C.src[m]], nodes[C.tgt[m]], e.components) for m, e in enumerate(edges))
    P, _ = presheaf_colimit(PresheafDiagram(C, nodes, edges), base=D, validate=False)
    return is_terminal(P)


def diagonal(J: FiniteCategory) -> FunctorData:
    P, _, _ = product(J, J)
    nj, mj = J.n_objects, J.n_morphisms
    return FunctorData(J, P, tuple(x * nj + x for x in J.objects),
                       tuple(m * mj + m for m in range(mj)))


def is_sifted(J: FiniteCategory, level=Level.CONNECTED) -> CofinalityVerdict:
    level = _level(level)
    if J.n_objects == 0:
        return CofinalityVerdict(level, CofinalStatus.NOT_COFINAL, {"reason": "empty"})
    return is_cofinal(diagonal(J), level)


@dataclass
class FilteredResult:
    filtered: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.filtered


def is_filtered(J: FiniteCategory) -> FilteredResult:
    if J.n_objects == 0:
        return FilteredResult(False, {"reason": "empty"})
    for a, b in itertools.combinations(J.objects, 2):
        if not any(J.hom(a, c) and J.hom(b, c) for c in J.objects):
            return FilteredResult(False, {"reason": "no cospan", "pair": [J.obj_names[a], J.obj_names[b]]})
    for a in J.objects:
        for b in J.objects:
            for u, v in itertools.combinations(J.hom(a, b), 2):
                if not any(J.table[h][u] == J.table[h][v]
                           for c in J.objects for h in J.hom(b, c)):
                    return FilteredResult(False, {"reason": "parallel pair not equalized",
                                                  "pair": [J.mor_names[u], J.mor_names[v]]})
    return FilteredResult(True)


# ---------------------------------------------------------------------------
# colimits inside a finite category


def cocones(D: FunctorData, apex: int):
    """Cocones under ``D: J -> A`` with the given apex, as tuples of legs."""
    J, A = D.source, D.target
    choices = [A.hom(D(j), apex) for j in J.objects]
    for legs in itertools.product(*choices):
        if all(A.table[legs[J.tgt[u]]][D.on_mor(u)] == legs[J.src[u]] for u in J.nonidentity):
            yield legs


def _factorizations(A: FiniteCategory, legs, apex: int, other, y: int) -> int:
    count = 0
    for h in A.hom(apex, y):
        if all(A.table[h][l] == m for l, m in zip(legs, other)):
            count += 1
            if count > 1:
                break
    return count


def is_colimit_cocone(D: FunctorData, apex: int, legs) -> bool:
    A = D.target
    for y in A.objects:
        for other in cocones(D, y):
            if _factorizations(A, legs, apex, other, y) != 1:
                return False
    return True


def colimit_in(D: FunctorData):
    """``(apex, legs)`` of a colimit of ``D`` in its target, or ``None``."""
    A = D.target
    for x in A.objects:
        for legs in cocones(D, x):
            if is_colimit_cocone(D, x, legs):
                return x, legs
    return None


def _diagram_record(D: FunctorData) -> dict:
    J, A = D.source, D.target
    return {"objects": {J.obj_names[j]: A.obj_names[D(j)] for j in J.objects},
            "morphisms": {J.mor_names[u]: A.mor_names[D.on_mor(u)] for u in J.nonidentity}}


def preserves_colimits_direct(f: FunctorData, J: FiniteCategory, limit: int | None = 10000) -> Verdict:
    A = f.source
    enum = enumerate_functors(J, A, limit)
    checked = 0
    for D in enum.functors:
        col = colimit_in(D)
        if col is None:
            continue
        checked += 1
        apex, legs = col
        fD = compose_functors(f, D)
        if not is_colimit_cocone(fD, f(apex), tuple(f.on_mor(l) for l in legs)):
            return Verdict(Status.NON_MEMBER, witness={"diagram": _diagram_record(D),
                                                       "colimit": A.obj_names[apex]},
                           bounds_used={"diagrams": len(enum.functors)})
    bounds = {"diagrams": len(enum.functors), "with_colimit": checked, "truncated": enum.truncated}
    if enum.truncated:
        return Verdict(Status.UNKNOWN, bounds_used=bounds)
    return Verdict(Status.MEMBER, bounds_used=bounds)


# ---------------------------------------------------------------------------
# path categories


@dataclass
class PathCategories:
    lpath: FiniteCategory
    path: FiniteCategory
    path_objects: tuple[int, ...]
    inclusion: FunctorData
    pi_a: FunctorData
    pi_b: FunctorData
    pi_a_path_equivalence: bool


def path_categories(f: FunctorData) -> PathCategories:
    """``LPath(f) = id_B ↓ f`` and its full subcategory on invertible comparison maps."""
    B = f.target
    L, pb, pa = comma(identity_functor(B), f)
    # objects of L are named after (b, a, γ); recover γ from hom data
    gammas = [gm for b in B.objects for a in f.source.objects for gm in B.hom(b, f(a))]
    objs = tuple(i for i, gm in enumerate(gammas) if B.is_iso(gm))
    P, inc = full_subcategory(L, objs)
    restricted = compose_functors(pa, inc)
    return PathCategories(L, P, objs, inc, pa, pb, is_equivalence(restricted))


def _check_has_colimits(C: FiniteCategory, J: FiniteCategory, side: str, limit):
    enum = enumerate_functors(J, C, limit)
    for D in enum.functors:
        if colimit_in(D) is None:
            raise MissingColimits(f"{side} has no colimit for a diagram of this shape", side, _diagram_record(D))
    return enum.truncated


def path_criterion_check(f: FunctorData, J: FiniteCategory, limit: int | None = 10000) -> tuple[Verdict, bool]:
    """Decide preservation through stability of ``Path(f)`` under ``J``-colimits in ``LPath(f)``.

    Returns the verdict and whether it agrees with :func:`preserves_colimits_direct`
    (vacuously true when either side is not exhaustive).
    """
    trunc = _check_has_colimits(f.source, J, "source", limit)
    trunc |= _check_has_colimits(f.target, J, "target", limit)
    pc = path_categories(f)
    in_path = set(pc.path_objects)
    enum = enumerate_functors(J, pc.path, limit)
    verdict = None
    for D in enum.functors:
        DL = compose_functors(pc.inclusion, D)
        col = colimit_in(DL)
        if col is None:
            continue
        if col[0] not in in_path:
            verdict = Verdict(Status.NON_MEMBER, witness={"diagram": _diagram_record(DL),
                                                          "colimit": pc.lpath.obj_names[col[0]]},
                              bounds_used={"diagrams": len(enum.functors)})
            break
    if verdict is None:
        bounds = {"diagrams": len(enum.functors), "truncated": enum.truncated or trunc}
        verdict = Verdict(Status.UNKNOWN if bounds["truncated"] else Status.MEMBER, bounds_used=bounds)
    direct = preserves_colimits_direct(f, J, limit)
    if Status.UNKNOWN in (direct.status, verdict.status):
        return verdict, True
    return verdict, direct.status == verdict.status
