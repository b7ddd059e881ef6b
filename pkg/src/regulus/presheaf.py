"""Set-valued presheaves on finite categories.

The elements of ``X(c)`` are the integers ``0 .. sizes[c]-1``. For a
morphism ``m: a -> b`` the action ``actions[m]`` is a tuple of length
``sizes[b]`` listing images in ``X(a)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .errors import IllFormedDiagram, ValidationError
from .fincat import FiniteCategory, FunctorData, Violation


@dataclass(frozen=True)
class Presheaf:
    base: FiniteCategory
    sizes: tuple[int, ...]
    actions: tuple[tuple[int, ...], ...]
    names: tuple[tuple[str, ...], ...] | None = field(default=None, compare=False, repr=False)

    @property
    def sets(self) -> dict[int, range]:
        return {c: range(n) for c, n in enumerate(self.sizes)}

    def act(self, m: int, x: int) -> int:
        return self.actions[m][x]

    def element_name(self, c: int, x: int) -> str:
        if self.names is not None:
            return self.names[c][x]
        return f"x{x}"

    def total(self) -> int:
        return sum(self.sizes)

    def __repr__(self) -> str:
        return f"Presheaf(sizes={self.sizes})"


@dataclass(frozen=True)
class NatTrans:
    source: Presheaf
    target: Presheaf
    components: tuple[tuple[int, ...], ...]

    def __repr__(self) -> str:
        return f"NatTrans({self.components})"


@dataclass(frozen=True)
class SetDiagram:
    """Covariant diagram of finite sets; ``maps[u]`` sends ``sets[src u]`` into ``sets[tgt u]``."""

    shape: FiniteCategory
    sets: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PresheafDiagram:
    shape: FiniteCategory
    nodes: tuple[Presheaf, ...]
    edges: tuple[NatTrans, ...]


class SetColimit(NamedTuple):
    size: int
    cocone: list[tuple[int, ...]]


# ---------------------------------------------------------------------------
# validation


def validate_presheaf(X: Presheaf) -> list[Violation]:
    C = X.base
    out = []
    if len(X.sizes) != C.n_objects or len(X.actions) != C.n_morphisms:
        return [Violation("shape", (), "presheaf data does not match its base category")]
    for m in range(C.n_morphisms):
        a, b = C.src[m], C.tgt[m]
        act = X.actions[m]
        if len(act) != X.sizes[b] or any(not (0 <= y < X.sizes[a]) for y in act):
            out.append(Violation("action", (m,), f"action of {C.mor_names[m]} is not a function X({C.obj_names[b]}) -> X({C.obj_names[a]})"))
    if out:
        return out
    for c in C.objects:
        if X.actions[C.identity[c]] != tuple(range(X.sizes[c])):
            out.append(Violation("identity", (c,), f"identity of {C.obj_names[c]} acts non-trivially"))
    for g in range(C.n_morphisms):
        for f in range(C.n_morphisms):
            h = C.table[g][f]
            if h < 0:
                continue
            ag, af = X.actions[g], X.actions[f]
            if tuple(af[y] for y in ag) != X.actions[h]:
                out.append(Violation("contravariance", (g, f),
                                     f"action of {C.mor_names[g]}.{C.mor_names[f]} differs from the composite of actions"))
    return out


def check_presheaf(X: Presheaf) -> Presheaf:
    report = validate_presheaf(X)
    if report:
        raise ValidationError(report[0].message, report)
    return X


def validate_nat_trans(t: NatTrans) -> list[Violation]:
    X, Y = t.source, t.target
    C = X.base
    out = []
    if len(t.components) != C.n_objects:
        return [Violation("shape", (), "components must cover every object")]
    for c in C.objects:
        comp = t.components[c]
        if len(comp) != X.sizes[c] or any(not (0 <= y < Y.sizes[c]) for y in comp):
            out.append(Violation("component", (c,), f"component at {C.obj_names[c]} is not a function"))
    if out:
        return out
    for m in range(C.n_morphisms):
        a, b = C.src[m], C.tgt[m]
        ta, tb = t.components[a], t.components[b]
        xm, ym = X.actions[m], Y.actions[m]
        for x in range(X.sizes[b]):
            if ta[xm[x]] != ym[tb[x]]:
                out.append(Violation("naturality", (m,), f"naturality square for {C.mor_names[m]} does not commute"))
                break
    return out


def make_presheaf(C: FiniteCategory, sets: Mapping[int, Sequence[str]],
                  actions: Mapping[int, Mapping[str, str]], check: bool = True) -> Presheaf:
    """Build a presheaf from named elements.

    ``actions`` may cover only some morphisms; identities are filled in and the
    remaining actions are derived by composing known ones. A morphism that
    stays undetermined, or a derived action contradicting a given one, is an
    error.
    """
    names = tuple(tuple(sets.get(c, ())) for c in C.objects)
    index = [{n: k for k, n in enumerate(ns)} for ns in names]
    acts: dict[int, tuple[int, ...]] = {}
    for m, mapping in actions.items():
        a, b = C.src[m], C.tgt[m]
        try:
            acts[m] = tuple(index[a][mapping[y]] for y in names[b])
        except KeyError as e:
            raise ValidationError(f"action of {C.mor_names[m]} is not defined on element {e.args[0]}",
                                  [Violation("action", (m,), "partial action")]) from None
    for c in C.objects:
        idm = C.identity[c]
        ident = tuple(range(len(names[c])))
        if idm in acts and acts[idm] != ident:
            raise ValidationError(f"identity of {C.obj_names[c]} acts non-trivially",
                                  [Violation("identity", (c,), "")])
        acts[idm] = ident
    changed = True
    while changed:
        changed = False
        for g in list(acts):
            for f in list(acts):
                h = C.table[g][f]
                if h < 0:
                    continue
                ag, af = acts[g], acts[f]
                composite = tuple(af[y] for y in ag)
                if h in acts:
                    if acts[h] != composite:
                        raise ValidationError(
                            f"action of {C.mor_names[h]} is not the composite of {C.mor_names[g]} and {C.mor_names[f]}",
                            [Violation("contravariance", (g, f), C.mor_names[h])])
                else:
                    acts[h] = composite
                    changed = True
    missing = [m for m in range(C.n_morphisms) if m not in acts]
    if missing:
        raise ValidationError(f"action of {C.mor_names[missing[0]]} is undetermined",
                              [Violation("action", (m,), "undetermined") for m in missing])
    X = Presheaf(C, tuple(len(n) for n in names), tuple(acts[m] for m in range(C.n_morphisms)), names)
    if check:
        check_presheaf(X)
    return X


# ---------------------------------------------------------------------------
# basic presheaves


def yoneda(C: FiniteCategory, c: int) -> Presheaf:
    """The representable ``Hom(-, c)``; elements at ``d`` are listed in morphism-id order."""
    homs = [C.hom(d, c) for d in C.objects]
    pos = [{h: k for k, h in enumerate(hs)} for hs in homs]
    actions = []
    for m in range(C.n_morphisms):
        a, b = C.src[m], C.tgt[m]
        actions.append(tuple(pos[a][C.table[h][m]] for h in homs[b]))
    names = tuple(tuple(C.mor_names[h] for h in hs) for hs in homs)
    return Presheaf(C, tuple(len(h) for h in homs), tuple(actions), names)


def yoneda_map(C: FiniteCategory, f: int) -> NatTrans:
    """``ρ(f): ρ(a) -> ρ(b)`` given by postcomposition."""
    a, b = C.src[f], C.tgt[f]
    X, Y = yoneda(C, a), yoneda(C, b)
    comps = []
    for d in C.objects:
        tpos = {h: k for k, h in enumerate(C.hom(d, b))}
        comps.append(tuple(tpos[C.table[f][h]] for h in C.hom(d, a)))
    return NatTrans(X, Y, tuple(comps))


def terminal_presheaf(C: FiniteCategory) -> Presheaf:
    return Presheaf(C, (1,) * C.n_objects, ((0,),) * C.n_morphisms,
                    tuple(("*",) for _ in C.objects))


def empty_presheaf(C: FiniteCategory) -> Presheaf:
    return Presheaf(C, (0,) * C.n_objects, ((),) * C.n_morphisms, tuple(() for _ in C.objects))


def is_terminal(X: Presheaf) -> bool:
    return all(n == 1 for n in X.sizes)


def identity_nat(X: Presheaf) -> NatTrans:
    return NatTrans(X, X, tuple(tuple(range(n)) for n in X.sizes))


def compose_nat(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta∘alpha``."""
    return NatTrans(alpha.source, beta.target,
                    tuple(tuple(bc[x] for x in ac) for ac, bc in zip(alpha.components, beta.components)))


def invert_nat(t: NatTrans) -> NatTrans:
    comps = []
    for c, comp in enumerate(t.components):
        inv = [0] * len(comp)
        for x, y in enumerate(comp):
            inv[y] = x
        comps.append(tuple(inv))
    return NatTrans(t.target, t.source, tuple(comps))


def to_terminal(X: Presheaf) -> NatTrans:
    T = terminal_presheaf(X.base)
    return NatTrans(X, T, tuple((0,) * n for n in X.sizes))


# ---------------------------------------------------------------------------
# colimits


def validate_set_diagram(D: SetDiagram) -> list[Violation]:
    J = D.shape
    out = []
    for u in range(J.n_morphisms):
        mp = D.maps[u]
        if len(mp) != D.sets[J.src[u]] or any(not (0 <= y < D.sets[J.tgt[u]]) for y in mp):
            out.append(Violation("map", (u,), f"edge map {J.mor_names[u]} is not a function"))
    if out:
        return out
    for x in J.objects:
        if D.maps[J.identity[x]] != tuple(range(D.sets[x])):
            out.append(Violation("identity", (x,), "identity edge is not the identity map"))
    for g in range(J.n_morphisms):
        for f in range(J.n_morphisms):
            h = J.table[g][f]
            if h >= 0 and tuple(D.maps[g][y] for y in D.maps[f]) != D.maps[h]:
                out.append(Violation("functoriality", (g, f), "composite edge map mismatch"))
    return out


def set_colimit(D: SetDiagram) -> SetColimit:
    """Colimit of a diagram of finite sets.

    The disjoint union is quotiented by ``x ~ map_u(x)`` using union-find.
    Classes are numbered in order of their least member, where members are
    ordered by (node, element).
    """
    J = D.shape
    offsets = []
    total = 0
    for j in J.objects:
        offsets.append(total)
        total += D.sets[j]
    parent = list(range(total))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u in J.nonidentity:
        so, to = offsets[J.src[u]], offsets[J.tgt[u]]
        for x, y in enumerate(D.maps[u]):
            a, b = find(so + x), find(to + y)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    label: dict[int, int] = {}
    for i in range(total):
        r = find(i)
        if r not in label:
            label[r] = len(label)
    cocone = [tuple(label[find(offsets[j] + x)] for x in range(D.sets[j])) for j in J.objects]
    return SetColimit(len(label), cocone)


def objectwise_diagram(D: PresheafDiagram, c: int) -> SetDiagram:
    return SetDiagram(D.shape, tuple(X.sizes[c] for X in D.nodes),
                      tuple(t.components[c] for t in D.edges))


def validate_presheaf_diagram(D: PresheafDiagram) -> list[Violation]:
    J = D.shape
    out = []
    if len(D.nodes) != J.n_objects or len(D.edges) != J.n_morphisms:
        return [Violation("shape", (), "diagram does not cover its shape")]
    base = D.nodes[0].base if D.nodes else None
    for j, X in enumerate(D.nodes):
        if X.base is not base and X.base != base:
            out.append(Violation("base", (j,), "nodes live on different base categories"))
    if out:
        return out
    for u in range(J.n_morphisms):
        t = D.edges[u]
        s, g = D.nodes[J.src[u]], D.nodes[J.tgt[u]]
        if t.source.sizes != s.sizes or t.target.sizes != g.sizes:
            out.append(Violation("edge", (u,), f"edge {J.mor_names[u]} has the wrong endpoints"))
            continue
        if (t.source is not s and t.source != s) or (t.target is not g and t.target != g):
            out.append(Violation("edge", (u,), f"edge {J.mor_names[u]} has the wrong endpoints"))
            continue
        for v in validate_nat_trans(t):
            out.append(Violation("naturality", (u,) + v.where, f"edge {J.mor_names[u]}: {v.message}"))
    if out:
        return out
    if base is not None:
        for c in base.objects:
            for v in validate_set_diagram(objectwise_diagram(D, c)):
                out.append(Violation("functoriality", v.where, f"at {base.obj_names[c]}: {v.message}"))
    return out


def presheaf_colimit(D: PresheafDiagram, base: FiniteCategory | None = None,
                     validate: bool = True) -> tuple[Presheaf, list[NatTrans]]:
    """Pointwise colimit of a diagram of presheaves, with its colimit cocone."""
    if validate:
        report = validate_presheaf_diagram(D)
        if report:
            raise IllFormedDiagram(report[0].message)
    if not D.nodes:
        if base is None:
            raise IllFormedDiagram("the colimit of an empty diagram needs an explicit base category")
        return empty_presheaf(base), []
    C = D.nodes[0].base
    cols = [set_colimit(objectwise_diagram(D, c)) for c in C.objects]
    actions = []
    for m in range(C.n_morphisms):
        a, b = C.src[m], C.tgt[m]
        img = [-1] * cols[b].size
        for j, X in enumerate(D.nodes):
            cb, ca, am = cols[b].cocone[j], cols[a].cocone[j], X.actions[m]
            for x in range(X.sizes[b]):
                cls, val = cb[x], ca[am[x]]
                if img[cls] == -1:
                    img[cls] = val
                elif img[cls] != val:
                    raise IllFormedDiagram(f"induced action of {C.mor_names[m]} is not well defined")
        actions.append(tuple(img))
    P = Presheaf(C, tuple(col.size for col in cols), tuple(actions))
    if validate:
        check_presheaf(P)
    cocone = [NatTrans(X, P, tuple(cols[c].cocone[j] for c in C.objects)) for j, X in enumerate(D.nodes)]
    return P, cocone


def colimit_factorization(cocone_to: Sequence[NatTrans], colim: Presheaf,
                          cocone: Sequence[NatTrans]) -> NatTrans | None:
    """The unique map out of a colimit through which a competing cocone factors."""
    C = colim.base
    target = cocone_to[0].target if cocone_to else None
    comps = []
    for c in C.objects:
        img = [-1] * colim.sizes[c]
        for lam, mu in zip(cocone, cocone_to):
            for x, cls in enumerate(lam.components[c]):
                y = mu.components[c][x]
                if img[cls] == -1:
                    img[cls] = y
                elif img[cls] != y:
                    return None
        if any(v < 0 for v in img):
            return None
        comps.append(tuple(img))
    if target is None:
        return None
    return NatTrans(colim, target, tuple(comps))


# ---------------------------------------------------------------------------
# category of elements


def category_of_elements(C: FiniteCategory, X: Presheaf) -> tuple[FiniteCategory, FunctorData]:
    """``C/X`` with its projection; objects ``(c, x)`` ordered by ``c`` then ``x``."""
    from .fincat import _from_closure

    objs = [(c, x) for c in C.objects for x in range(X.sizes[c])]
    opos = {o: k for k, o in enumerate(objs)}
    morphisms, data = [], []
    for (c2, x2) in objs:
        for c in C.objects:
            for f in C.hom(c, c2):
                x = X.actions[f][x2]
                morphisms.append((f"{C.mor_names[f]}@{X.element_name(c2, x2)}", opos[(c, x)], opos[(c2, x2)]))
                data.append((f, x2))
    key = {d: k for k, d in enumerate(data)}
    identity = [key[(C.identity[c], x)] for c, x in objs]

    def comp(g, f):
        return key[(C.table[data[g][0]][data[f][0]], data[g][1])]

    names = [f"({C.obj_names[c]},{X.element_name(c, x)})" for c, x in objs]
    E = _from_closure(names, morphisms, identity, comp)
    proj = FunctorData(E, C, tuple(c for c, _ in objs), tuple(d[0] for d in data))
    return E, proj


def is_right_fibration(p: FunctorData) -> bool:
    """Every ``f: c -> p(e')`` has exactly one lift ending at ``e'``."""
    E, C = p.source, p.target
    for e2 in E.objects:
        c2 = p(e2)
        for f in range(C.n_morphisms):
            if C.tgt[f] != c2:
                continue
            lifts = [m for e in E.objects for m in E.hom(e, e2) if p.on_mor(m) == f]
            if len(lifts) != 1:
                return False
    return True


def elements_diagram(C: FiniteCategory, X: Presheaf) -> tuple[FiniteCategory, PresheafDiagram]:
    """The diagram ``ρ∘π_X`` over ``C/X``."""
    E, proj = category_of_elements(C, X)
    reps = [yoneda(C, c) for c in C.objects]
    nodes = tuple(reps[proj(e)] for e in E.objects)
    maps = {}
    edges = []
    for m in range(E.n_morphisms):
        f = proj.on_mor(m)
        if f not in maps:
            t = yoneda_map(C, f)
            maps[f] = NatTrans(reps[C.src[f]], reps[C.tgt[f]], t.components)
        edges.append(maps[f])
    return E, PresheafDiagram(E, nodes, tuple(edges))


def tautological_cocone_check(C: FiniteCategory, X: Presheaf) -> bool:
    """The colimit of ``ρ∘π_X`` over ``C/X`` is isomorphic to ``X``."""
    E, D = elements_diagram(C, X)
    P, _ = presheaf_colimit(D, base=C)
    return are_isomorphic(P, X) is not None


def slice_presheaf(alpha: NatTrans) -> tuple[FiniteCategory, Presheaf]:
    """For ``alpha: Y -> X``, the presheaf on ``C/X`` whose value at ``(c, x)`` is the fibre over ``x``."""
    X, Y = alpha.target, alpha.source
    C = X.base
    E, proj = category_of_elements(C, X)
    objs = [(c, x) for c in C.objects for x in range(X.sizes[c])]
    fibres = [[y for y in range(Y.sizes[c]) if alpha.components[c][y] == x] for c, x in objs]
    pos = [{y: k for k, y in enumerate(fb)} for fb in fibres]
    actions = []
    for m in range(E.n_morphisms):
        f = proj.on_mor(m)
        a, b = E.src[m], E.tgt[m]
        actions.append(tuple(pos[a][Y.actions[f][y]] for y in fibres[b]))
    return E, Presheaf(E, tuple(len(fb) for fb in fibres), tuple(actions))


def pullback_presheaf(X: Presheaf, F: FunctorData) -> Presheaf:
    """Restriction ``X∘F^op`` along ``F: A -> X.base``."""
    return Presheaf(F.source, tuple(X.sizes[F(a)] for a in F.source.objects),
                    tuple(X.actions[F.on_mor(m)] for m in range(F.source.n_morphisms)))


def external_product(X: Presheaf, Y: Presheaf, P: FiniteCategory) -> Presheaf:
    """``X ⊠ Y`` on ``P = product(X.base, Y.base)``; element ``(x, y)`` has index ``x*|Y(b)| + y``."""
    A, B = X.base, Y.base
    nb, mb = B.n_objects, B.n_morphisms
    sizes = tuple(X.sizes[p // nb] * Y.sizes[p % nb] for p in P.objects)
    actions = []
    for m in range(P.n_morphisms):
        f, g = m // mb, m % mb
        sy, ty = Y.sizes[B.src[g]], Y.sizes[B.tgt[g]]
        af, ag = X.actions[f], Y.actions[g]
        actions.append(tuple(af[k // ty] * sy + ag[k % ty] for k in range(X.sizes[A.tgt[f]] * ty)))
    return Presheaf(P, sizes, tuple(actions))


def external_product_nat(alpha: NatTrans, beta: NatTrans, P: FiniteCategory) -> NatTrans:
    nb = beta.source.base.n_objects
    comps = []
    for p in P.objects:
        a, b = p // nb, p % nb
        sy, ty = beta.source.sizes[b], beta.target.sizes[b]
        ac, bc = alpha.components[a], beta.components[b]
        comps.append(tuple(ac[k // sy] * ty + bc[k % sy] for k in range(alpha.source.sizes[a] * sy)))
    return NatTrans(external_product(alpha.source, beta.source, P),
                    external_product(alpha.target, beta.target, P), tuple(comps))


# ---------------------------------------------------------------------------
# natural transformations and isomorphism


def _branch_order(C: FiniteCategory) -> list[int]:
    # objects receiving many morphisms determine the most elements elsewhere
    return sorted(C.objects, key=lambda c: (-sum(len(C.hom(d, c)) for d in C.objects), c))


def _search_nat(X: Presheaf, Y: Presheaf, bijective: bool, colors=None, first_only: bool = False):
    C = X.base
    into = [[m for m in range(C.n_morphisms) if C.tgt[m] == c and not C.is_identity[m]] for c in C.objects]
    phi = [[-1] * n for n in X.sizes]
    used = [[False] * n for n in Y.sizes] if bijective else None
    order = [(c, x) for c in _branch_order(C) for x in range(X.sizes[c])]
    results = []

    def assign(c, x, y, trail):
        stack = [(c, x, y)]
        while stack:
            c, x, y = stack.pop()
            cur = phi[c][x]
            if cur != -1:
                if cur != y:
                    return False
                continue
            if bijective:
                if used[c][y]:
                    return False
                if colors is not None and colors[0][c][x] != colors[1][c][y]:
                    return False
                used[c][y] = True
            phi[c][x] = y
            trail.append((c, x))
            for m in into[c]:
                stack.append((C.src[m], X.actions[m][x], Y.actions[m][y]))
        return True

    def undo(trail):
        for c, x in trail:
            if bijective:
                used[c][phi[c][x]] = False
            phi[c][x] = -1

    def rec(k):
        while k < len(order) and phi[order[k][0]][order[k][1]] != -1:
            k += 1
        if k == len(order):
            results.append(NatTrans(X, Y, tuple(tuple(p) for p in phi)))
            return first_only
        c, x = order[k]
        for y in range(Y.sizes[c]):
            trail: list = []
            if assign(c, x, y, trail):
                if rec(k + 1):
                    undo(trail)
                    return True
            undo(trail)
        return False

    rec(0)
    return results


def nat_transformations(X: Presheaf, Y: Presheaf) -> list[NatTrans]:
    """All natural transformations ``X -> Y``, in a deterministic order."""
    return _search_nat(X, Y, bijective=False)


def _refine(X: Presheaf, rounds: int = 3):
    C = X.base
    into = [[m for m in range(C.n_morphisms) if C.tgt[m] == c and not C.is_identity[m]] for c in C.objects]
    out_of = [[m for m in range(C.n_morphisms) if C.src[m] == c and not C.is_identity[m]] for c in C.objects]
    col = [[hash((c,))] * X.sizes[c] for c in C.objects]
    for _ in range(rounds):
        new = []
        for c in C.objects:
            row = []
            for x in range(X.sizes[c]):
                down = tuple(col[C.src[m]][X.actions[m][x]] for m in into[c])
                up = tuple(sorted(hash((m, col[C.tgt[m]][y])) for m in out_of[c]
                                  for y in range(X.sizes[C.tgt[m]]) if X.actions[m][y] == x))
                row.append(hash((col[c][x], down, up)))
            new.append(row)
        col = new
    return col


def fingerprint(X: Presheaf) -> tuple:
    """Isomorphism-invariant summary: sizes plus per-object colour multisets."""
    col = _refine(X)
    return (X.sizes, tuple(tuple(sorted(r)) for r in col))


def are_isomorphic(X: Presheaf, Y: Presheaf) -> NatTrans | None:
    """An invertible natural transformation ``X -> Y``, or None."""
    if X.sizes != Y.sizes:
        return None
    cx, cy = _refine(X), _refine(Y)
    if any(sorted(a) != sorted(b) for a, b in zip(cx, cy)):
        return None
    found = _search_nat(X, Y, bijective=True, colors=(cx, cy), first_only=True)
    return found[0] if found else None


def push_forward(X: Presheaf, Z: Presheaf) -> Presheaf:
    """Left Kan extension along ``π_X: C/X -> C`` for ``Z`` on ``category_of_elements(C, X)``.

    The value at ``c`` is the set of pairs ``(x, z)`` with ``z ∈ Z(c, x)``,
    ordered by ``x`` then ``z``. It sends ``ρ(c, x)`` to ``ρ(c)`` and the
    terminal presheaf to ``X``.
    """
    C = X.base
    E = Z.base
    offset = {}
    k = 0
    for c in C.objects:
        for x in range(X.sizes[c]):
            offset[(c, x)] = k
            k += 1
    # position of element (x, z) inside the value at c
    pos = []
    sizes = []
    for c in C.objects:
        table = {}
        n = 0
        for x in range(X.sizes[c]):
            for z in range(Z.sizes[offset[(c, x)]]):
                table[(x, z)] = n
                n += 1
        pos.append(table)
        sizes.append(n)
    _, proj = category_of_elements(C, X)
    lifts = {}
    for m in range(E.n_morphisms):
        lifts[(proj.on_mor(m), E.tgt[m])] = m
    actions = []
    for f in range(C.n_morphisms):
        a, b = C.src[f], C.tgt[f]
        img = [0] * sizes[b]
        for (x2, z), k2 in pos[b].items():
            m = lifts[(f, offset[(b, x2)])]
            x = X.actions[f][x2]
            img[k2] = pos[a][(x, Z.actions[m][z])]
        actions.append(tuple(img))
    return Presheaf(C, tuple(sizes), tuple(actions))


def push_forward_nat(X: Presheaf, t: NatTrans) -> NatTrans:
    C = X.base
    P, Q = push_forward(X, t.source), push_forward(X, t.target)
    comps = []
    k = 0
    for c in C.objects:
        comp = []
        for x in range(X.sizes[c]):
            tc = t.components[k]
            base_q = sum(t.target.sizes[k - x + x2] for x2 in range(x))
            comp.extend(base_q + y for y in tc)
            k += 1
        comps.append(tuple(comp))
    return NatTrans(P, Q, tuple(comps))
