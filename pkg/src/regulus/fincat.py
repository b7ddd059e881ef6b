"""Finite categories given by explicit composition tables, and constructions on them.

Objects and morphisms are small integers. ``table[g][f]`` holds the id of
``g∘f`` (apply ``f`` first) for composable pairs and ``-1`` otherwise.
Names live in side tables and are only used for reporting.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

from .errors import NotClosedWithinBound, ValidationError


@dataclass(frozen=True)
class FiniteCategory:
    obj_names: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    mor_names: tuple[str, ...]
    # Set by product(); lets the closure search use the product construction.
    factors: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def n_objects(self) -> int:
        return len(self.obj_names)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(len(self.obj_names))

    @property
    def morphisms(self) -> list[tuple[int, int, int]]:
        return [(m, self.src[m], self.tgt[m]) for m in range(len(self.src))]

    def compose(self, g: int, f: int) -> int:
        """Return ``g∘f``; raises ``KeyError`` for a non-composable pair."""
        h = self.table[g][f]
        if h < 0:
            raise KeyError((g, f))
        return h

    def composable(self, g: int, f: int) -> bool:
        return self.src[g] == self.tgt[f]

    @cached_property
    def homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {
            (x, y): [] for x in self.objects for y in self.objects
        }
        for m in range(self.n_morphisms):
            out[self.src[m], self.tgt[m]].append(m)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self.homs[x, y]

    @cached_property
    def is_identity(self) -> tuple[bool, ...]:
        ids = set(self.identity)
        return tuple(m in ids for m in range(self.n_morphisms))

    @cached_property
    def nonidentity(self) -> tuple[int, ...]:
        return tuple(m for m in range(self.n_morphisms) if not self.is_identity[m])

    def obj_id(self, name: str) -> int:
        return self.obj_names.index(name)

    def mor_id(self, name: str) -> int:
        return self.mor_names.index(name)

    def is_iso(self, f: int) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f: int) -> int | None:
        a, b = self.src[f], self.tgt[f]
        for g in self.hom(b, a):
            if self.table[g][f] == self.identity[a] and self.table[f][g] == self.identity[b]:
                return g
        return None

    def __repr__(self) -> str:
        return f"FiniteCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


@dataclass(frozen=True)
class FunctorData:
    source: FiniteCategory
    target: FiniteCategory
    object_map: tuple[int, ...]
    morphism_map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.object_map[x]

    def on_mor(self, m: int) -> int:
        return self.morphism_map[m]

    def __repr__(self) -> str:
        return f"FunctorData(objects={self.object_map}, morphisms={self.morphism_map})"


@dataclass(frozen=True)
class GraphPresentation:
    """Vertices, edges ``(name, src, tgt)`` and relations between edge paths.

    A path is a tuple of edge indices in order of application, so the path
    ``(f, g)`` denotes ``g∘f``. The empty path stands for an identity.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, int, int], ...]
    relations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()


class Violation(NamedTuple):
    kind: str
    where: tuple
    message: str


class Enumeration(NamedTuple):
    functors: list
    truncated: bool


# ---------------------------------------------------------------------------
# construction helpers


def make_category(objects: Sequence[str], morphisms: Sequence[tuple[str, int, int]],
                  identity: Sequence[int], compose: dict[tuple[int, int], int],
                  check: bool = True) -> FiniteCategory:
    """Build a category from a partial composition map ``{(g, f): g∘f}``."""
    n = len(morphisms)
    table = [[-1] * n for _ in range(n)]
    for (g, f), h in compose.items():
        table[g][f] = h
    C = FiniteCategory(
        obj_names=tuple(objects),
        src=tuple(m[1] for m in morphisms),
        tgt=tuple(m[2] for m in morphisms),
        identity=tuple(identity),
        table=tuple(tuple(r) for r in table),
        mor_names=tuple(m[0] for m in morphisms),
    )
    if check:
        report = validate_category(C)
        if report:
            raise ValidationError(report[0].message, report)
    return C


def _from_closure(objects, morphisms, identity, comp_fn) -> FiniteCategory:
    """Build from a composition function on morphism ids (composable pairs only)."""
    src = [m[1] for m in morphisms]
    tgt = [m[2] for m in morphisms]
    n = len(morphisms)
    table = [[-1] * n for _ in range(n)]
    for g in range(n):
        for f in range(n):
            if src[g] == tgt[f]:
                table[g][f] = comp_fn(g, f)
    return FiniteCategory(tuple(objects), tuple(src), tuple(tgt), tuple(identity),
                          tuple(tuple(r) for r in table), tuple(m[0] for m in morphisms))


def poset(elements: Sequence[str], leq) -> FiniteCategory:
    """Thin category of a preorder; ``leq(i, j)`` must be reflexive and transitive."""
    n = len(elements)
    pairs = [(i, j) for i in range(n) for j in range(n) if leq(i, j)]
    index = {p: k for k, p in enumerate(pairs)}
    morphisms = []
    for i, j in pairs:
        name = f"id_{elements[i]}" if i == j else f"{elements[i]}<={elements[j]}"
        morphisms.append((name, i, j))
    identity = [index[i, i] for i in range(n)]
    return _from_closure(elements, morphisms, identity,
                         lambda g, f: index[pairs[f][0], pairs[g][1]])


def discrete(n: int, prefix: str = "x") -> FiniteCategory:
    return poset([f"{prefix}{i}" for i in range(n)], lambda i, j: i == j)


def terminal_category() -> FiniteCategory:
    return discrete(1, prefix="*")


def empty_category() -> FiniteCategory:
    return discrete(0)


def chain(n: int) -> FiniteCategory:
    """The poset ``0 < 1 < ... < n-1``."""
    return poset([str(i) for i in range(n)], lambda i, j: i <= j)


def from_presentation(vertices, edges, relations=(), path_bound=4) -> FiniteCategory:
    """Convenience front end: edges by name, relations as name sequences (first applied first)."""
    vidx = {v: k for k, v in enumerate(vertices)}
    eidx = {e[0]: k for k, e in enumerate(edges)}
    P = GraphPresentation(
        tuple(vertices),
        tuple((e[0], vidx[e[1]], vidx[e[2]]) for e in edges),
        tuple((tuple(eidx[x] for x in p), tuple(eidx[x] for x in q)) for p, q in relations),
    )
    return free_category(P, path_bound)


def parallel_pair() -> FiniteCategory:
    return from_presentation(["a", "b"], [("f", "a", "b"), ("g", "a", "b")])


def span() -> FiniteCategory:
    return from_presentation(["m", "l", "r"], [("u", "m", "l"), ("v", "m", "r")])


def cospan() -> FiniteCategory:
    return from_presentation(["l", "r", "t"], [("u", "l", "t"), ("v", "r", "t")])


def idem() -> FiniteCategory:
    """The walking idempotent: one object, one loop ``e`` with ``e∘e = e``."""
    return from_presentation(["x"], [("e", "x", "x")], [(("e", "e"), ("e",))], path_bound=2)


def commutative_square() -> FiniteCategory:
    return product(chain(2), chain(2))[0]


def diamond() -> FiniteCategory:
    """The four-element lattice ``bot < x, y < top``."""
    up = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    return poset(["bot", "x", "y", "top"], lambda i, j: i == j or (i, j) in up)


# ---------------------------------------------------------------------------
# validation


def validate_category(C: FiniteCategory) -> list[Violation]:
    """Check the category axioms; returns an empty list when they hold."""
    out: list[Violation] = []
    n = C.n_morphisms
    if len(C.tgt) != n or len(C.mor_names) != n or len(C.table) != n:
        return [Violation("shape", (), "morphism arrays have inconsistent lengths")]
    if len(C.identity) != C.n_objects:
        return [Violation("shape", (), "identity map must cover every object")]
    for m in range(n):
        if not (0 <= C.src[m] < C.n_objects and 0 <= C.tgt[m] < C.n_objects):
            out.append(Violation("endpoint", (m,), f"morphism {C.mor_names[m]} has an unknown endpoint"))
    if out:
        return out
    for x in C.objects:
        i = C.identity[x]
        if not (0 <= i < n) or C.src[i] != x or C.tgt[i] != x:
            out.append(Violation("identity", (x,), f"identity of {C.obj_names[x]} is not an endomorphism of it"))
    if out:
        return out
    for g in range(n):
        row = C.table[g]
        for f in range(n):
            h = row[f]
            if C.src[g] == C.tgt[f]:
                if not (0 <= h < n):
                    out.append(Violation("compose-missing", (g, f),
                                         f"composite {C.mor_names[g]}.{C.mor_names[f]} is undefined"))
                elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
                    out.append(Violation("compose-src-tgt", (g, f),
                                         f"composite {C.mor_names[g]}.{C.mor_names[f]} has wrong source or target"))
            elif h != -1:
                out.append(Violation("compose-domain", (g, f),
                                     f"{C.mor_names[g]}.{C.mor_names[f]} is defined on a non-composable pair"))
    if out:
        return out
    for f in range(n):
        if C.table[C.identity[C.tgt[f]]][f] != f or C.table[f][C.identity[C.src[f]]] != f:
            out.append(Violation("unit", (f,), f"unit law fails for {C.mor_names[f]}"))
    for f in range(n):
        for g in _out_of(C, C.tgt[f]):
            gf = C.table[g][f]
            for h in _out_of(C, C.tgt[g]):
                if C.table[h][gf] != C.table[C.table[h][g]][f]:
                    out.append(Violation("associativity", (h, g, f),
                                         f"associativity fails for ({C.mor_names[h]}, {C.mor_names[g]}, {C.mor_names[f]})"))
    return out


def _out_of(C: FiniteCategory, x: int) -> list[int]:
    return [m for y in C.objects for m in C.hom(x, y)]


def validate_functor(F: FunctorData) -> list[Violation]:
    A, B = F.source, F.target
    out = []
    if len(F.object_map) != A.n_objects or len(F.morphism_map) != A.n_morphisms:
        return [Violation("shape", (), "functor maps do not cover the source")]
    for m in range(A.n_morphisms):
        fm = F.morphism_map[m]
        if B.src[fm] != F.object_map[A.src[m]] or B.tgt[fm] != F.object_map[A.tgt[m]]:
            out.append(Violation("endpoint", (m,), f"image of {A.mor_names[m]} has wrong endpoints"))
    for x in A.objects:
        if F.morphism_map[A.identity[x]] != B.identity[F.object_map[x]]:
            out.append(Violation("identity", (x,), f"identity of {A.obj_names[x]} not preserved"))
    if out:
        return out
    for g in range(A.n_morphisms):
        for f in range(A.n_morphisms):
            h = A.table[g][f]
            if h >= 0 and B.table[F.morphism_map[g]][F.morphism_map[f]] != F.morphism_map[h]:
                out.append(Violation("compose", (g, f),
                                     f"composite {A.mor_names[g]}.{A.mor_names[f]} not preserved"))
    return out


def check_functor(F: FunctorData) -> FunctorData:
    report = validate_functor(F)
    if report:
        raise ValidationError(report[0].message, report)
    return F


# ---------------------------------------------------------------------------
# free categories on presented graphs


def free_category(P: GraphPresentation, path_bound: int) -> FiniteCategory:
    """Quotient of the path category by the relations, computed on paths of length <= path_bound.

    Raises NotClosedWithinBound when a composite of two classes has no
    representative within the bound.
    """
    if path_bound < 1:
        raise ValueError("path_bound must be at least 1")
    nv = len(P.vertices)
    esrc = [e[1] for e in P.edges]
    etgt = [e[2] for e in P.edges]
    out_edges = [[k for k in range(len(P.edges)) if esrc[k] == v] for v in range(nv)]

    # paths are (start vertex, edge tuple)
    paths: list[tuple[int, tuple[int, ...]]] = [(v, ()) for v in range(nv)]
    frontier = list(paths)
    for _ in range(path_bound):
        nxt = []
        for v, p in frontier:
            end = etgt[p[-1]] if p else v
            for e in out_edges[end]:
                nxt.append((v, p + (e,)))
        paths.extend(nxt)
        frontier = nxt
    index = {p: k for k, p in enumerate(paths)}

    def end_of(path):
        v, p = path
        return etgt[p[-1]] if p else v

    parent = list(range(len(paths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        i, j = find(i), find(j)
        if i == j:
            return False
        if i > j:
            i, j = j, i
        parent[j] = i
        return True

    def rel_path(p, q):
        # relation endpoints: empty side borrows endpoints from the other side
        if p:
            return esrc[p[0]]
        return esrc[q[0]] if q else None

    for p, q in P.relations:
        start = rel_path(p, q)
        if start is None:
            continue
        for (v, pre) in paths:
            if end_of((v, pre)) != start:
                continue
            for suf_path in paths:
                sv, suf = suf_path
                end = etgt[p[-1]] if p else (etgt[q[-1]] if q else start)
                if sv != end:
                    continue
                a, b = (v, pre + p + suf), (v, pre + q + suf)
                if a in index and b in index:
                    union(index[a], index[b])

    changed = True
    while changed:
        changed = False
        sig: dict[tuple, int] = {}
        for k, (v, p) in enumerate(paths):
            if len(p) >= path_bound:
                continue
            for e in out_edges[end_of((v, p))]:
                key = ("r", find(k), e)
                j = index[(v, p + (e,))]
                if key in sig:
                    changed |= union(sig[key], j)
                else:
                    sig[key] = j
            for e in range(len(P.edges)):
                if etgt[e] == v:
                    key = ("l", find(k), e)
                    j = index[(esrc[e], (e,) + p)]
                    if key in sig:
                        changed |= union(sig[key], j)
                    else:
                        sig[key] = j

    classes: dict[int, list[int]] = {}
    for k in range(len(paths)):
        classes.setdefault(find(k), []).append(k)

    def rep_key(k):
        v, p = paths[k]
        return (len(p), v, p)

    reps = {r: min(ms, key=rep_key) for r, ms in classes.items()}
    id_roots = [find(index[(v, ())]) for v in range(nv)]
    if len(set(id_roots)) != nv:
        raise NotClosedWithinBound("relations identify identities of distinct objects")
    others = sorted((r for r in classes if r not in set(id_roots)), key=lambda r: rep_key(reps[r]))
    order = id_roots + others
    mor_of_root = {r: m for m, r in enumerate(order)}

    def name_of(root):
        v, p = paths[reps[root]]
        if not p:
            return f"id_{P.vertices[v]}"
        return ".".join(P.edges[e][0] for e in reversed(p))

    morphisms = []
    for r in order:
        v, p = paths[reps[r]]
        morphisms.append((name_of(r), v, end_of((v, p))))

    n = len(order)
    table = [[-1] * n for _ in range(n)]
    for g in range(n):
        for f in range(n):
            if morphisms[g][1] != morphisms[f][2]:
                continue
            result = None
            for kf in classes[order[f]]:
                vf, pf = paths[kf]
                for kg in classes[order[g]]:
                    _, pg = paths[kg]
                    cand = (vf, pf + pg)
                    if cand in index:
                        r = mor_of_root[find(index[cand])]
                        if result is None:
                            result = r
                        elif result != r:
                            raise NotClosedWithinBound(
                                f"composite {morphisms[g][0]}.{morphisms[f][0]} is ambiguous within bound {path_bound}")
            if result is None:
                raise NotClosedWithinBound(
                    f"composite {morphisms[g][0]}.{morphisms[f][0]} has no representative of length <= {path_bound}")
            table[g][f] = result
    return FiniteCategory(
        obj_names=tuple(P.vertices),
        src=tuple(m[1] for m in morphisms),
        tgt=tuple(m[2] for m in morphisms),
        identity=tuple(range(nv)),
        table=tuple(tuple(r) for r in table),
        mor_names=tuple(m[0] for m in morphisms),
    )


# ---------------------------------------------------------------------------
# constructions


def opposite(C: FiniteCategory) -> FiniteCategory:
    n = C.n_morphisms
    table = tuple(tuple(C.table[f][g] for f in range(n)) for g in range(n))
    return FiniteCategory(C.obj_names, C.tgt, C.src, C.identity, table, C.mor_names)


def identity_functor(C: FiniteCategory) -> FunctorData:
    return FunctorData(C, C, tuple(C.objects), tuple(range(C.n_morphisms)))


def compose_functors(G: FunctorData, F: FunctorData) -> FunctorData:
    """``G∘F``."""
    return FunctorData(F.source, G.target,
                       tuple(G.object_map[x] for x in F.object_map),
                       tuple(G.morphism_map[m] for m in F.morphism_map))


def constant_functor(J: FiniteCategory, C: FiniteCategory, c: int) -> FunctorData:
    return FunctorData(J, C, (c,) * J.n_objects, (C.identity[c],) * J.n_morphisms)


def object_functor(C: FiniteCategory, c: int) -> FunctorData:
    """The functor from the terminal category picking out ``c``."""
    return constant_functor(terminal_category(), C, c)


def product(C: FiniteCategory, D: FiniteCategory) -> tuple[FiniteCategory, FunctorData, FunctorData]:
    nd, md = D.n_objects, D.n_morphisms
    objects = [f"({a},{b})" for a in C.obj_names for b in D.obj_names]
    morphisms = []
    for f in range(C.n_morphisms):
        for g in range(md):
            morphisms.append((f"({C.mor_names[f]},{D.mor_names[g]})",
                              C.src[f] * nd + D.src[g], C.tgt[f] * nd + D.tgt[g]))
    identity = [C.identity[a] * md + D.identity[b] for a in C.objects for b in D.objects]

    def comp(h, k):
        return C.table[h // md][k // md] * md + D.table[h % md][k % md]

    P = _from_closure(objects, morphisms, identity, comp)
    P = _with_factors(P, (C, D))
    p1 = FunctorData(P, C, tuple(x // nd for x in P.objects), tuple(m // md for m in range(P.n_morphisms)))
    p2 = FunctorData(P, D, tuple(x % nd for x in P.objects), tuple(m % md for m in range(P.n_morphisms)))
    return P, p1, p2


def _with_factors(C: FiniteCategory, factors) -> FiniteCategory:
    return FiniteCategory(C.obj_names, C.src, C.tgt, C.identity, C.table, C.mor_names, factors=factors)


def coproduct(Cs: Sequence[FiniteCategory]) -> tuple[FiniteCategory, list[FunctorData]]:
    obj_names = [n for C in Cs for n in C.obj_names]
    mor_names = [n for C in Cs for n in C.mor_names]
    unique = len(set(obj_names)) == len(obj_names) and len(set(mor_names)) == len(mor_names)
    objects, morphisms, identity = [], [], []
    obj_off, mor_off = [], []
    for i, C in enumerate(Cs):
        oo, mo = len(objects), len(morphisms)
        obj_off.append(oo)
        mor_off.append(mo)
        tag = "" if unique else f"@{i}"
        objects.extend(n + tag for n in C.obj_names)
        morphisms.extend((C.mor_names[m] + tag, C.src[m] + oo, C.tgt[m] + oo) for m in range(C.n_morphisms))
        identity.extend(C.identity[x] + mo for x in C.objects)
    part = [i for i, C in enumerate(Cs) for _ in range(C.n_morphisms)]

    def comp(g, f):
        i = part[g]
        return Cs[i].table[g - mor_off[i]][f - mor_off[i]] + mor_off[i]

    S = _from_closure(objects, morphisms, identity, comp)
    injections = [
        FunctorData(C, S, tuple(x + obj_off[i] for x in C.objects),
                    tuple(m + mor_off[i] for m in range(C.n_morphisms)))
        for i, C in enumerate(Cs)
    ]
    return S, injections


def monotone_map(P: FiniteCategory, Q: FiniteCategory, object_map: Sequence[int]) -> FunctorData:
    """The functor between thin categories determined by an order-preserving object map."""
    mors = []
    for m in range(P.n_morphisms):
        hom = Q.hom(object_map[P.src[m]], object_map[P.tgt[m]])
        if len(hom) != 1:
            raise ValidationError(f"{P.mor_names[m]} has no unique image; the map is not monotone into a thin category")
        mors.append(hom[0])
    return FunctorData(P, Q, tuple(object_map), tuple(mors))


def full_subcategory(C: FiniteCategory, objs: Sequence[int]) -> tuple[FiniteCategory, FunctorData]:
    objs = list(objs)
    pos = {x: k for k, x in enumerate(objs)}
    mors = [m for m in range(C.n_morphisms) if C.src[m] in pos and C.tgt[m] in pos]
    mpos = {m: k for k, m in enumerate(mors)}
    morphisms = [(C.mor_names[m], pos[C.src[m]], pos[C.tgt[m]]) for m in mors]
    identity = [mpos[C.identity[x]] for x in objs]
    D = _from_closure([C.obj_names[x] for x in objs], morphisms, identity,
                      lambda g, f: mpos[C.table[mors[g]][mors[f]]])
    return D, FunctorData(D, C, tuple(objs), tuple(mors))


def connected_components(C: FiniteCategory) -> tuple[list[list[int]], list[FiniteCategory]]:
    """Partition objects by the undirected graph of morphisms; components ordered by least object."""
    parent = list(C.objects)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for m in range(C.n_morphisms):
        a, b = find(C.src[m]), find(C.tgt[m])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    parts = [groups[r] for r in sorted(groups)]
    return parts, [full_subcategory(C, p)[0] for p in parts]


def find_terminal(C: FiniteCategory) -> int | None:
    for t in C.objects:
        if all(len(C.hom(c, t)) == 1 for c in C.objects):
            return t
    return None


def find_initial(C: FiniteCategory) -> int | None:
    for t in C.objects:
        if all(len(C.hom(t, c)) == 1 for c in C.objects):
            return t
    return None


def slice_category(C: FiniteCategory, c: int) -> tuple[FiniteCategory, FunctorData]:
    """``C/c``: objects are morphisms ``x -> c``, morphisms are commuting triangles."""
    objs = [f for f in range(C.n_morphisms) if C.tgt[f] == c]
    opos = {f: k for k, f in enumerate(objs)}
    morphisms, data = [], []
    for f in objs:
        for g in objs:
            for u in C.hom(C.src[f], C.src[g]):
                if C.table[g][u] == f:
                    morphisms.append((C.mor_names[u] + f"/{C.mor_names[f]}", opos[f], opos[g]))
                    data.append(u)
    return _triangle_category(C, objs, morphisms, data, [C.src[f] for f in objs])


def coslice_category(C: FiniteCategory, c: int) -> tuple[FiniteCategory, FunctorData]:
    """``c/C``: objects are morphisms ``c -> x``, morphisms ``u`` with ``u∘f = g``."""
    objs = [f for f in range(C.n_morphisms) if C.src[f] == c]
    opos = {f: k for k, f in enumerate(objs)}
    morphisms, data = [], []
    for f in objs:
        for g in objs:
            for u in C.hom(C.tgt[f], C.tgt[g]):
                if C.table[u][f] == g:
                    morphisms.append((C.mor_names[u] + f"\\{C.mor_names[f]}", opos[f], opos[g]))
                    data.append(u)
    return _triangle_category(C, objs, morphisms, data, [C.tgt[f] for f in objs])


def _triangle_category(C, objs, morphisms, data, under):
    key = {(morphisms[k][1], morphisms[k][2], data[k]): k for k in range(len(data))}
    identity = [key[(k, k, C.identity[under[k]])] for k in range(len(objs))]

    def comp(g, f):
        return key[(morphisms[f][1], morphisms[g][2], C.table[data[g]][data[f]])]

    D = _from_closure([C.mor_names[f] for f in objs], morphisms, identity, comp)
    proj = FunctorData(D, C, tuple(under), tuple(data))
    return D, proj


def comma(f: FunctorData, g: FunctorData) -> tuple[FiniteCategory, FunctorData, FunctorData]:
    """``f ↓ g`` for ``f: A -> C`` and ``g: B -> C``.

    Objects are triples ``(a, b, γ: f(a) -> g(b))``; a morphism
    ``(a, b, γ) -> (a', b', γ')`` is a pair ``(α, β)`` with ``g(β)∘γ = γ'∘f(α)``.
    """
    A, B, C = f.source, g.source, f.target
    if g.target is not C and g.target != C:
        raise ValueError("comma requires functors with a common target")
    objs = []
    for a in A.objects:
        for b in B.objects:
            for gamma in C.hom(f(a), g(b)):
                objs.append((a, b, gamma))
    morphisms, data = [], []
    for i, (a, b, gm) in enumerate(objs):
        for j, (a2, b2, gm2) in enumerate(objs):
            for alpha in A.hom(a, a2):
                lhs_f = C.table[gm2][f.on_mor(alpha)]
                for beta in B.hom(b, b2):
                    if C.table[g.on_mor(beta)][gm] == lhs_f:
                        morphisms.append((f"({A.mor_names[alpha]},{B.mor_names[beta]})", i, j))
                        data.append((alpha, beta))
    key = {(morphisms[k][1], morphisms[k][2]) + data[k]: k for k in range(len(data))}
    identity = [key[(i, i, A.identity[a], B.identity[b])] for i, (a, b, _) in enumerate(objs)]

    def comp(h, k):
        return key[(morphisms[k][1], morphisms[h][2],
                    A.table[data[h][0]][data[k][0]], B.table[data[h][1]][data[k][1]])]

    names = [f"({A.obj_names[a]},{B.obj_names[b]},{C.mor_names[gm]})" for a, b, gm in objs]
    D = _from_closure(names, morphisms, identity, comp)
    pa = FunctorData(D, A, tuple(o[0] for o in objs), tuple(d[0] for d in data))
    pb = FunctorData(D, B, tuple(o[1] for o in objs), tuple(d[1] for d in data))
    return D, pa, pb


def comma_triples(f: FunctorData, g: FunctorData) -> list[tuple[int, int, int]]:
    """Object triples of ``comma(f, g)`` in the order used there."""
    A, B, C = f.source, g.source, f.target
    return [(a, b, gm) for a in A.objects for b in B.objects for gm in C.hom(f(a), g(b))]


def karoubi(C: FiniteCategory) -> tuple[FiniteCategory, FunctorData]:
    """Idempotent completion with its full and faithful embedding ``x -> (x, id_x)``."""
    objs = []
    for x in C.objects:
        for p in C.hom(x, x):
            if C.table[p][p] == p:
                objs.append((x, p))
    morphisms, data = [], []
    for i, (x, p) in enumerate(objs):
        for j, (y, q) in enumerate(objs):
            for f in C.hom(x, y):
                if C.table[C.table[q][f]][p] == f:
                    morphisms.append((f"{C.mor_names[f]}:{C.mor_names[p]}->{C.mor_names[q]}", i, j))
                    data.append(f)
    key = {(morphisms[k][1], morphisms[k][2], data[k]): k for k in range(len(data))}
    identity = [key[(i, i, p)] for i, (_, p) in enumerate(objs)]

    def comp(g, f):
        return key[(morphisms[f][1], morphisms[g][2], C.table[data[g]][data[f]])]

    names = [f"({C.obj_names[x]},{C.mor_names[p]})" for x, p in objs]
    K = _from_closure(names, morphisms, identity, comp)
    opos = {o: k for k, o in enumerate(objs)}
    emb_obj = tuple(opos[(x, C.identity[x])] for x in C.objects)
    emb_mor = tuple(key[(emb_obj[C.src[f]], emb_obj[C.tgt[f]], f)] for f in range(C.n_morphisms))
    return K, FunctorData(C, K, emb_obj, emb_mor)


# ---------------------------------------------------------------------------
# functor enumeration and isomorphism search


def _constraint_plan(J: FiniteCategory) -> tuple[list[int], list[list[tuple[int, int, int]]]]:
    order = list(J.nonidentity)
    rank = {m: k for k, m in enumerate(order)}
    for x in J.objects:
        rank[J.identity[x]] = -1
    checks: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for g in range(J.n_morphisms):
        for f in range(J.n_morphisms):
            h = J.table[g][f]
            if h < 0:
                continue
            last = max(rank[g], rank[f], rank[h])
            if last >= 0:
                checks[last].append((g, f, h))
    return order, checks


def iter_functors(J: FiniteCategory, C: FiniteCategory) -> Iterator[FunctorData]:
    """All functors ``J -> C`` in lexicographic order of (object images, morphism images)."""
    order, checks = _constraint_plan(J)
    nJ = J.n_objects
    obj = [0] * nJ
    mor = [-1] * J.n_morphisms

    def assign_mor(k):
        if k == len(order):
            yield FunctorData(J, C, tuple(obj), tuple(mor))
            return
        u = order[k]
        for cand in C.hom(obj[J.src[u]], obj[J.tgt[u]]):
            mor[u] = cand
            if all(C.table[mor[g]][mor[f]] == mor[h] for g, f, h in checks[k]):
                yield from assign_mor(k + 1)
        mor[u] = -1

    for images in itertools.product(range(C.n_objects), repeat=nJ):
        obj[:] = images
        for x in J.objects:
            mor[J.identity[x]] = C.identity[images[x]]
        yield from assign_mor(0)


def enumerate_functors(J: FiniteCategory, C: FiniteCategory, limit: int | None = None) -> Enumeration:
    out = []
    it = iter_functors(J, C)
    for F in it:
        if limit is not None and len(out) >= limit:
            return Enumeration(out, True)
        out.append(F)
    return Enumeration(out, False)


def find_isomorphism(C: FiniteCategory, D: FiniteCategory) -> FunctorData | None:
    """An isomorphism of categories ``C -> D`` (bijective on objects and morphisms), if any."""
    if C.n_objects != D.n_objects or C.n_morphisms != D.n_morphisms:
        return None

    def profile(X, x):
        return (len(X.hom(x, x)),
                tuple(sorted(len(X.hom(x, y)) for y in X.objects)),
                tuple(sorted(len(X.hom(y, x)) for y in X.objects)))

    pc = [profile(C, x) for x in C.objects]
    pd = [profile(D, y) for y in D.objects]
    if sorted(pc) != sorted(pd):
        return None
    order, checks = _constraint_plan(C)
    n = C.n_objects
    obj = [-1] * n
    used_obj = [False] * D.n_objects
    mor = [-1] * C.n_morphisms
    used_mor = [False] * D.n_morphisms

    def assign_mor(k):
        if k == len(order):
            return True
        u = order[k]
        for cand in D.hom(obj[C.src[u]], obj[C.tgt[u]]):
            if used_mor[cand]:
                continue
            mor[u] = cand
            used_mor[cand] = True
            if all(D.table[mor[g]][mor[f]] == mor[h] for g, f, h in checks[k]):
                if assign_mor(k + 1):
                    return True
            used_mor[cand] = False
        mor[u] = -1
        return False

    def assign_obj(i):
        if i == n:
            for a in C.objects:
                for b in C.objects:
                    if len(C.hom(a, b)) != len(D.hom(obj[a], obj[b])):
                        return False
            for x in C.objects:
                mor[C.identity[x]] = D.identity[obj[x]]
                used_mor[D.identity[obj[x]]] = True
            ok = assign_mor(0)
            if not ok:
                for x in C.objects:
                    used_mor[D.identity[obj[x]]] = False
            return ok
        for y in D.objects:
            if used_obj[y] or pd[y] != pc[i]:
                continue
            if any(len(C.hom(i, j)) != len(D.hom(y, obj[j])) or len(C.hom(j, i)) != len(D.hom(obj[j], y))
                   for j in range(i)):
                continue
            obj[i] = y
            used_obj[y] = True
            if assign_obj(i + 1):
                return True
            used_obj[y] = False
            obj[i] = -1
        return False

    if assign_obj(0):
        return FunctorData(C, D, tuple(obj), tuple(mor))
    return None


def is_full_and_faithful(F: FunctorData) -> bool:
    A, B = F.source, F.target
    for a in A.objects:
        for a2 in A.objects:
            images = sorted(F.on_mor(m) for m in A.hom(a, a2))
            if images != sorted(B.hom(F(a), F(a2))):
                return False
    return True


def is_essentially_surjective(F: FunctorData) -> bool:
    B = F.target
    image = set(F.object_map)
    for b in B.objects:
        if b in image:
            continue
        if not any(B.is_iso(m) for y in image for m in B.hom(b, y)):
            return False
    return True


def is_equivalence(F: FunctorData) -> bool:
    return is_full_and_faithful(F) and is_essentially_surjective(F)
