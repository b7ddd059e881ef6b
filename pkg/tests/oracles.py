"""Independent brute-force oracles used to cross-check the library.

None of these reuse the library's algorithms; they only read the raw
composition tables.
"""
import itertools


def set_diagrams(J, max_size):
    """Every functor ``J -> FinSet`` with all sets of size <= max_size, as (sizes, maps)."""
    arrows = [u for u in range(J.n_morphisms) if u not in J.identity]
    for sizes in itertools.product(range(max_size + 1), repeat=J.n_objects):
        spaces = [list(itertools.product(range(sizes[J.tgt[u]]), repeat=sizes[J.src[u]])) for u in arrows]
        for choice in itertools.product(*spaces):
            maps = {}
            for x in range(J.n_objects):
                maps[J.identity[x]] = tuple(range(sizes[x]))
            maps.update(zip(arrows, choice))
            if _functorial(J, maps):
                yield sizes, tuple(maps[u] for u in range(J.n_morphisms))


def _functorial(J, maps):
    for g in range(J.n_morphisms):
        for f in range(J.n_morphisms):
            h = J.table[g][f]
            if h >= 0 and tuple(maps[g][y] for y in maps[f]) != maps[h]:
                return False
    return True


def relation_closure_partition(J, sizes, maps):
    """The colimit partition of the disjoint union, by closing the generating relation to a fixpoint."""
    elems = [(j, x) for j in range(J.n_objects) for x in range(sizes[j])]
    rel = {(e, e) for e in elems}
    for u in range(J.n_morphisms):
        for x, y in enumerate(maps[u]):
            a, b = (J.src[u], x), (J.tgt[u], y)
            rel |= {(a, b), (b, a)}
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            break
        rel |= extra
    return {e: frozenset(d for (c, d) in rel if c == e) for e in elems}


def partition_from_cocone(J, sizes, cocone):
    label = {(j, x): cocone[j][x] for j in range(J.n_objects) for x in range(sizes[j])}
    return {e: frozenset(d for d in label if label[d] == label[e]) for e in label}


def count_functors(J, C):
    """Functors ``J -> C`` by trying every assignment of morphisms."""
    n = 0
    for image in itertools.product(range(C.n_morphisms), repeat=J.n_morphisms):
        ok = all(image[J.identity[x]] == C.identity[C.src[image[J.identity[x]]]] for x in range(J.n_objects))
        ok = ok and all(C.src[image[u]] == C.src[image[J.identity[J.src[u]]]] and
                        C.tgt[image[u]] == C.src[image[J.identity[J.tgt[u]]]] for u in range(J.n_morphisms))
        if ok:
            for g in range(J.n_morphisms):
                for f in range(J.n_morphisms):
                    if J.table[g][f] >= 0 and C.table[image[g]][image[f]] != image[J.table[g][f]]:
                        ok = False
        n += ok
    return n


def _homs(C, x, y):
    return [m for m in range(C.n_morphisms) if C.src[m] == x and C.tgt[m] == y]


def terminal_objects(C):
    return [t for t in range(C.n_objects) if all(len(_homs(C, c, t)) == 1 for c in range(C.n_objects))]


def components(C):
    """Connected components by depth-first search over arrows in both directions."""
    seen, comps = set(), []
    for start in range(C.n_objects):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for m in range(C.n_morphisms):
                for a, b in ((C.src[m], C.tgt[m]), (C.tgt[m], C.src[m])):
                    if a == x and b not in seen:
                        seen.add(b)
                        stack.append(b)
        comps.append(sorted(comp))
    return comps


def every_component_has_terminal(C):
    for comp in components(C):
        if not any(all(len(_homs(C, c, t)) == 1 for c in comp) for t in comp):
            return False
    return True


def karoubi_has_terminal(C):
    """Some idempotent (x, p) receives exactly one intertwining map from every idempotent (y, q)."""
    idem = [(x, p) for x in range(C.n_objects) for p in _homs(C, x, x) if C.table[p][p] == p]
    for x, p in idem:
        if all(sum(1 for f in _homs(C, y, x) if C.table[C.table[p][f]][q] == f) == 1 for y, q in idem):
            return True
    return False
