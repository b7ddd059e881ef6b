"""Small finite lattices, their monotone maps and a closed-form join oracle."""
import itertools

from regulus.fincat import chain, diamond, monotone_map, product


def leq(P, i, j):
    return bool(P.hom(i, j))


def join(P, i, j):
    ups = [k for k in P.objects if leq(P, i, k) and leq(P, j, k)]
    return next(k for k in ups if all(leq(P, k, u) for u in ups))


def bottom(P):
    return next(k for k in P.objects if all(leq(P, k, u) for u in P.objects))


def lattices():
    return {"C2": chain(2), "C3": chain(3), "Dm": diamond(), "C2xC3": product(chain(2), chain(3))[0]}


def monotone_maps(P, Q):
    for img in itertools.product(Q.objects, repeat=P.n_objects):
        if all(leq(Q, img[i], img[j]) for i in P.objects for j in P.objects if leq(P, i, j)):
            yield monotone_map(P, Q, img)


def preserves_oracle(f, shape):
    """Preservation of the colimits of a named shape, decided from joins alone."""
    P, Q = f.source, f.target
    if shape == "E":
        return f(bottom(P)) == bottom(Q)
    if shape in ("Pt", "P"):
        return True
    return all(f(join(P, i, j)) == join(Q, f(i), f(j)) for i in P.objects for j in P.objects)


def collapse():
    """Diamond onto the 2-chain sending everything but the top to 0, so the join of x and y is lost."""
    return monotone_map(diamond(), chain(2), (0, 0, 0, 1))
