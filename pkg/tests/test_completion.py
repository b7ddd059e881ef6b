import time

import pytest

from regulus import catalog
from regulus.completion import (Bounds, closure_search, is_compact, membership_via_elements,
                                product_certificate, recognition_check, regular_closure_member)
from regulus.fincat import (chain, commutative_square, diamond, discrete, empty_category, idem,
                            parallel_pair, product, span, terminal_category)
from regulus.presheaf import (PresheafDiagram, are_isomorphic, empty_presheaf, identity_nat, is_terminal,
                              presheaf_colimit, terminal_presheaf, yoneda, yoneda_map)
from regulus.recipe import Colim, Leaf, Recipe, ShapeClass, Status, eval_recipe

F_EXAMPLE = ShapeClass((span(), discrete(2)), "F")
EMPTY = ShapeClass((), "none")


def _ident(X):
    return tuple(tuple(range(n)) for n in X.sizes)


def _coequalizer_recipe(C, second="g"):
    """Q = y(a) + y(a), then the pushout of y(a) <- Q -> y(b) along (id, id) and (y f, y second)."""
    ya = yoneda(C, 0)
    f, g = yoneda_map(C, C.mor_id("f")), yoneda_map(C, C.mor_id(second))
    D2, S = discrete(2), span()
    Q, legs = presheaf_colimit(PresheafDiagram(D2, (ya, ya), (identity_nat(ya),) * 2), base=C)
    # steps: 0 = y(a), 1 = y(b), 2 = Q, 3 = pushout; span objects are m, l, r
    nodes = (2, 0, 1)
    edges = [None] * S.n_morphisms
    for x, step in zip(S.objects, nodes):
        edges[S.identity[x]] = _ident({0: ya, 1: yoneda(C, 1), 2: Q}[step])
    edges[S.mor_id("u")] = _copair(C, Q, legs, _ident(ya), _ident(ya))
    edges[S.mor_id("v")] = _copair(C, Q, legs, f.components, g.components)
    steps = (Leaf(0), Leaf(1), Colim(1, (0, 0), (_ident(ya),) * D2.n_morphisms), Colim(0, nodes, tuple(edges)))
    return Recipe(steps, 3)


def _copair(C, Q, legs, left, right):
    comps = []
    for c in C.objects:
        m = [0] * Q.sizes[c]
        for leg, side in zip(legs, (left, right)):
            for x, cls in enumerate(leg.components[c]):
                m[cls] = side[c][x]
        comps.append(tuple(m))
    return tuple(comps)


def test_leaf_evaluates_to_representable():
    C = parallel_pair()
    assert are_isomorphic(eval_recipe(C, EMPTY, Recipe((Leaf(1),), 0)), yoneda(C, 1)) is not None


def test_hand_written_coequalizer_recipe():
    C = parallel_pair()
    P = eval_recipe(C, F_EXAMPLE, _coequalizer_recipe(C))
    assert is_terminal(P)
    bad = eval_recipe(C, F_EXAMPLE, _coequalizer_recipe(C, second="f"))
    assert bad.sizes[0] == 2


def test_closure_of_parallel_pair():
    C = parallel_pair()
    t = time.perf_counter()
    v = regular_closure_member(C, F_EXAMPLE)
    assert time.perf_counter() - t < 5
    assert v.status is Status.MEMBER and v.certificate.depth() <= 2
    assert is_terminal(eval_recipe(C, F_EXAMPLE, v.certificate))


def test_terminal_object_gives_stage_zero():
    for C in (chain(3), diamond(), commutative_square()):
        v = regular_closure_member(C, F_EXAMPLE)
        assert v.status is Status.MEMBER and v.certificate.depth() == 0


def test_empty_class_on_discrete_pair():
    v = regular_closure_member(discrete(2), EMPTY)
    assert v.status is Status.NON_MEMBER
    assert regular_closure_member(parallel_pair(), EMPTY).status is Status.NON_MEMBER


def test_shape_in_class_is_member_in_one_step():
    S = span()
    v = regular_closure_member(discrete(2), F_EXAMPLE)
    assert v.status is Status.MEMBER and v.certificate.depth() <= 1
    assert regular_closure_member(S, F_EXAMPLE).status is Status.MEMBER


def test_products_of_members():
    P = product(parallel_pair(), discrete(2))[0]
    v = regular_closure_member(P, F_EXAMPLE)
    assert v.status is Status.MEMBER and is_terminal(eval_recipe(P, F_EXAMPLE, v.certificate))


def test_product_certificate_direct():
    A, B = parallel_pair(), discrete(2)
    ra = regular_closure_member(A, F_EXAMPLE).certificate
    rb = regular_closure_member(B, F_EXAMPLE).certificate
    P = product(A, B)[0]
    assert is_terminal(eval_recipe(P, F_EXAMPLE, product_certificate(P, F_EXAMPLE, ra, rb)))


def test_membership_examples():
    C = parallel_pair()
    for c in C.objects:
        v = membership_via_elements(C, F_EXAMPLE, yoneda(C, c))
        assert v.status is Status.MEMBER
    v = membership_via_elements(C, F_EXAMPLE, terminal_presheaf(C))
    assert v.status is Status.MEMBER and is_terminal(eval_recipe(C, F_EXAMPLE, v.certificate))
    assert membership_via_elements(C, EMPTY, empty_presheaf(C)).status is Status.NON_MEMBER


def test_bounds_force_unknown():
    v = regular_closure_member(parallel_pair(), F_EXAMPLE, Bounds(max_stage=0))
    assert v.status is Status.UNKNOWN
    v = closure_search(parallel_pair(), F_EXAMPLE, terminal_presheaf(parallel_pair()), Bounds(max_diagrams=0))
    assert v.status is Status.UNKNOWN


def test_monotone_in_bounds():
    C = parallel_pair()
    verdicts = [regular_closure_member(C, F_EXAMPLE, Bounds(max_stage=k)).status for k in range(4)]
    decisive = {s for s in verdicts if s is not Status.UNKNOWN}
    assert len(decisive) <= 1 and verdicts[-1] is Status.MEMBER


def test_compactness():
    D = discrete(2)
    coproducts = ShapeClass((D,), "Binary")
    for c in D.objects:
        assert is_compact(D, coproducts, yoneda(D, c)).status is Status.MEMBER
    v = is_compact(D, coproducts, terminal_presheaf(D))
    # Nat(1, y(a) + y(b)) has one element; Nat(1, y(a)) + Nat(1, y(b)) is empty
    assert v.status is Status.NON_MEMBER and v.witness["nodes"] == [[1, 0], [0, 1]]
    assert is_compact(D, coproducts, yoneda(D, 0), Bounds(max_diagrams=0)).status is Status.UNKNOWN


def test_recognition():
    D = discrete(2)
    coproducts = ShapeClass((D,), "Binary")
    reps = [yoneda(D, c) for c in D.objects]
    r = recognition_check(D, coproducts, reps)
    assert all(v.status is Status.MEMBER for v in r.values())
    r = recognition_check(D, EMPTY, reps[:1])
    assert r["iii"].status is Status.NON_MEMBER
    r = recognition_check(D, coproducts, [terminal_presheaf(D)])
    assert r["ii"].status is Status.NON_MEMBER


@pytest.mark.parametrize("tag,J,expected", [
    ("BinaryCoproducts", discrete(3), Status.MEMBER),
    ("Idempotents", idem(), Status.MEMBER),
    ("AllCoproducts", parallel_pair(), Status.NON_MEMBER),
    ("AllCoproducts", empty_category(), Status.MEMBER),
    ("BinaryCoproducts", empty_category(), Status.NON_MEMBER),
    ("Empty", chain(2), Status.MEMBER),
])
def test_catalog_deciders(tag, J, expected):
    assert catalog.catalog_decider(J, tag).status is expected


def test_class_matching():
    assert catalog.match_class(ShapeClass((terminal_category(),))) == "Empty"
    assert catalog.match_class(ShapeClass((discrete(2),))) == "BinaryCoproducts"
    assert catalog.match_class(ShapeClass((discrete(0), discrete(2)))) == "AllCoproducts"
    assert catalog.match_class(ShapeClass((idem(),))) == "Idempotents"
    assert catalog.match_class(F_EXAMPLE) is None
