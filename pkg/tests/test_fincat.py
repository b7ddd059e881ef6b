import pytest
from hypothesis import given

from conftest import categories
from regulus.errors import NotClosedWithinBound, ValidationError
from regulus.fincat import (FiniteCategory, GraphPresentation, chain, comma, connected_components,
                            coproduct, coslice_category, discrete, empty_category, enumerate_functors,
                            find_initial, find_isomorphism, find_terminal, free_category, identity_functor,
                            idem, is_equivalence, karoubi, make_category, object_functor, opposite,
                            parallel_pair, poset, product, slice_category, terminal_category,
                            validate_category, validate_functor, iter_functors)


def test_parallel_pair_is_valid():
    C = parallel_pair()
    assert validate_category(C) == []
    assert (C.n_objects, C.n_morphisms) == (2, 4)


def test_wrong_target_reported_at_the_pair():
    C = parallel_pair()
    a, f = C.identity[0], C.mor_id("f")
    table = [list(r) for r in C.table]
    table[f][a] = C.identity[1]  # f∘id_a should be f
    bad = FiniteCategory(C.obj_names, C.src, C.tgt, C.identity, tuple(map(tuple, table)), C.mor_names)
    report = validate_category(bad)
    assert report and any(v.where == (f, a) for v in report)


def test_three_chain_is_valid():
    assert validate_category(chain(3)) == []


def test_make_category_rejects_garbage():
    with pytest.raises(ValidationError):
        make_category(["a"], [("id", 0, 0), ("e", 0, 0)], [0], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 5})


def test_free_category_examples():
    P = free_category(GraphPresentation(("a", "b"), (("f", 0, 1), ("g", 0, 1))), 2)
    assert (P.n_objects, P.n_morphisms) == (2, 4)
    I = free_category(GraphPresentation(("x",), (("e", 0, 0),), (((0, 0), (0,)),)), 2)
    assert (I.n_objects, I.n_morphisms) == (1, 2)
    with pytest.raises(NotClosedWithinBound):
        free_category(GraphPresentation(("x",), (("e", 0, 0),)), 3)


def test_opposite():
    D = discrete(3)
    assert find_isomorphism(opposite(D), D) is not None
    op = opposite(chain(2))
    assert find_terminal(op) == 0 and find_initial(op) == 1
    Pop = opposite(parallel_pair())
    assert all(Pop.src[m] == 1 for m in Pop.nonidentity)


def test_products():
    C = parallel_pair()
    assert find_isomorphism(product(C, terminal_category())[0], C) is not None
    sq = product(chain(2), chain(2))[0]
    assert (sq.n_objects, sq.n_morphisms) == (4, 9)
    assert product(empty_category(), C)[0].n_objects == 0


def test_coproducts():
    D, _ = coproduct([terminal_category(), terminal_category()])
    assert find_isomorphism(D, discrete(2)) is not None
    assert coproduct([])[0].n_objects == 0
    E, _ = coproduct([chain(2), terminal_category()])
    assert (E.n_objects, E.n_morphisms) == (3, 4)


def test_components():
    assert len(connected_components(discrete(2))[0]) == 2
    assert len(connected_components(parallel_pair())[0]) == 1
    assert len(connected_components(coproduct([chain(2), idem()])[0])[0]) == 2


def test_terminal_objects():
    assert find_terminal(chain(2)) == 1
    assert find_terminal(parallel_pair()) is None
    K, _ = karoubi(idem())
    t = find_terminal(K)
    assert t is not None and K.obj_names[t] == "(x,e)"


def test_slices():
    co, _ = coslice_category(chain(3), 2)
    assert co.n_objects == 1
    C = parallel_pair()
    co, _ = coslice_category(C, 0)
    assert (co.n_objects, co.n_morphisms - co.n_objects) == (3, 2)
    D = discrete(3)
    assert find_isomorphism(slice_category(D, 1)[0], terminal_category()) is not None


def test_comma_examples():
    D = discrete(2)
    M, _, _ = comma(identity_functor(D), identity_functor(D))
    assert find_isomorphism(M, D) is not None
    C = parallel_pair()
    inc = make_functor_b(C)
    under, _, _ = comma(object_functor(C, 0), inc)
    assert find_isomorphism(under, discrete(2)) is not None


def make_functor_b(C):
    from regulus.fincat import FunctorData
    T = terminal_category()
    return FunctorData(T, C, (1,), (C.identity[1],))


def test_karoubi_examples():
    for P in (chain(3), terminal_category()):
        assert find_isomorphism(karoubi(P)[0], P) is not None
    K, emb = karoubi(idem())
    assert K.n_objects == 2 and validate_functor(emb) == []


def test_enumerate_functors_examples():
    C = parallel_pair()
    assert len(enumerate_functors(terminal_category(), C).functors) == C.n_objects
    # one functor per morphism of C: the 2-chain is the walking arrow
    assert len(enumerate_functors(chain(2), C).functors) == C.n_morphisms == 4
    e = enumerate_functors(chain(2), C, limit=0)
    assert e.functors == [] and e.truncated


@given(categories())
def test_generated_categories_are_valid(C):
    assert validate_category(C) == []


@given(categories())
def test_identity_is_equivalence_and_iso_to_self(C):
    assert is_equivalence(identity_functor(C))
    assert find_isomorphism(C, C) is not None


@given(categories())
def test_opposite_is_involutive(C):
    assert find_isomorphism(opposite(opposite(C)), C) is not None


@given(categories())
def test_functors_into_terminal(C):
    assert len(list(iter_functors(C, terminal_category()))) == 1


@given(categories())
def test_comma_with_point_is_slice(C):
    for c in C.objects:
        M, _, _ = comma(identity_functor(C), object_functor(C, c))
        assert find_isomorphism(M, slice_category(C, c)[0]) is not None


def test_poset_helper():
    P = poset(["p", "q"], lambda i, j: i <= j)
    assert find_isomorphism(P, chain(2)) is not None


@given(categories(), categories())
def test_functor_enumeration_matches_brute_force(J, C):
    from oracles import count_functors
    if J.n_morphisms > 4:
        return
    assert len(list(iter_functors(J, C))) == count_functors(J, C)
