import pytest
from hypothesis import assume, given, strategies as st

from conftest import categories
from oracles import partition_from_cocone, relation_closure_partition, set_diagrams
from regulus.errors import IllFormedDiagram, ValidationError
from regulus.fincat import (chain, discrete, find_isomorphism, idem, parallel_pair,
                            slice_category, span, terminal_category)
from regulus.presheaf import (Presheaf, PresheafDiagram, SetDiagram, are_isomorphic,
                              category_of_elements, compose_nat, empty_presheaf, identity_nat,
                              is_right_fibration, is_terminal, make_presheaf, nat_transformations,
                              presheaf_colimit, set_colimit, slice_presheaf, tautological_cocone_check,
                              terminal_presheaf, validate_presheaf, yoneda, yoneda_map)


def test_yoneda_examples():
    assert is_terminal(yoneda(terminal_category(), 0))
    C = parallel_pair()
    assert not is_terminal(yoneda(C, 1)) and yoneda(C, 1).sizes == (2, 1)
    assert not is_terminal(empty_presheaf(C))


def test_set_colimit_examples():
    P = set_colimit(SetDiagram(terminal_category(), (3,), ((0, 1, 2),)))
    assert P.size == 3 and P.cocone == [(0, 1, 2)]
    D = discrete(2)
    assert set_colimit(SetDiagram(D, (2, 3), ((0, 1), (0, 1, 2)))).size == 5
    C = parallel_pair()
    f, g = C.mor_id("f"), C.mor_id("g")
    maps = [None] * 4
    maps[C.identity[0]], maps[C.identity[1]] = (0, 1), (0, 1, 2)
    maps[f], maps[g] = (0, 1), (1, 2)
    assert set_colimit(SetDiagram(C, (2, 3), tuple(maps))).size == 1


def _coeq_diagram(C, second="g"):
    ya, yb = yoneda(C, 0), yoneda(C, 1)
    f, g = C.mor_id("f"), C.mor_id(second)
    edges = [None] * C.n_morphisms
    edges[C.identity[0]], edges[C.identity[1]] = identity_nat(ya), identity_nat(yb)
    edges[C.mor_id("f")] = yoneda_map(C, f)
    edges[C.mor_id("g")] = yoneda_map(C, g)
    return PresheafDiagram(C, (ya, yb), tuple(edges))


def test_coequalizer_of_representables_is_terminal():
    C = parallel_pair()
    P, cocone = presheaf_colimit(_coeq_diagram(C), base=C)
    assert is_terminal(P) and len(cocone) == 2


def test_colimit_over_terminal_shape_of_constant():
    C = parallel_pair()
    X = yoneda(C, 1)
    J = chain(2)
    D = PresheafDiagram(J, (X, X), (identity_nat(X),) * 3)
    P, _ = presheaf_colimit(D, base=C)
    assert are_isomorphic(P, X) is not None


def test_ill_formed_diagram_rejected():
    C = parallel_pair()
    ya = yoneda(C, 0)
    with pytest.raises(IllFormedDiagram):
        presheaf_colimit(PresheafDiagram(discrete(2), (ya, ya), ()), base=C)


def test_elements_examples():
    C = parallel_pair()
    E, p = category_of_elements(C, terminal_presheaf(C))
    assert find_isomorphism(E, C) is not None and is_right_fibration(p)
    for c in C.objects:
        E, _ = category_of_elements(C, yoneda(C, c))
        assert find_isomorphism(E, slice_category(C, c)[0]) is not None
    assert category_of_elements(C, empty_presheaf(C))[0].n_objects == 0


def test_tautological_cocone():
    C = parallel_pair()
    assert tautological_cocone_check(C, terminal_presheaf(C))
    for c in C.objects:
        assert tautological_cocone_check(C, yoneda(C, c))


def test_nat_counts():
    C = parallel_pair()
    T = terminal_presheaf(C)
    assert len(nat_transformations(T, T)) == 1
    assert len(nat_transformations(empty_presheaf(C), yoneda(C, 1))) == 1
    # Yoneda: Nat(y(a), X) is X(a)
    assert len(nat_transformations(yoneda(C, 0), yoneda(C, 1))) == 2


def test_isomorphism_search():
    C = parallel_pair()
    X = yoneda(C, 1)
    assert are_isomorphic(X, X) is not None
    assert are_isomorphic(X, terminal_presheaf(C)) is None
    relabeled = make_presheaf(C, {0: ["q", "p"], 1: ["*"]},
                              {C.mor_id("f"): {"*": "p"}, C.mor_id("g"): {"*": "q"}})
    assert are_isomorphic(relabeled, X) is not None


def test_make_presheaf_rejects_non_natural_action():
    I = idem()
    e = I.mor_id("e")
    with pytest.raises(ValidationError):
        make_presheaf(I, {0: ["0", "1"]}, {e: {"0": "1", "1": "0"}})


def test_slice_compatibility():
    C = parallel_pair()
    Y = yoneda(C, 1)
    X = terminal_presheaf(C)
    alpha = nat_transformations(Y, X)[0]
    E, Z = slice_presheaf(alpha)
    assert validate_presheaf(Z) == []
    EZ, _ = category_of_elements(E, Z)
    assert find_isomorphism(EZ, category_of_elements(C, Y)[0]) is not None


SHAPES = [terminal_category(), discrete(2), chain(2), parallel_pair(), span(), idem()]


@pytest.mark.parametrize("J", SHAPES, ids=lambda J: "/".join(J.obj_names))
def test_set_colimit_matches_relation_closure(J):
    for sizes, maps in set_diagrams(J, 2):
        col = set_colimit(SetDiagram(J, sizes, maps))
        assert partition_from_cocone(J, sizes, col.cocone) == relation_closure_partition(J, sizes, maps)


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_random_presheaf_on_two_chain_is_a_colimit_of_representables(n0, n1, data):
    C = chain(2)
    up = C.nonidentity[0]
    assume(n0 or not n1)
    action = tuple(data.draw(st.integers(0, n0 - 1)) for _ in range(n1))
    acts = [None] * 3
    acts[C.identity[0]], acts[C.identity[1]], acts[up] = tuple(range(n0)), tuple(range(n1)), action
    X = Presheaf(C, (n0, n1), tuple(acts))
    assert validate_presheaf(X) == []
    assert tautological_cocone_check(C, X)


@given(categories())
def test_terminal_presheaf_elements_recover_base(C):
    E, p = category_of_elements(C, terminal_presheaf(C))
    assert find_isomorphism(E, C) is not None and is_right_fibration(p)


@given(categories(), st.data())
def test_yoneda_maps_compose(C, data):
    if not C.n_morphisms:
        return
    f = data.draw(st.sampled_from(range(C.n_morphisms)))
    gs = [g for g in range(C.n_morphisms) if C.src[g] == C.tgt[f]]
    g = data.draw(st.sampled_from(gs))
    assert compose_nat(yoneda_map(C, g), yoneda_map(C, f)).components == yoneda_map(C, C.table[g][f]).components
