import pytest
from hypothesis import given

from conftest import categories
from lattices import collapse, lattices, monotone_maps, preserves_oracle
from regulus.errors import MissingColimits
from regulus.fincat import (FunctorData, chain, constant_functor, diamond, discrete, empty_category,
                            find_isomorphism, identity_functor, idem, parallel_pair, span,
                            terminal_category)
from regulus.cofinality import (CofinalStatus, Level, cofinal_via_colimit, colimit_in, diagonal,
                                is_cofinal, is_filtered, is_sifted, path_categories, path_criterion_check,
                                preserves_colimits_direct, under_category)
from regulus.recipe import Status

SHAPES = {"E": empty_category(), "Pt": terminal_category(), "D2": discrete(2), "P": parallel_pair(), "S": span()}


def point_at(C, c):
    return FunctorData(terminal_category(), C, (c,), (C.identity[c],))


def test_identity_is_cofinal_at_both_levels():
    for C in (parallel_pair(), idem(), diamond()):
        for level in Level:
            assert is_cofinal(identity_functor(C), level).status is CofinalStatus.COFINAL
        assert cofinal_via_colimit(identity_functor(C))


def test_terminal_inclusion_is_cofinal():
    f = point_at(chain(2), 1)
    assert is_cofinal(f).status is CofinalStatus.COFINAL and cofinal_via_colimit(f)


def test_b_into_parallel_pair_is_not_cofinal():
    C = parallel_pair()
    f = point_at(C, 1)
    for level in Level:
        v = is_cofinal(f, level)
        assert v.status is CofinalStatus.NOT_COFINAL and v.failing == "a"
    assert find_isomorphism(under_category(f, 0), discrete(2)) is not None
    assert not cofinal_via_colimit(f)


def test_discrete_surjection():
    D3, D2 = discrete(3), discrete(2)
    f = FunctorData(D3, D2, (0, 1, 1), (0, 1, 1))
    assert not cofinal_via_colimit(f)
    g = FunctorData(D2, D2, (1, 0), (1, 0))
    assert cofinal_via_colimit(g)


def test_siftedness():
    assert is_sifted(diamond()).status is CofinalStatus.COFINAL
    assert is_sifted(terminal_category()).status is CofinalStatus.COFINAL
    v = is_sifted(discrete(2))
    assert v.status is CofinalStatus.NOT_COFINAL
    assert is_sifted(empty_category()).status is CofinalStatus.NOT_COFINAL


def test_filtered():
    assert is_filtered(chain(3)) and is_filtered(diamond())
    r = is_filtered(discrete(2))
    assert not r and r.witness["reason"] == "no cospan"
    r = is_filtered(parallel_pair())
    assert not r and r.witness["reason"] == "parallel pair not equalized"


def test_diagonal_is_a_functor():
    from regulus.fincat import validate_functor
    assert validate_functor(diagonal(span())) == []


def test_colimits_in_lattice():
    Dm = diamond()
    D = FunctorData(discrete(2), Dm, (1, 2), (Dm.identity[1], Dm.identity[2]))
    apex, _ = colimit_in(D)
    assert Dm.obj_names[apex] == "top"
    assert colimit_in(FunctorData(discrete(2), discrete(2), (0, 1), (0, 1))) is None


def test_preservation_examples():
    Dm = diamond()
    for J in SHAPES.values():
        assert preserves_colimits_direct(identity_functor(Dm), J).status is Status.MEMBER
    top = constant_functor(Dm, Dm, 3)
    assert preserves_colimits_direct(top, SHAPES["E"]).status is Status.NON_MEMBER
    v, agree = path_criterion_check(top, SHAPES["E"])
    assert v.status is Status.NON_MEMBER and agree
    v, agree = path_criterion_check(identity_functor(Dm), SHAPES["D2"])
    assert v.status is Status.MEMBER and agree
    v, agree = path_criterion_check(collapse(), SHAPES["D2"])
    assert v.status is Status.NON_MEMBER and agree


def test_truncated_preservation_is_unknown():
    Dm = diamond()
    assert preserves_colimits_direct(identity_functor(Dm), SHAPES["D2"], limit=1).status is Status.UNKNOWN


def test_missing_colimits_reported():
    f = identity_functor(discrete(2))
    with pytest.raises(MissingColimits):
        path_criterion_check(f, SHAPES["D2"])


def test_path_category_examples():
    D = discrete(2)
    pc = path_categories(identity_functor(D))
    assert find_isomorphism(pc.lpath, D) is not None and pc.path.n_objects == pc.lpath.n_objects
    pc = path_categories(identity_functor(chain(2)))
    assert (pc.lpath.n_objects, pc.path.n_objects) == (3, 2) and pc.pi_a_path_equivalence
    pc = path_categories(point_at(chain(2), 0))
    assert pc.lpath.n_objects == pc.path.n_objects == 1


@pytest.mark.parametrize("shape", sorted(SHAPES))
def test_preservation_matches_join_oracle(shape):
    L = lattices()
    for P in (L["C2"], L["Dm"]):
        for Q in (L["C2"], L["C3"]):
            for f in monotone_maps(P, Q):
                expected = preserves_oracle(f, shape)
                got = preserves_colimits_direct(f, SHAPES[shape]).status
                assert got is (Status.MEMBER if expected else Status.NON_MEMBER)


@given(categories())
def test_connected_cofinality_criteria_agree_on_points(C):
    for c in C.objects:
        f = point_at(C, c)
        assert (is_cofinal(f).status is CofinalStatus.COFINAL) == cofinal_via_colimit(f)


@given(categories())
def test_weak_cofinality_implies_connected_cofinality(C):
    assert is_cofinal(identity_functor(C), Level.WEAKLY_CONTRACTIBLE).status is CofinalStatus.COFINAL
    for c in C.objects:
        f = point_at(C, c)
        if is_cofinal(f, Level.WEAKLY_CONTRACTIBLE).status is not CofinalStatus.NOT_COFINAL:
            assert is_cofinal(f).status is CofinalStatus.COFINAL
