import itertools

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from conftest import categories
from regulus.errors import Disconnected
from regulus.fincat import (chain, commutative_square, coproduct, diamond, discrete, idem, parallel_pair,
                            span, terminal_category)
from regulus.homotopy import (ContractibilityStatus, Pi1Status, check_boundaries, dump_triplets,
                              euler_consistent, groupoid_invariants, homology, nerve, pi1_presentation,
                              smith_diagonal, weak_contractibility)


def _sympy_invariants(rows):
    M = sympy.Matrix(rows)
    D = smith_normal_form(M, domain=sympy.ZZ)
    return sorted(abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0)


def test_smith_example_against_sympy():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert sorted(smith_diagonal(A)) == _sympy_invariants(A) == [2, 6, 12]


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_matches_sympy(r, c, data):
    A = [[data.draw(st.integers(-6, 6)) for _ in range(c)] for _ in range(r)]
    mine = sorted(smith_diagonal(A))
    assert mine == _sympy_invariants(A)
    # invariant under permuting rows and columns
    pr = data.draw(st.permutations(range(r)))
    pc = data.draw(st.permutations(range(c)))
    B = [[A[i][j] for j in pc] for i in pr]
    assert sorted(smith_diagonal(B)) == mine


def _chain_count(C, k):
    """Strings of k composable non-identity morphisms, counted directly."""
    arrows = [m for m in range(C.n_morphisms) if m not in C.identity]
    if k == 0:
        return C.n_objects
    return sum(1 for s in itertools.product(arrows, repeat=k)
               if all(C.src[s[i + 1]] == C.tgt[s[i]] for i in range(k - 1)))


def test_nerve_examples():
    assert nerve(terminal_category(), 3).counts() == [1, 0, 0, 0]
    assert nerve(parallel_pair(), 3).counts() == [2, 2, 0, 0]
    assert nerve(chain(2), 3).counts() == [2, 1, 0, 0]


def test_homology_examples():
    H = homology(nerve(parallel_pair(), 3))
    assert H.betti[:2] == [1, 1]
    assert all(b == 0 for b in homology(nerve(terminal_category(), 3), reduced=True).betti)
    assert homology(nerve(discrete(2), 3)).betti[0] == 2


def test_pi1_examples():
    assert pi1_presentation(chain(3)).status is Pi1Status.TRIVIAL
    assert pi1_presentation(parallel_pair()).status is Pi1Status.NON_TRIVIAL
    assert pi1_presentation(commutative_square()).status is Pi1Status.TRIVIAL
    with pytest.raises(Disconnected):
        pi1_presentation(discrete(2))


@pytest.mark.parametrize("C,status", [
    (chain(2), ContractibilityStatus.CONTRACTIBLE),
    (parallel_pair(), ContractibilityStatus.NOT_CONTRACTIBLE),
    (discrete(2), ContractibilityStatus.NOT_CONTRACTIBLE),
    (discrete(0), ContractibilityStatus.NOT_CONTRACTIBLE),
    (idem(), ContractibilityStatus.PROBABLY_CONTRACTIBLE),
    (span(), ContractibilityStatus.CONTRACTIBLE),
    (diamond(), ContractibilityStatus.CONTRACTIBLE),
])
def test_contractibility_ladder(C, status):
    assert weak_contractibility(C).status is status


def test_invariants():
    inv = groupoid_invariants(chain(2))
    assert inv.components == 1
    inv = groupoid_invariants(idem())
    assert inv.components == 1 and inv.homology.betti[1:] == [0] * (len(inv.homology.betti) - 1)
    assert groupoid_invariants(discrete(2)).components == 2


def test_triplets_are_parseable():
    lines = dump_triplets(nerve(parallel_pair(), 2)).splitlines()
    assert lines and all(len(ln.split()) == 4 for ln in lines)


@given(categories())
def test_nerve_counts_match_direct_enumeration(C):
    N = nerve(C, 3)
    assert N.counts() == [_chain_count(C, k) for k in range(4)]
    assert check_boundaries(N)


@given(categories())
def test_betti_numbers_match_rational_ranks(C):
    N = nerve(C, 3)
    H = homology(N)
    ranks = [0]
    for k in range(1, 4):
        M = N.boundaries[k]
        ranks.append(sympy.Matrix(M).rank() if M and M[0] else 0)
    ranks.append(None)
    counts = N.counts()
    for k in range(3):
        assert H.betti[k] == counts[k] - ranks[k] - ranks[k + 1]
    assert euler_consistent(N, H)


@given(categories())
def test_terminal_or_initial_implies_acyclic(C):
    from regulus.fincat import find_initial, find_terminal
    if find_terminal(C) is None and find_initial(C) is None:
        return
    assert homology(nerve(C, 3), reduced=True).is_acyclic()


def test_coproduct_adds_components():
    C, _ = coproduct([parallel_pair(), chain(2)])
    H = homology(nerve(C, 3))
    assert H.betti[:2] == [2, 1]
