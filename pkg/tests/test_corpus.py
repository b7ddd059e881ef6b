import pytest

from regulus.corpus import corpus_entries, load_corpus_file, manifest, run_entry
from regulus.fincat import (chain, commutative_square, diamond, discrete, find_isomorphism, idem,
                            parallel_pair, span)

ENTRIES = corpus_entries()


@pytest.mark.parametrize("ws,entry", ENTRIES, ids=[e.id for _, e in ENTRIES])
def test_entry_matches_expectation(ws, entry):
    _, bad = run_entry(ws, entry)
    assert bad == []


def test_manifest_is_well_formed():
    ids = [e.id for e in manifest()]
    assert len(ids) == len(set(ids))
    assert {e.origin for e in manifest()} <= {"worked-example", "derived", "trivial"}
    assert any(e.id == "coequalizer-from-pushout-coproduct" and e.expect["verdict"] == "Member"
               for e in manifest())


def test_required_shapes_present():
    ws = load_corpus_file("shapes.cat")
    have = list(ws.categories.values())
    for C in (parallel_pair(), span(), discrete(2), discrete(3), idem(), chain(2), chain(3), diamond(),
              commutative_square()):
        assert any(find_isomorphism(C, D) is not None for D in have)
