import pytest
from hypothesis import given, strategies as st

from conftest import categories
from regulus.corpus import corpus_files, corpus_text
from regulus.dsl import (DuplicateName, ElaborationError, SyntaxError, UnresolvedReference, format_workspace,
                         load, parse)
from regulus.dsl.parser import CategoryPres, CheckDecl, ClassDecl, RecipeDecl
from regulus.dsl.printer import format_category
from regulus.fincat import find_isomorphism, parallel_pair


def test_coequalizer_file_structure():
    ast = parse(corpus_text("coequalizer.cat"))
    kinds = [type(d) for d in ast.decls]
    assert kinds.count(CategoryPres) == 3
    assert kinds.count(ClassDecl) == 1 and kinds.count(RecipeDecl) == 1 and kinds.count(CheckDecl) == 1


def test_empty_file():
    assert not parse("").decls
    ws = load("# nothing here\n")
    assert not ws.categories and not ws.checks


def test_unresolved_arrow_target():
    with pytest.raises(UnresolvedReference) as e:
        load("category C {\n  objects: a;\n  arrows: f: a -> zz;\n}\n")
    assert "zz" in str(e.value) and e.value.span.line == 3


def test_idempotent_presentation():
    ws = load("category I { objects: x; arrows: e: x -> x; relations: e.e = e; }")
    I = ws.categories["I"]
    assert (I.n_objects, I.n_morphisms) == (1, 2)


def test_identity_path_in_relation():
    ws = load("category Z { objects: x; arrows: s: x -> x; relations: s.s = 1; }")
    Z = ws.categories["Z"]
    assert Z.n_morphisms == 2 and Z.is_iso(Z.mor_id("s"))


def test_non_natural_presheaf_is_rejected():
    text = """
    category I { objects: x; arrows: e: x -> x; relations: e.e = e; }
    presheaf X on I { set x: p, q; act e: p => q, q => p; }
    """
    with pytest.raises(ElaborationError) as e:
        load(text)
    assert e.value.span is not None


def test_undeclared_class_in_recipe():
    text = """
    category C { objects: a; }
    recipe R on C class Nope { y = leaf a; root y; }
    """
    with pytest.raises(UnresolvedReference):
        load(text)


def test_duplicate_names():
    with pytest.raises(DuplicateName):
        load("category A = terminal; category A = empty;")


def test_syntax_error_has_position():
    with pytest.raises(SyntaxError) as e:
        load("category C { objects: a b; }")
    assert e.value.span.line == 1 and e.value.span.col > 1


def test_keywords_are_contextual_and_quoting():
    ws = load('category objects { objects: root, "a b"; arrows: "f.g": root -> "a b"; }')
    C = ws.categories["objects"]
    assert C.obj_names == ("root", "a b") and "f.g" in C.mor_names


def test_crlf_and_lf_agree():
    text = corpus_text("coequalizer.cat")
    assert load(text.replace("\n", "\r\n")) == load(text)


def test_elaboration_is_deterministic():
    text = corpus_text("shapes.cat")
    assert load(text) == load(text)


@pytest.mark.parametrize("name", corpus_files())
def test_corpus_round_trip(name):
    ws = load(corpus_text(name))
    printed = format_workspace(ws)
    assert load(printed) == ws
    assert format_workspace(load(printed)) == printed


def test_table_form_and_presentation_agree():
    ws = load("""
    category A { objects: a, b; arrows: f: a -> b, g: a -> b; }
    category B = parallel_pair;
    """)
    assert find_isomorphism(ws.categories["A"], ws.categories["B"]) is not None
    assert find_isomorphism(ws.categories["A"], parallel_pair()) is not None


def test_functor_composites_derived():
    ws = load(corpus_text("lattices.cat"))
    f = ws.functors["collapse"].functor
    Dm = f.source
    assert f.on_mor(Dm.table[Dm.mor_id("k")][Dm.mor_id("i")]) == f.target.mor_id("s")


@given(categories())
def test_printed_categories_reload(C):
    text = format_category("G", C)
    G = load(text).categories["G"]
    assert G == C


@given(st.text(alphabet="{}();:,.=-># abcxyz01\n\"", max_size=60))
def test_parser_never_crashes_unexpectedly(text):
    from regulus.errors import RegulusError
    try:
        load(text)
    except RegulusError:
        pass
