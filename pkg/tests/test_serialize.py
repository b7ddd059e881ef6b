import json

import jsonschema
from hypothesis import given

from conftest import categories
from regulus import serialize
from regulus.completion import regular_closure_member
from regulus.fincat import discrete, parallel_pair, span
from regulus.presheaf import are_isomorphic, terminal_presheaf, yoneda
from regulus.recipe import ShapeClass, eval_recipe

F = ShapeClass((span(), discrete(2)), "F")


def test_certificate_round_trip():
    C = parallel_pair()
    v = regular_closure_member(C, F)
    data = serialize.certificate_to_json(C, F, v.certificate, terminal_presheaf(C))
    text = serialize.dumps(data)
    C2, F2, r2, target = serialize.certificate_from_json(json.loads(text))
    assert C2 == C and r2 == v.certificate
    assert are_isomorphic(eval_recipe(C2, F2, r2), target) is not None


def test_reports_validate():
    rep = serialize.report("closure", "Member", bounds={"max_stage": 3}, certificate=None,
                           witnesses=None, details={})
    jsonschema.validate(rep, serialize.report_schema())
    assert rep["schema_version"] == serialize.SCHEMA_VERSION


@given(categories())
def test_category_json_round_trip(C):
    assert serialize.category_from_json(serialize.category_to_json(C)) == C


def test_presheaf_json_round_trip():
    C = parallel_pair()
    X = yoneda(C, 1)
    Y = serialize.presheaf_from_json(C, serialize.presheaf_to_json(X))
    assert Y.sizes == X.sizes and Y.actions == X.actions
