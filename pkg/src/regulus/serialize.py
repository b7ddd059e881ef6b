"""JSON encodings for categories, presheaves, recipes, verdicts and reports."""
from __future__ import annotations

import json
from enum import Enum
from importlib import resources

from .fincat import FiniteCategory, FunctorData
from .presheaf import Presheaf
from .recipe import Colim, Leaf, Recipe, ShapeClass

SCHEMA_VERSION = "1.0"


def category_to_json(C: FiniteCategory) -> dict:
    return {
        "objects": list(C.obj_names),
        "morphisms": [{"name": C.mor_names[m], "src": C.src[m], "tgt": C.tgt[m]} for m in range(C.n_morphisms)],
        "identity": list(C.identity),
        "table": [list(r) for r in C.table],
    }


def category_from_json(d: dict) -> FiniteCategory:
    from .fincat import validate_category
    from .errors import ValidationError

    ms = d["morphisms"]
    C = FiniteCategory(tuple(d["objects"]), tuple(m["src"] for m in ms), tuple(m["tgt"] for m in ms),
                       tuple(d["identity"]), tuple(tuple(r) for r in d["table"]),
                       tuple(m["name"] for m in ms))
    report = validate_category(C)
    if report:
        raise ValidationError(report[0].message, report)
    return C


def functor_to_json(F: FunctorData) -> dict:
    return {"objects": list(F.object_map), "morphisms": list(F.morphism_map)}


def presheaf_to_json(X: Presheaf) -> dict:
    out = {"sizes": list(X.sizes), "actions": [list(a) for a in X.actions]}
    if X.names is not None:
        out["names"] = [list(n) for n in X.names]
    return out


def presheaf_from_json(C: FiniteCategory, d: dict) -> Presheaf:
    from .presheaf import check_presheaf

    names = tuple(tuple(n) for n in d["names"]) if d.get("names") is not None else None
    return check_presheaf(Presheaf(C, tuple(d["sizes"]), tuple(tuple(a) for a in d["actions"]), names))


def recipe_to_json(r: Recipe) -> dict:
    steps = []
    for s in r.steps:
        if isinstance(s, Leaf):
            steps.append({"leaf": s.obj})
        else:
            steps.append({"colim": {"shape": s.shape, "nodes": list(s.nodes),
                                    "edges": [[list(c) for c in e] for e in s.edges]}})
    return {"root": r.root, "steps": steps}


def recipe_from_json(d: dict) -> Recipe:
    steps = []
    for s in d["steps"]:
        if "leaf" in s:
            steps.append(Leaf(int(s["leaf"])))
        else:
            c = s["colim"]
            steps.append(Colim(int(c["shape"]), tuple(c["nodes"]),
                               tuple(tuple(tuple(x) for x in e) for e in c["edges"])))
    return Recipe(tuple(steps), int(d["root"]))


def certificate_to_json(C: FiniteCategory, F: ShapeClass, r: Recipe, target: Presheaf) -> dict:
    """Self-contained sidecar: everything needed to re-evaluate ``r`` and compare with ``target``."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "certificate",
        "category": category_to_json(C),
        "shape_class": {"name": F.name, "shapes": [category_to_json(J) for J in F.shapes]},
        "target": presheaf_to_json(target),
        "recipe": recipe_to_json(r),
    }


def certificate_from_json(d: dict) -> tuple[FiniteCategory, ShapeClass, Recipe, Presheaf]:
    C = category_from_json(d["category"])
    F = ShapeClass(tuple(category_from_json(J) for J in d["shape_class"]["shapes"]),
                   d["shape_class"].get("name", "F"))
    return C, F, recipe_from_json(d["recipe"]), presheaf_from_json(C, d["target"])


def _plain(x):
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def report(command: str, verdict: str | None, *, bounds=None, certificate=None,
           witnesses=None, details=None) -> dict:
    """A report object conforming to the shipped schema."""
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "verdict": verdict,
        "bounds": _plain(bounds) if bounds is not None else None,
        "certificate": certificate,
        "witnesses": _plain(witnesses) if witnesses is not None else None,
        "details": _plain(details) if details is not None else {},
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def report_schema() -> dict:
    text = resources.files("regulus").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
