"""Named checks over a loaded workspace, shared by the CLI and the corpus runner.

Every check returns a :class:`CheckResult` whose ``exit_code`` follows the
verdict lattice: 0 for a decisive positive answer, 1 for a decisive
negative one, 2 for Unknown.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import catalog, cofinality, completion, homotopy, serialize
from .dsl import Workspace
from .dsl.diagnostics import UnresolvedReference
from .errors import RegulusError
from .fincat import connected_components, find_terminal, karoubi, validate_category, validate_functor
from .presheaf import are_isomorphic, category_of_elements, terminal_presheaf, validate_presheaf
from .recipe import Status, eval_recipe

POSITIVE, NEGATIVE, UNKNOWN = 0, 1, 2


@dataclass
class CheckResult:
    verdict: str
    exit_code: int
    bounds: dict | None = None
    certificate: dict | None = None
    witnesses: dict | None = None
    details: dict = field(default_factory=dict)

    def report(self, command: str) -> dict:
        return serialize.report(command, self.verdict, bounds=self.bounds, certificate=self.certificate,
                                witnesses=self.witnesses, details=self.details)


_EXIT = {Status.MEMBER: POSITIVE, Status.NON_MEMBER: NEGATIVE, Status.UNKNOWN: UNKNOWN}


def _get(ws: Workspace, table: str, name, what: str):
    store = getattr(ws, table)
    if name not in store:
        raise UnresolvedReference(f"no {what} named {name!r} in this file")
    return store[name]


def _bounds(options) -> completion.Bounds:
    b = completion.Bounds.default()
    kw = {}
    for key in ("max_stage", "max_objects_per_stage", "max_diagrams"):
        if options.get(key) is not None:
            kw[key] = int(options[key])
    return replace(b, **kw)


def _verdict_result(v, C=None, F=None, target=None) -> CheckResult:
    cert = None
    details = {"semantic_level": v.level}
    if v.certificate is not None:
        cert = serialize.certificate_to_json(C, F, v.certificate, target)
        details.update(steps=len(v.certificate), depth=v.certificate.depth())
    return CheckResult(v.status.value, _EXIT[v.status], v.bounds_used, cert, v.witness, details)


def check_validate(ws: Workspace, options) -> CheckResult:
    problems = []
    for name, C in ws.categories.items():
        problems += [f"category {name}: {p.message}" for p in validate_category(C)]
    for name, e in ws.functors.items():
        problems += [f"functor {name}: {p.message}" for p in validate_functor(e.functor)]
    for name, e in ws.presheaves.items():
        problems += [f"presheaf {name}: {p.message}" for p in validate_presheaf(e.presheaf)]
    counts = {k: len(getattr(ws, k)) for k in ("categories", "functors", "presheaves", "classes", "recipes")}
    counts["checks"] = len(ws.checks)
    if problems:
        return CheckResult("Invalid", NEGATIVE, witnesses={"problems": problems}, details=counts)
    return CheckResult("Valid", POSITIVE, details=counts)


def check_closure(ws, category, shape_class, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    F = _get(ws, "classes", shape_class, "class").shape_class
    v = completion.regular_closure_member(C, F, _bounds(options))
    return _verdict_result(v, C, F, terminal_presheaf(C))


def check_membership(ws, presheaf, shape_class, options) -> CheckResult:
    e = _get(ws, "presheaves", presheaf, "presheaf")
    F = _get(ws, "classes", shape_class, "class").shape_class
    X = e.presheaf
    if options.get("via") == "elements":
        v = completion.membership_via_elements(X.base, F, X, _bounds(options))
    else:
        v = completion.closure_search(X.base, F, X, _bounds(options))
    return _verdict_result(v, X.base, F, X)


def check_eval_recipe(ws, recipe, options) -> CheckResult:
    e = _get(ws, "recipes", recipe, "recipe")
    C = ws.categories[e.base]
    F = ws.classes[e.shape_class].shape_class
    P = eval_recipe(C, F, e.recipe)
    details = {"sizes": list(P.sizes), "steps": len(e.recipe), "depth": e.recipe.depth()}
    target = ws.presheaves[e.target].presheaf if e.target else terminal_presheaf(C)
    ok = are_isomorphic(P, target) is not None
    details["target"] = e.target or "terminal"
    cert = serialize.certificate_to_json(C, F, e.recipe, target) if ok else None
    return CheckResult("Member" if ok else "NonMember", POSITIVE if ok else NEGATIVE, certificate=cert, details=details)


def eval_certificate(data: dict) -> CheckResult:
    C, F, r, target = serialize.certificate_from_json(data)
    P = eval_recipe(C, F, r)
    ok = are_isomorphic(P, target) is not None
    return CheckResult("Member" if ok else "NonMember", POSITIVE if ok else NEGATIVE,
                       details={"sizes": list(P.sizes), "steps": len(r), "depth": r.depth()})


def _cofinal_result(v) -> CheckResult:
    code = {"Cofinal": POSITIVE, "NotCofinal": NEGATIVE}.get(v.status.value, UNKNOWN)
    w = dict(v.witnesses)
    if v.failing is not None:
        w["failing_object"] = v.failing
    return CheckResult(v.status.value, code, witnesses=w, details={"level": v.level.value})


def check_cofinal(ws, functor, options) -> CheckResult:
    f = _get(ws, "functors", functor, "functor").functor
    res = _cofinal_result(cofinality.is_cofinal(f, options.get("level", "connected")))
    res.details["colimit_criterion"] = cofinality.cofinal_via_colimit(f)
    return res


def check_sifted(ws, category, options) -> CheckResult:
    J = _get(ws, "categories", category, "category")
    return _cofinal_result(cofinality.is_sifted(J, options.get("level", "connected")))


def check_filtered(ws, category, options) -> CheckResult:
    J = _get(ws, "categories", category, "category")
    r = cofinality.is_filtered(J)
    return CheckResult("Filtered" if r else "NotFiltered", POSITIVE if r else NEGATIVE, witnesses=r.witness)


def check_contractible(ws, category, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    v = homotopy.weak_contractibility(C, int(options.get("depth", homotopy.DEFAULT_DEPTH)))
    code = {"Contractible": POSITIVE, "NotContractible": NEGATIVE}.get(v.status.value, UNKNOWN)
    return CheckResult(v.status.value, code, witnesses=v.evidence)


def check_homology(ws, category, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    d = int(options.get("depth", homotopy.DEFAULT_DEPTH))
    N = homotopy.nerve(C, d)
    H = homotopy.homology(N, reduced=bool(options.get("reduced", False)))
    details = {"betti": H.betti, "torsion": H.torsion, "reduced": H.reduced, "simplices": N.counts(),
               "boundary_ranks": H.ranks[1:], "euler_consistent": homotopy.euler_consistent(N, H)}
    if options.get("triplets"):
        details["triplets"] = homotopy.dump_triplets(N)
    return CheckResult("Computed", POSITIVE, details=details)


def check_components(ws, category, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    parts, comps = connected_components(C)
    inv = homotopy.groupoid_invariants(C)
    details = {"count": len(parts), "components": [[C.obj_names[x] for x in p] for p in parts],
               "betti": inv.homology.betti, "pi1": [s.value for s in inv.pi1]}
    return CheckResult("Computed", POSITIVE, details=details)


def check_karoubi(ws, category, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    K, _ = karoubi(C)
    t = find_terminal(K)
    details = {"objects": list(K.obj_names), "morphisms": K.n_morphisms,
               "terminal": K.obj_names[t] if t is not None else None}
    return CheckResult("HasTerminal" if t is not None else "NoTerminal", POSITIVE if t is not None else NEGATIVE,
                       details=details)


def check_elements(ws, presheaf, options) -> CheckResult:
    X = _get(ws, "presheaves", presheaf, "presheaf").presheaf
    E, proj = category_of_elements(X.base, X)
    details = {"objects": list(E.obj_names), "morphisms": E.n_morphisms,
               "terminal": E.obj_names[t] if (t := find_terminal(E)) is not None else None}
    return CheckResult("Computed", POSITIVE, details=details)


def check_preservation(ws, functor, shape, options) -> CheckResult:
    f = _get(ws, "functors", functor, "functor").functor
    J = _get(ws, "categories", shape, "category")
    limit = int(options["max_diagrams"]) if options.get("max_diagrams") else completion.Bounds.default().max_diagrams
    v = cofinality.preserves_colimits_direct(f, J, limit)
    res = CheckResult(v.status.value, _EXIT[v.status], v.bounds_used, witnesses=v.witness)
    try:
        pv, agree = cofinality.path_criterion_check(f, J, limit)
        res.details = {"path_criterion": pv.status.value, "agreement": agree}
    except RegulusError as e:
        res.details = {"path_criterion": None, "path_criterion_error": str(e)}
    res.details["semantic_level"] = v.level
    return res


def check_catalog(ws, category, tag, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    v = catalog.catalog_decider(C, tag)
    return CheckResult(v.status.value, _EXIT[v.status], witnesses=v.witness)


def check_pi1(ws, category, options) -> CheckResult:
    C = _get(ws, "categories", category, "category")
    p = homotopy.pi1_presentation(C)
    code = {"Trivial": POSITIVE, "NonTrivial": NEGATIVE}.get(p.status.value, UNKNOWN)
    return CheckResult(p.status.value, code, details={"presentation": p.format()})


CHECKS = {
    "validate": (check_validate, 0),
    "closure": (check_closure, 2),
    "membership": (check_membership, 2),
    "eval-recipe": (check_eval_recipe, 1),
    "cofinal": (check_cofinal, 1),
    "sifted": (check_sifted, 1),
    "filtered": (check_filtered, 1),
    "contractible": (check_contractible, 1),
    "homology": (check_homology, 1),
    "components": (check_components, 1),
    "karoubi": (check_karoubi, 1),
    "elements": (check_elements, 1),
    "preservation": (check_preservation, 2),
    "catalog": (check_catalog, 2),
    "pi1": (check_pi1, 1),
}


def run_check(ws: Workspace, kind: str, args=(), options=None) -> CheckResult:
    if kind not in CHECKS:
        raise UnresolvedReference(f"unknown check {kind!r}", hint="known checks: " + ", ".join(sorted(CHECKS)))
    fn, arity = CHECKS[kind]
    if len(args) != arity:
        raise RegulusError(f"check {kind!r} takes {arity} argument(s), got {len(args)}")
    return fn(ws, *args, dict(options or {}))
