"""Turn a parsed ``.cat`` file into validated categories, functors, presheaves and recipes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .. import fincat
from ..errors import IllFormedDiagram, NotClosedWithinBound, RegulusError, ValidationError
from ..fincat import FiniteCategory, FunctorData, GraphPresentation, validate_functor
from ..presheaf import (Presheaf, category_of_elements, empty_presheaf, make_presheaf,
                        terminal_presheaf, yoneda)
from ..recipe import Colim, Leaf, Recipe, ShapeClass, eval_steps
from .diagnostics import DuplicateName, ElaborationError, Span, UnresolvedReference
from .parser import (Ast, BoundDecl, Call, CategoryExpr, CategoryPres, CategoryTable, CheckDecl,
                     ClassDecl, ColimStep, FunctorDecl, Ident, Int, LeafStep, PresheafBlock,
                     PresheafExpr, RecipeDecl, parse)

DEFAULT_PATH_BOUND = 4


@dataclass(frozen=True)
class FunctorEntry:
    source: str
    target: str
    functor: FunctorData


@dataclass(frozen=True)
class PresheafEntry:
    base: str
    presheaf: Presheaf


@dataclass(frozen=True)
class ClassEntry:
    shapes: tuple[str, ...]
    shape_class: ShapeClass


@dataclass(frozen=True)
class RecipeEntry:
    base: str
    shape_class: str
    recipe: Recipe
    step_names: tuple[str, ...]
    target: str | None = None


@dataclass(frozen=True)
class CheckEntry:
    kind: str
    args: tuple
    options: tuple[tuple[str, object], ...] = ()

    def option(self, key, default=None):
        return dict(self.options).get(key, default)


@dataclass
class Workspace:
    path_bound: int = DEFAULT_PATH_BOUND
    categories: dict[str, FiniteCategory] = field(default_factory=dict)
    functors: dict[str, FunctorEntry] = field(default_factory=dict)
    presheaves: dict[str, PresheafEntry] = field(default_factory=dict)
    classes: dict[str, ClassEntry] = field(default_factory=dict)
    recipes: dict[str, RecipeEntry] = field(default_factory=dict)
    checks: list[CheckEntry] = field(default_factory=list)

    def kind_of(self, name: str) -> str | None:
        for kind in ("categories", "functors", "presheaves", "classes", "recipes"):
            if name in getattr(self, kind):
                return kind
        return None


def _names(items, what):
    seen: dict[str, Ident] = {}
    for it in items:
        if it.text in seen:
            raise DuplicateName(f"{what} {it.text!r} is declared twice", it.span,
                                f"first declared at {seen[it.text].span}")
        seen[it.text] = it
    return {name: k for k, name in enumerate(seen)}


class _Elaborator:
    def __init__(self):
        self.ws = Workspace()
        self.declared: dict[str, Span] = {}

    def declare(self, name: Ident):
        if name.text in self.declared:
            raise DuplicateName(f"name {name.text!r} is already declared", name.span,
                                f"first declared at {self.declared[name.text]}; pick a fresh name")
        self.declared[name.text] = name.span

    def lookup(self, table: str, ref: Ident, what: str):
        store = getattr(self.ws, table)
        if ref.text not in store:
            other = self.ws.kind_of(ref.text)
            hint = f"{ref.text!r} is declared, but not as a {what}" if other else f"declare the {what} before using it"
            raise UnresolvedReference(f"unknown {what} {ref.text!r}", ref.span, hint)
        return store[ref.text]

    def run(self, ast: Ast) -> Workspace:
        for d in ast.decls:
            getattr(self, "e_" + type(d).__name__)(d)
        return self.ws

    # -- declarations

    def e_BoundDecl(self, d: BoundDecl):
        self.ws.path_bound = d.value

    def e_CategoryPres(self, d: CategoryPres):
        self.declare(d.name)
        obj = _names(d.objects, "object")
        arr = _names([a.name for a in d.arrows], "arrow")
        edges = []
        for a in d.arrows:
            edges.append((a.name.text, self.obj_ref(obj, a.src), self.obj_ref(obj, a.tgt)))
        rels = []
        for lhs, rhs in d.relations:
            pl, pr = self.path(arr, edges, lhs), self.path(arr, edges, rhs)
            el, er = self.endpoints(edges, pl), self.endpoints(edges, pr)
            if el and er and el != er:
                raise ElaborationError("the two sides of a relation have different endpoints", lhs.span.to(rhs.span),
                                       "both paths must start and end at the same objects")
            ends = el or er
            if (not pl or not pr) and ends and ends[0] != ends[1]:
                raise ElaborationError("only an endomorphism can equal an identity", lhs.span.to(rhs.span))
            rels.append((pl, pr))
        P = GraphPresentation(tuple(o.text for o in d.objects), tuple(edges), tuple(rels))
        try:
            C = fincat.free_category(P, self.ws.path_bound)
        except NotClosedWithinBound as e:
            err = NotClosedWithinBound(f"{d.name.span}: {e}")
            err.span = d.name.span
            raise err from None
        self.ws.categories[d.name.text] = C

    def obj_ref(self, obj, ref: Ident) -> int:
        if ref.text not in obj:
            raise UnresolvedReference(f"unknown object {ref.text!r}", ref.span, "list it under `objects:`")
        return obj[ref.text]

    def path(self, arr, edges, p) -> tuple[int, ...]:
        ids = []
        for part in p.parts:
            if part.text not in arr:
                raise UnresolvedReference(f"unknown arrow {part.text!r}", part.span, "list it under `arrows:`")
            ids.append(arr[part.text])
        ids.reverse()  # application order
        for f, g in zip(ids, ids[1:]):
            if edges[f][2] != edges[g][1]:
                raise ElaborationError(f"{edges[g][0]}.{edges[f][0]} is not composable", p.span,
                                       "in `g.f` the target of f must be the source of g")
        return tuple(ids)

    @staticmethod
    def endpoints(edges, ids):
        if not ids:
            return None
        return edges[ids[0]][1], edges[ids[-1]][2]

    def e_CategoryTable(self, d: CategoryTable):
        self.declare(d.name)
        obj = _names(d.objects, "object")
        arr = _names([a.name for a in d.arrows], "arrow")
        morphisms = [(a.name.text, self.obj_ref(obj, a.src), self.obj_ref(obj, a.tgt)) for a in d.arrows]
        identity = [None] * len(obj)
        for o, a in d.identities:
            x = self.obj_ref(obj, o)
            m = self.arrow_ref(arr, a)
            if morphisms[m][1] != x or morphisms[m][2] != x:
                raise ElaborationError(f"identity {a.text!r} is not an endomorphism of {o.text!r}", a.span)
            identity[x] = m
        missing = [name for name, k in obj.items() if identity[k] is None]
        if missing:
            raise ElaborationError(f"object {missing[0]!r} has no identity", d.span,
                                   "tables must list every identity under `identities:`")
        compose: dict[tuple[int, int], int] = {}
        for m, (_, a, b) in enumerate(morphisms):
            compose[(identity[b], m)] = m
            compose[(m, identity[a])] = m
        for g, f, h in d.compose:
            gi, fi, hi = self.arrow_ref(arr, g), self.arrow_ref(arr, f), self.arrow_ref(arr, h)
            if morphisms[gi][1] != morphisms[fi][2]:
                raise ElaborationError(f"{g.text}.{f.text} is not composable", g.span.to(h.span))
            if morphisms[hi][1] != morphisms[fi][1] or morphisms[hi][2] != morphisms[gi][2]:
                raise ElaborationError(f"{h.text!r} has the wrong endpoints for {g.text}.{f.text}", h.span)
            if compose.get((gi, fi), hi) != hi:
                raise ElaborationError(f"{g.text}.{f.text} is given two different values", g.span.to(h.span))
            compose[(gi, fi)] = hi
        for g in range(len(morphisms)):
            for f in range(len(morphisms)):
                if morphisms[g][1] == morphisms[f][2] and (g, f) not in compose:
                    raise ElaborationError(f"composite {morphisms[g][0]}.{morphisms[f][0]} is missing", d.span,
                                           "add it under `compose:`")
        try:
            C = fincat.make_category([o.text for o in d.objects], morphisms, identity, compose)
        except ValidationError as e:
            raise ElaborationError(str(e), d.span, "check associativity of the compose entries", e) from None
        self.ws.categories[d.name.text] = C

    def arrow_ref(self, arr, ref: Ident) -> int:
        if ref.text not in arr:
            raise UnresolvedReference(f"unknown arrow {ref.text!r}", ref.span, "list it under `arrows:`")
        return arr[ref.text]

    def e_CategoryExpr(self, d: CategoryExpr):
        self.declare(d.name)
        self.ws.categories[d.name.text] = self.category_call(d.expr)

    def category_call(self, call: Call) -> FiniteCategory:
        f, args = call.func.text, call.args

        def cat(k):
            return self.lookup("categories", self.arg(args, k, Ident, call), "category")

        def num(k):
            return self.arg(args, k, Int, call).value

        nullary = {"parallel_pair": fincat.parallel_pair, "span": fincat.span, "cospan": fincat.cospan,
                   "idem": fincat.idem, "terminal": fincat.terminal_category, "empty": fincat.empty_category,
                   "diamond": fincat.diamond, "commutative_square": fincat.commutative_square}
        if f in nullary:
            self.arity(call, 0)
            return nullary[f]()
        if f in ("discrete", "chain"):
            self.arity(call, 1)
            return getattr(fincat, f)(num(0))
        if f == "product":
            self.arity(call, 2)
            return fincat.product(cat(0), cat(1))[0]
        if f == "coproduct":
            return fincat.coproduct([cat(k) for k in range(len(args))])[0]
        if f == "opposite":
            self.arity(call, 1)
            return fincat.opposite(cat(0))
        if f == "karoubi":
            self.arity(call, 1)
            return fincat.karoubi(cat(0))[0]
        if f == "elements":
            self.arity(call, 1)
            entry = self.lookup("presheaves", self.arg(args, 0, Ident, call), "presheaf")
            return category_of_elements(entry.presheaf.base, entry.presheaf)[0]
        raise UnresolvedReference(f"unknown constructor {f!r}", call.func.span,
                                  "constructors: " + ", ".join(sorted([*nullary, "discrete", "chain", "product",
                                                                       "coproduct", "opposite", "karoubi", "elements"])))

    @staticmethod
    def arity(call: Call, n: int):
        if len(call.args) != n:
            raise ElaborationError(f"{call.func.text} takes {n} argument(s), got {len(call.args)}", call.span)

    @staticmethod
    def arg(args, k, kind, call):
        if k >= len(args) or not isinstance(args[k], kind):
            what = "a name" if kind is Ident else "an integer"
            raise ElaborationError(f"argument {k + 1} of {call.func.text} must be {what}", call.span)
        return args[k]

    def e_FunctorDecl(self, d: FunctorDecl):
        self.declare(d.name)
        A = self.lookup("categories", d.source, "category")
        B = self.lookup("categories", d.target, "category")
        objs = [None] * A.n_objects
        seen = set()
        for a, b in d.objects:
            x = self.named(A.obj_names, a, "object", d.source.text)
            if x in seen:
                raise DuplicateName(f"object {a.text!r} is mapped twice", a.span)
            seen.add(x)
            objs[x] = self.named(B.obj_names, b, "object", d.target.text)
        if None in objs:
            raise ElaborationError(f"object {A.obj_names[objs.index(None)]!r} is not mapped", d.span,
                                   "every source object needs an `objects:` entry")
        mors = [None] * A.n_morphisms
        for x in A.objects:
            mors[A.identity[x]] = B.identity[objs[x]]
        for a, b in d.arrows:
            m = self.named(A.mor_names, a, "arrow", d.source.text)
            if A.is_identity[m]:
                raise ElaborationError("identities are mapped automatically", a.span)
            mors[m] = self.named(B.mor_names, b, "arrow", d.target.text)
        # composites of mapped arrows are determined by their factors
        changed = True
        while changed and None in mors:
            changed = False
            for g in range(A.n_morphisms):
                for f in range(A.n_morphisms):
                    h = A.table[g][f]
                    if h >= 0 and mors[h] is None and mors[g] is not None and mors[f] is not None:
                        mors[h] = B.table[mors[g]][mors[f]]
                        changed = True
        if None in mors:
            raise ElaborationError(f"arrow {A.mor_names[mors.index(None)]!r} is not mapped", d.span,
                                   "every non-identity source arrow needs an `arrows:` entry")
        F = FunctorData(A, B, tuple(objs), tuple(mors))
        bad = validate_functor(F)
        if bad:
            raise ElaborationError(bad[0].message, d.span, "the assignment must respect sources, targets and composition")
        self.ws.functors[d.name.text] = FunctorEntry(d.source.text, d.target.text, F)

    @staticmethod
    def named(names, ref: Ident, what: str, owner: str) -> int:
        if ref.text not in names:
            raise UnresolvedReference(f"{owner} has no {what} {ref.text!r}", ref.span)
        return names.index(ref.text)

    def e_PresheafBlock(self, d: PresheafBlock):
        self.declare(d.name)
        C = self.lookup("categories", d.base, "category")
        sets: dict[int, list[str]] = {}
        for o, elems in d.sets:
            c = self.named(C.obj_names, o, "object", d.base.text)
            if c in sets:
                raise DuplicateName(f"set for {o.text!r} is given twice", o.span)
            _names(elems, "element")
            sets[c] = [e.text for e in elems]
        acts: dict[int, dict[str, str]] = {}
        spans: dict[int, Span] = {}
        for m_ref, pairs in d.acts:
            m = self.named(C.mor_names, m_ref, "arrow", d.base.text)
            if m in acts:
                raise DuplicateName(f"action of {m_ref.text!r} is given twice", m_ref.span)
            a, b = C.src[m], C.tgt[m]
            mapping = {}
            for y, x in pairs:
                if y.text not in sets.get(b, []):
                    raise UnresolvedReference(f"{y.text!r} is not an element of the set at {C.obj_names[b]!r}", y.span,
                                              f"{m_ref.text} acts from the set at its target")
                if x.text not in sets.get(a, []):
                    raise UnresolvedReference(f"{x.text!r} is not an element of the set at {C.obj_names[a]!r}", x.span)
                mapping[y.text] = x.text
            acts[m] = mapping
            spans[m] = m_ref.span
        try:
            X = make_presheaf(C, sets, acts)
        except ValidationError as e:
            where = next((v.where for v in e.violations if v.where), ())
            span = next((spans[m] for m in where if m in spans), d.span)
            raise ElaborationError(str(e), span, "actions must be functions compatible with composition", e) from None
        self.ws.presheaves[d.name.text] = PresheafEntry(d.base.text, X)

    def e_PresheafExpr(self, d: PresheafExpr):
        self.declare(d.name)
        C = self.lookup("categories", d.base, "category")
        f = d.expr.func.text
        if f == "terminal":
            self.arity(d.expr, 0)
            X = terminal_presheaf(C)
        elif f == "empty":
            self.arity(d.expr, 0)
            X = empty_presheaf(C)
        elif f == "yoneda":
            self.arity(d.expr, 1)
            X = yoneda(C, self.named(C.obj_names, self.arg(d.expr.args, 0, Ident, d.expr), "object", d.base.text))
        else:
            raise UnresolvedReference(f"unknown presheaf constructor {f!r}", d.expr.func.span,
                                      "use terminal, empty or yoneda(a)")
        self.ws.presheaves[d.name.text] = PresheafEntry(d.base.text, X)

    def e_ClassDecl(self, d: ClassDecl):
        self.declare(d.name)
        shapes = tuple(self.lookup("categories", s, "category") for s in d.shapes)
        self.ws.classes[d.name.text] = ClassEntry(tuple(s.text for s in d.shapes), ShapeClass(shapes, d.name.text))

    def e_RecipeDecl(self, d: RecipeDecl):
        self.declare(d.name)
        C = self.lookup("categories", d.base, "category")
        cls = self.lookup("classes", d.shape_class, "shape class")
        F = cls.shape_class
        index: dict[str, int] = {}
        steps: list = []
        values: list[Presheaf] = []
        for st in d.steps:
            if st.name.text in index:
                raise DuplicateName(f"step {st.name.text!r} is defined twice", st.name.span)
            if isinstance(st, LeafStep):
                step = Leaf(self.named(C.obj_names, st.obj, "object", d.base.text))
            else:
                step = self.colim_step(C, cls, index, values, st)
            steps.append(step)
            try:
                values.append(eval_steps(C, F, Recipe(tuple(steps), len(steps) - 1))[-1])
            except (IllFormedDiagram, RegulusError) as e:
                raise ElaborationError(str(e), st.name.span, "edge components must form a natural diagram", e) from None
            index[st.name.text] = len(steps) - 1
        if d.root.text not in index:
            raise UnresolvedReference(f"unknown step {d.root.text!r}", d.root.span)
        target = None
        if d.target is not None:
            entry = self.lookup("presheaves", d.target, "presheaf")
            if entry.base != d.base.text:
                raise ElaborationError(f"target lives over {entry.base!r}, not {d.base.text!r}", d.target.span)
            target = d.target.text
        r = Recipe(tuple(steps), index[d.root.text])
        self.ws.recipes[d.name.text] = RecipeEntry(d.base.text, d.shape_class.text, r,
                                                   tuple(s.name.text for s in d.steps), target)

    def colim_step(self, C, cls: ClassEntry, index, values, st: ColimStep) -> Colim:
        if st.shape.text not in cls.shapes:
            if st.shape.text in self.ws.categories:
                raise ElaborationError(f"shape {st.shape.text!r} is not in class {cls.shape_class.name!r}",
                                       st.shape.span, "add it to the class or use a listed shape")
            raise UnresolvedReference(f"unknown shape {st.shape.text!r}", st.shape.span)
        k = cls.shapes.index(st.shape.text)
        J = cls.shape_class.shapes[k]
        nodes = [None] * J.n_objects
        for j_ref, s_ref in st.nodes:
            j = self.named(J.obj_names, j_ref, "object", st.shape.text)
            if s_ref.text not in index:
                raise UnresolvedReference(f"unknown step {s_ref.text!r}", s_ref.span, "steps may only use earlier steps")
            nodes[j] = index[s_ref.text]
        if None in nodes:
            raise ElaborationError(f"shape object {J.obj_names[nodes.index(None)]!r} has no node", st.span)
        edges = [None] * J.n_morphisms
        for x in J.objects:
            edges[J.identity[x]] = tuple(tuple(range(n)) for n in values[nodes[x]].sizes)
        for u_ref, comps in st.edges:
            u = self.named(J.mor_names, u_ref, "arrow", st.shape.text)
            if J.is_identity[u]:
                raise ElaborationError("identity edges are filled in automatically", u_ref.span)
            if len(comps) != C.n_objects:
                raise ElaborationError(f"edge {u_ref.text!r} needs one component per object ({C.n_objects})", u_ref.span)
            edges[u] = tuple(tuple(c) for c in comps)
        if None in edges:
            raise ElaborationError(f"shape arrow {J.mor_names[edges.index(None)]!r} has no edge", st.span)
        return Colim(k, tuple(nodes), tuple(edges))

    def e_CheckDecl(self, d: CheckDecl):
        def val(a):
            return a.value if isinstance(a, Int) else a.text
        self.ws.checks.append(CheckEntry(d.kind.text, tuple(val(a) for a in d.args),
                                         tuple((k.text, val(v)) for k, v in d.options)))


def elaborate(ast: Ast) -> Workspace:
    """Resolve names, build every value and run all validations, in declaration order."""
    return _Elaborator().run(ast)


def load(text: str) -> Workspace:
    return elaborate(parse(text))


def load_file(path) -> Workspace:
    with open(path, encoding="utf-8", newline="") as fh:
        return load(fh.read())
