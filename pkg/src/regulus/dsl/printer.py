"""Pretty-printer producing ``.cat`` text that re-elaborates to an identical workspace.

Categories are always written in table form, so derived constructions
print as plain data.
"""
from __future__ import annotations

import re

from ..fincat import FiniteCategory
from ..presheaf import Presheaf
from ..recipe import Leaf
from .elaborate import Workspace

_PLAIN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_RESERVED = {"root", "target"}


def q(name: str) -> str:
    if _PLAIN.match(name) and name not in _RESERVED:
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_category(name: str, C: FiniteCategory) -> str:
    lines = [f"category {q(name)} table {{"]
    lines.append("  objects: " + ", ".join(q(o) for o in C.obj_names) + ";")
    arrows = [f"{q(C.mor_names[m])}: {q(C.obj_names[C.src[m]])} -> {q(C.obj_names[C.tgt[m]])}"
              for m in range(C.n_morphisms)]
    lines.append("  arrows: " + ", ".join(arrows) + ";")
    ids = [f"{q(C.obj_names[x])} = {q(C.mor_names[C.identity[x]])}" for x in C.objects]
    lines.append("  identities: " + ", ".join(ids) + ";")
    comps = []
    for g in C.nonidentity:
        for f in C.nonidentity:
            h = C.table[g][f]
            if h >= 0:
                comps.append(f"{q(C.mor_names[g])}.{q(C.mor_names[f])} = {q(C.mor_names[h])}")
    lines.append("  compose: " + ", ".join(comps) + ";")
    lines.append("}")
    return "\n".join(lines)


def format_presheaf(name: str, base: str, X: Presheaf) -> str:
    C = X.base
    lines = [f"presheaf {q(name)} on {q(base)} {{"]
    for c in C.objects:
        elems = ", ".join(q(X.element_name(c, x)) for x in range(X.sizes[c]))
        lines.append(f"  set {q(C.obj_names[c])}: {elems};")
    for m in C.nonidentity:
        a, b = C.src[m], C.tgt[m]
        pairs = ", ".join(f"{q(X.element_name(b, y))} => {q(X.element_name(a, X.actions[m][y]))}"
                          for y in range(X.sizes[b]))
        lines.append(f"  act {q(C.mor_names[m])}: {pairs};")
    lines.append("}")
    return "\n".join(lines)


def _matrix(comps) -> str:
    return "[" + ", ".join("[" + ", ".join(str(v) for v in c) + "]" for c in comps) + "]"


def format_workspace(ws: Workspace) -> str:
    out = [f"bound {ws.path_bound};"]
    for name, C in ws.categories.items():
        out.append(format_category(name, C))
    for name, e in ws.functors.items():
        F = e.functor
        A, B = F.source, F.target
        objs = ", ".join(f"{q(A.obj_names[x])} => {q(B.obj_names[F(x)])}" for x in A.objects)
        arrs = ", ".join(f"{q(A.mor_names[m])} => {q(B.mor_names[F.on_mor(m)])}" for m in A.nonidentity)
        out.append(f"functor {q(name)}: {q(e.source)} -> {q(e.target)} {{\n  objects: {objs};\n  arrows: {arrs};\n}}")
    for name, e in ws.presheaves.items():
        out.append(format_presheaf(name, e.base, e.presheaf))
    for name, e in ws.classes.items():
        out.append(f"class {q(name)} {{ shapes: {', '.join(q(s) for s in e.shapes)} }}")
    for name, e in ws.recipes.items():
        cls = ws.classes[e.shape_class]
        lines = [f"recipe {q(name)} on {q(e.base)} class {q(e.shape_class)} {{"]
        C = ws.categories[e.base]
        sn = e.step_names
        for k, step in enumerate(e.recipe.steps):
            if isinstance(step, Leaf):
                lines.append(f"  {q(sn[k])} = leaf {q(C.obj_names[step.obj])};")
                continue
            J = cls.shape_class.shapes[step.shape]
            nodes = ", ".join(f"{q(J.obj_names[j])} = {q(sn[n])}" for j, n in enumerate(step.nodes))
            edges = ", ".join(f"{q(J.mor_names[u])} = {_matrix(step.edges[u])}" for u in J.nonidentity)
            lines.append(f"  {q(sn[k])} = colim {q(cls.shapes[step.shape])} {{ nodes: {nodes}; edges: {edges}; }};")
        lines.append(f"  root {q(sn[e.recipe.root])};")
        if e.target is not None:
            lines.append(f"  target {q(e.target)};")
        lines.append("}")
        out.append("\n".join(lines))
    for c in ws.checks:
        parts = [c.kind] + [str(a) if isinstance(a, int) else q(a) for a in c.args]
        parts += [f"{q(k)}={v if isinstance(v, int) else q(v)}" for k, v in c.options]
        out.append("check " + " ".join(parts) + ";")
    return "\n\n".join(out) + "\n"
