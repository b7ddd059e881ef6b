"""Tokenizer and recursive-descent parser for the ``.cat`` format.

Keywords are contextual, so they remain usable as names. Composition is
written ``g.f`` for "``f`` then ``g``".
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .diagnostics import Span, SyntaxError

# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<str>"(?:[^"\\\n]|\\.)*")
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|=>|[{}()\[\];:,.=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, op, eof
    text: str
    span: Span
    quoted: bool = False


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            if ch == '"':
                hint = "close the quoted name on the same line"
            else:
                hint = "quote names containing unusual characters, e.g. \"x*y\""
            raise SyntaxError(f"unexpected character {ch!r}", Span(line, col, line, col + 1), hint)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "str":
            value = re.sub(r"\\(.)", r"\1", s[1:-1])
            toks.append(Token("ident", value, Span(line, col, line, col + len(s)), quoted=True))
        elif kind in ("int", "ident", "op"):
            toks.append(Token(kind, s, Span(line, col, line, col + len(s))))
        pos = m.end()
    col = pos - line_start + 1
    toks.append(Token("eof", "", Span(line, col, line, col)))
    return toks


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Ident:
    text: str
    span: Span


@dataclass(frozen=True)
class Int:
    value: int
    span: Span


Arg = Union[Ident, Int]


@dataclass
class BoundDecl:
    value: int
    span: Span


@dataclass
class ArrowDecl:
    name: Ident
    src: Ident
    tgt: Ident


@dataclass
class PathExpr:
    """Written order: ``g.f`` is ``[g, f]``; an empty list is an identity (written ``1``)."""

    parts: list[Ident]
    span: Span


@dataclass
class CategoryPres:
    name: Ident
    objects: list[Ident]
    arrows: list[ArrowDecl]
    relations: list[tuple[PathExpr, PathExpr]]
    span: Span


@dataclass
class CategoryTable:
    name: Ident
    objects: list[Ident]
    arrows: list[ArrowDecl]
    identities: list[tuple[Ident, Ident]]
    compose: list[tuple[Ident, Ident, Ident]]
    span: Span


@dataclass
class Call:
    func: Ident
    args: list[Arg]
    span: Span


@dataclass
class CategoryExpr:
    name: Ident
    expr: Call
    span: Span


@dataclass
class FunctorDecl:
    name: Ident
    source: Ident
    target: Ident
    objects: list[tuple[Ident, Ident]]
    arrows: list[tuple[Ident, Ident]]
    span: Span


@dataclass
class PresheafBlock:
    name: Ident
    base: Ident
    sets: list[tuple[Ident, list[Ident]]]
    acts: list[tuple[Ident, list[tuple[Ident, Ident]]]]
    span: Span


@dataclass
class PresheafExpr:
    name: Ident
    base: Ident
    expr: Call
    span: Span


@dataclass
class ClassDecl:
    name: Ident
    shapes: list[Ident]
    span: Span


@dataclass
class LeafStep:
    name: Ident
    obj: Ident


@dataclass
class ColimStep:
    name: Ident
    shape: Ident
    nodes: list[tuple[Ident, Ident]]
    edges: list[tuple[Ident, list[list[int]]]]
    span: Span


@dataclass
class RecipeDecl:
    name: Ident
    base: Ident
    shape_class: Ident
    steps: list[Union[LeafStep, ColimStep]]
    root: Ident
    target: Ident | None
    span: Span


@dataclass
class CheckDecl:
    kind: Ident
    args: list[Arg]
    options: list[tuple[Ident, Arg]]
    span: Span


Decl = Union[BoundDecl, CategoryPres, CategoryTable, CategoryExpr, FunctorDecl,
             PresheafBlock, PresheafExpr, ClassDecl, RecipeDecl, CheckDecl]


@dataclass
class Ast:
    decls: list[Decl] = field(default_factory=list)

    def of_type(self, *types) -> list:
        return [d for d in self.decls if isinstance(d, types)]


# ---------------------------------------------------------------------------
# parser

_TOP = ("bound", "category", "functor", "presheaf", "class", "recipe", "check")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.tok
        return (t.kind == "op" or (t.kind == "ident" and not t.quoted)) and t.text == text

    def expect(self, text: str, hint: str | None = None) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise SyntaxError(f"expected {text!r}, found {got!r}", self.tok.span, hint)
        return self.advance()

    def ident(self, what: str = "a name") -> Ident:
        t = self.tok
        if t.kind != "ident":
            got = t.text or "end of input"
            hint = "names that start with a digit or contain symbols must be quoted" if t.kind == "int" else None
            raise SyntaxError(f"expected {what}, found {got!r}", t.span, hint)
        self.advance()
        return Ident(t.text, t.span)

    def integer(self) -> Int:
        t = self.tok
        if t.kind != "int":
            raise SyntaxError(f"expected an integer, found {t.text or 'end of input'!r}", t.span)
        self.advance()
        return Int(int(t.text), t.span)

    def arg(self) -> Arg:
        return self.integer() if self.tok.kind == "int" else self.ident("an argument")

    def ident_list(self, stop=(";", "}")) -> list[Ident]:
        out = []
        if any(self.at(s) for s in stop):
            return out
        out.append(self.ident())
        while self.at(","):
            self.advance()
            out.append(self.ident())
        return out

    def end_clause(self):
        # the last clause of a block may omit its semicolon
        if self.at(";"):
            self.advance()
        elif not self.at("}"):
            raise SyntaxError(f"expected ';', found {self.tok.text or 'end of input'!r}", self.tok.span,
                              "separate clauses with ';'")

    # -- top level

    def parse(self) -> Ast:
        ast = Ast()
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "ident" or t.quoted or t.text not in _TOP:
                raise SyntaxError(f"expected a declaration, found {t.text!r}", t.span,
                                  "declarations start with one of: " + ", ".join(_TOP))
            ast.decls.append(getattr(self, "p_" + t.text)())
        return ast

    def p_bound(self) -> BoundDecl:
        start = self.advance().span
        v = self.integer()
        end = self.expect(";").span
        if v.value < 1:
            raise SyntaxError("path bound must be at least 1", v.span)
        return BoundDecl(v.value, start.to(end))

    def call(self) -> Call:
        f = self.ident("a constructor name")
        args: list[Arg] = []
        end = f.span
        if self.at("("):
            self.advance()
            if not self.at(")"):
                args.append(self.arg())
                while self.at(","):
                    self.advance()
                    args.append(self.arg())
            end = self.expect(")").span
        return Call(f, args, f.span.to(end))

    def p_category(self):
        start = self.advance().span
        name = self.ident("a category name")
        if self.at("="):
            self.advance()
            expr = self.call()
            end = self.expect(";").span
            return CategoryExpr(name, expr, start.to(end))
        if self.at("table"):
            self.advance()
            return self.table_body(name, start)
        self.expect("{", "a category is `category N { objects: ...; arrows: ...; relations: ...; }`")
        objects, arrows, relations = [], [], []
        while not self.at("}"):
            key = self.ident("'objects', 'arrows' or 'relations'")
            self.expect(":")
            if key.text == "objects":
                objects += self.ident_list()
            elif key.text == "arrows":
                arrows += self.arrow_list()
            elif key.text == "relations":
                relations += self.relation_list()
            else:
                raise SyntaxError(f"unknown clause {key.text!r}", key.span,
                                  "presentation clauses are objects, arrows and relations")
            self.end_clause()
        end = self.expect("}").span
        return CategoryPres(name, objects, arrows, relations, start.to(end))

    def arrow_list(self) -> list[ArrowDecl]:
        out = []
        if self.at(";") or self.at("}"):
            return out
        while True:
            n = self.ident("an arrow name")
            self.expect(":", "arrows are written `f: a -> b`")
            a = self.ident("a source object")
            self.expect("->", "arrows are written `f: a -> b`")
            b = self.ident("a target object")
            out.append(ArrowDecl(n, a, b))
            if not self.at(","):
                return out
            self.advance()

    def path(self) -> PathExpr:
        if self.tok.kind == "int":
            t = self.integer()
            if t.value != 1:
                raise SyntaxError("only 1 may stand for an identity", t.span)
            return PathExpr([], t.span)
        parts = [self.ident("an arrow name")]
        while self.at("."):
            self.advance()
            parts.append(self.ident("an arrow name"))
        return PathExpr(parts, parts[0].span.to(parts[-1].span))

    def relation_list(self):
        out = []
        if self.at(";") or self.at("}"):
            return out
        while True:
            lhs = self.path()
            self.expect("=", "relations are written `g.f = h`")
            rhs = self.path()
            out.append((lhs, rhs))
            if not self.at(","):
                return out
            self.advance()

    def table_body(self, name: Ident, start: Span) -> CategoryTable:
        self.expect("{")
        objects, arrows, identities, compose = [], [], [], []
        while not self.at("}"):
            key = self.ident("'objects', 'arrows', 'identities' or 'compose'")
            self.expect(":")
            if key.text == "objects":
                objects += self.ident_list()
            elif key.text == "arrows":
                arrows += self.arrow_list()
            elif key.text == "identities":
                identities += self.pairs("=")
            elif key.text == "compose":
                if not (self.at(";") or self.at("}")):
                    while True:
                        g = self.ident("an arrow name")
                        self.expect(".", "composites are written `g.f = h`")
                        f = self.ident("an arrow name")
                        self.expect("=")
                        h = self.ident("an arrow name")
                        compose.append((g, f, h))
                        if not self.at(","):
                            break
                        self.advance()
            else:
                raise SyntaxError(f"unknown clause {key.text!r}", key.span,
                                  "table clauses are objects, arrows, identities and compose")
            self.end_clause()
        end = self.expect("}").span
        return CategoryTable(name, objects, arrows, identities, compose, start.to(end))

    def pairs(self, sep: str) -> list[tuple[Ident, Ident]]:
        out = []
        if self.at(";") or self.at("}"):
            return out
        while True:
            a = self.ident()
            self.expect(sep)
            b = self.ident()
            out.append((a, b))
            if not self.at(","):
                return out
            self.advance()

    def p_functor(self) -> FunctorDecl:
        start = self.advance().span
        name = self.ident("a functor name")
        self.expect(":", "functors are written `functor F: A -> B { ... }`")
        src = self.ident("a source category")
        self.expect("->")
        tgt = self.ident("a target category")
        self.expect("{")
        objects, arrows = [], []
        while not self.at("}"):
            key = self.ident("'objects' or 'arrows'")
            self.expect(":")
            if key.text == "objects":
                objects += self.pairs("=>")
            elif key.text == "arrows":
                arrows += self.pairs("=>")
            else:
                raise SyntaxError(f"unknown clause {key.text!r}", key.span, "functor clauses are objects and arrows")
            self.end_clause()
        end = self.expect("}").span
        return FunctorDecl(name, src, tgt, objects, arrows, start.to(end))

    def p_presheaf(self):
        start = self.advance().span
        name = self.ident("a presheaf name")
        self.expect("on", "presheaves are written `presheaf X on C { ... }`")
        base = self.ident("a category name")
        if self.at("="):
            self.advance()
            expr = self.call()
            end = self.expect(";").span
            return PresheafExpr(name, base, expr, start.to(end))
        self.expect("{")
        sets, acts = [], []
        while not self.at("}"):
            key = self.ident("'set' or 'act'")
            target = self.ident("an object or arrow name")
            self.expect(":")
            if key.text == "set":
                sets.append((target, self.ident_list()))
            elif key.text == "act":
                acts.append((target, self.pairs("=>")))
            else:
                raise SyntaxError(f"unknown clause {key.text!r}", key.span,
                                  "write `set a: x, y;` or `act f: y => x;`")
            self.end_clause()
        end = self.expect("}").span
        return PresheafBlock(name, base, sets, acts, start.to(end))

    def p_class(self) -> ClassDecl:
        start = self.advance().span
        name = self.ident("a class name")
        self.expect("{")
        key = self.ident("'shapes'")
        if key.text != "shapes":
            raise SyntaxError(f"unknown clause {key.text!r}", key.span, "write `class F { shapes: A, B }`")
        self.expect(":")
        shapes = self.ident_list()
        self.end_clause()
        end = self.expect("}").span
        return ClassDecl(name, shapes, start.to(end))

    def p_recipe(self) -> RecipeDecl:
        start = self.advance().span
        name = self.ident("a recipe name")
        self.expect("on", "recipes are written `recipe R on C class F { ... }`")
        base = self.ident("a category name")
        self.expect("class")
        cls = self.ident("a class name")
        self.expect("{")
        steps, root, target = [], None, None
        while not self.at("}"):
            if self.at("root"):
                self.advance()
                root = self.ident("a step name")
                self.end_clause()
                continue
            if self.at("target"):
                self.advance()
                target = self.ident("a presheaf name")
                self.end_clause()
                continue
            sname = self.ident("a step name")
            self.expect("=")
            kind = self.ident("'leaf' or 'colim'")
            if kind.text == "leaf":
                steps.append(LeafStep(sname, self.ident("an object name")))
            elif kind.text == "colim":
                steps.append(self.colim_body(sname))
            else:
                raise SyntaxError(f"unknown step kind {kind.text!r}", kind.span, "steps are `leaf a` or `colim J { ... }`")
            self.end_clause()
        end = self.expect("}").span
        if root is None:
            raise SyntaxError("recipe has no root", end, "add `root STEP;`")
        return RecipeDecl(name, base, cls, steps, root, target, start.to(end))

    def colim_body(self, sname: Ident) -> ColimStep:
        shape = self.ident("a shape name")
        self.expect("{")
        nodes, edges = [], []
        while not self.at("}"):
            key = self.ident("'nodes' or 'edges'")
            self.expect(":")
            if key.text == "nodes":
                nodes += self.pairs("=")
            elif key.text == "edges":
                if not (self.at(";") or self.at("}")):
                    while True:
                        u = self.ident("a shape arrow")
                        self.expect("=")
                        edges.append((u, self.int_matrix()))
                        if not self.at(","):
                            break
                        self.advance()
            else:
                raise SyntaxError(f"unknown clause {key.text!r}", key.span, "colimit steps have nodes and edges")
            self.end_clause()
        end = self.expect("}").span
        return ColimStep(sname, shape, nodes, edges, sname.span.to(end))

    def int_matrix(self) -> list[list[int]]:
        self.expect("[", "components are written `[[0, 1], [0]]`, one list per object")
        rows = []
        while not self.at("]"):
            self.expect("[")
            row = []
            while not self.at("]"):
                row.append(self.integer().value)
                if self.at(","):
                    self.advance()
            self.expect("]")
            rows.append(row)
            if self.at(","):
                self.advance()
        self.expect("]")
        return rows

    def p_check(self) -> CheckDecl:
        start = self.advance().span
        kind = self.ident("a check kind")
        args, options = [], []
        while not self.at(";"):
            if self.tok.kind == "eof":
                raise SyntaxError("unterminated check", self.tok.span, "end checks with ';'")
            a = self.arg()
            if isinstance(a, Ident) and self.at("="):
                self.advance()
                options.append((a, self.arg()))
            else:
                args.append(a)
        end = self.expect(";").span
        return CheckDecl(kind, args, options, start.to(end))


def parse(text: str) -> Ast:
    """Parse ``.cat`` source into an :class:`Ast`. LF and CRLF line endings are accepted."""
    return _Parser(text).parse()
