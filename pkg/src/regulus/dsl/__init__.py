"""Reader and writer for the ``.cat`` text format."""
from .diagnostics import (DslError, DuplicateName, ElaborationError, Span, SyntaxError,
                          UnresolvedReference)
from .elaborate import (CheckEntry, ClassEntry, FunctorEntry, PresheafEntry, RecipeEntry,
                        Workspace, elaborate, load, load_file)
from .parser import Ast, parse, tokenize
from .printer import format_workspace

__all__ = [
    "Ast", "CheckEntry", "ClassEntry", "DslError", "DuplicateName", "ElaborationError",
    "FunctorEntry", "PresheafEntry", "RecipeEntry", "Span", "SyntaxError", "UnresolvedReference",
    "Workspace", "elaborate", "format_workspace", "load", "load_file", "parse", "tokenize",
]
