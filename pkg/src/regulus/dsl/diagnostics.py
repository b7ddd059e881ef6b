"""Source spans and the error types raised while reading ``.cat`` files."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import RegulusError


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"

    def to(self, other: "Span") -> "Span":
        return Span(self.line, self.col, other.end_line, other.end_col)


class DslError(RegulusError):
    """An error tied to a location in the input, with an optional fix hint."""

    def __init__(self, message: str, span: Span | None = None, hint: str | None = None):
        self.message, self.span, self.hint = message, span, hint
        text = f"{span}: {message}" if span else message
        if hint:
            text += f" (hint: {hint})"
        super().__init__(text)


class SyntaxError(DslError):  # noqa: A001 - name mirrors the documented diagnostic kind
    pass


class DuplicateName(DslError):
    pass


class UnresolvedReference(DslError):
    pass


class ElaborationError(DslError):
    """A declaration parsed but its data violates the axioms (or a bound)."""

    def __init__(self, message, span=None, hint=None, cause=None):
        super().__init__(message, span, hint)
        self.cause = cause
