"""Exception types shared across the package."""


class RegulusError(Exception):
    """Base class for all errors raised by this package."""


class NotClosedWithinBound(RegulusError):
    """A presentation generates composites longer than the path bound."""


class IllFormedDiagram(RegulusError):
    """Naturality or functoriality validation failed."""


class ShapeNotInClass(RegulusError):
    """A recipe step uses a shape index outside the declared shape class."""


class UnknownClassTag(RegulusError):
    pass


class Disconnected(RegulusError):
    pass


class MissingColimits(RegulusError):
    """A category lacks a colimit for some diagram of the requested shape."""

    def __init__(self, message, side=None, diagram=None):
        super().__init__(message)
        self.side = side
        self.diagram = diagram


class ValidationError(RegulusError):
    """Input data violates the category/presheaf/functor axioms."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
