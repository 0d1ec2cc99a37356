"""Exception types shared across the analysis pipeline."""

from __future__ import annotations


class RefdError(Exception):
    """Base class for all diagnosis-engine errors."""


class JsubSyntaxError(RefdError):
    """Malformed Jsub source. Carries the offending file and position."""

    def __init__(self, message: str, file: str, line: int, col: int):
        super().__init__(f"{file}:{line}:{col}: {message}")
        self.file = file
        self.line = line
        self.col = col


class DuplicateClassError(RefdError):
    """The same class name is declared more than once in a project."""


class CyclicInheritanceError(RefdError):
    """The extends chain of a class loops back on itself."""


class MissingEnclosingClassError(RefdError):
    """A method template names an enclosing class absent from the graph."""


class UnknownLocationError(RefdError):
    """An operation referenced a location id that is not in the graph."""


class KindMismatchError(RefdError):
    """Two chained subdetectors have incompatible location-set kinds."""


class UnresolvableTemplateError(RefdError):
    """A template that must match an existing construct matched nothing."""


class AmbiguousTemplateError(RefdError):
    """A template matched more than one construct in the graph."""


class NotAnAncestorError(RefdError):
    """A pull-up destination is not an ancestor of the method's class."""


class SameClassError(RefdError):
    """A move destination is the method's own enclosing class."""
