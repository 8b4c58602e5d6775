"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ReflindError(Exception):
    """Base class for all errors raised by reflind."""


class TypeCheckError(ReflindError):
    """A theory or formula is not well-sorted.

    ``axiom`` is the index of the offending axiom (``None`` outside a theory)
    and ``path`` is the list of child positions leading to the bad subterm.
    """

    def __init__(self, message: str, axiom: int | None = None, path: tuple[int, ...] = ()):
        self.axiom = axiom
        self.path = tuple(path)
        where = []
        if axiom is not None:
            where.append(f"axiom {axiom}")
        if path:
            where.append("path " + ".".join(map(str, path)))
        super().__init__(message + (f" ({', '.join(where)})" if where else ""))
        self.bare_message = message


class UnknownSymbol(TypeCheckError):
    pass


class ArityMismatch(TypeCheckError):
    pass


class SortMismatch(TypeCheckError):
    pass


class OpenAxiom(TypeCheckError):
    pass


class MissingSymbol(ReflindError):
    pass


class NameCollision(ReflindError):
    pass


class AlreadyReflected(ReflindError):
    pass


class NotCore(ReflindError):
    pass


class NotInImage(ReflindError):
    def __init__(self, message: str, subterm=None):
        super().__init__(message)
        self.subterm = subterm


class Stuck(ReflindError):
    """Partial evaluation reached a redex no axiom can reduce."""

    def __init__(self, message: str, subterm=None):
        super().__init__(message)
        self.subterm = subterm


class Undecided(ReflindError):
    """A bounded evaluation could not reach a definite verdict."""


class UnknownTheory(ReflindError):
    pass


class ParseError(ReflindError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class MissingBinary(ReflindError):
    pass


class UnassignedVariable(ReflindError):
    def __init__(self, var):
        super().__init__(f"variable x{var.index}:{var.sort} has no value")
        self.var = var


class UnsupportedFeature(ReflindError):
    pass
